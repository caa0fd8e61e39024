#pragma once

// Sigma-sets, Beauville structure checks, exhaustive search and genus.

#include <boost/multiprecision/cpp_int.hpp>

#include "beauville/counting.hpp"

namespace beauville {

inline constexpr std::size_t kSearchCap = 2000;

/// All conjugates of all powers of x, y, z. Conjugation-closed, so it is a
/// union of classes; `classes` is the mask.
struct SigmaSet {
  std::vector<bool> classes;
  std::vector<index_t> members;

  bool contains_class(index_t c) const { return classes.at(c); }
};

inline std::vector<bool> sigma_class_mask(const FiniteGroup& g, std::span<const index_t> elems) {
  const auto& cp = g.classes();
  std::vector<bool> mask(cp.classes.size(), false);
  for (auto e : elems) {
    index_t p = FiniteGroup::identity();
    for (index_t k = 0; k < g.element_order(e); ++k, p = g.mul(p, e)) mask[cp.class_of[p]] = true;
  }
  return mask;
}

inline SigmaSet sigma(const FiniteGroup& g, const GeneratingTriple& t) {
  const auto e = t.elements();
  SigmaSet s;
  s.classes = sigma_class_mask(g, e);
  const auto& cp = g.classes();
  for (index_t c = 0; c < s.classes.size(); ++c)
    if (s.classes[c]) s.members.insert(s.members.end(), cp.classes[c].members.begin(), cp.classes[c].members.end());
  std::sort(s.members.begin(), s.members.end());
  return s;
}

/// Elements of Sigma of order exactly p.
inline std::vector<index_t> sigma_p(const FiniteGroup& g, const GeneratingTriple& t, std::uint64_t p) {
  std::vector<index_t> out;
  for (auto x : sigma(g, t).members)
    if (g.element_order(x) == p) out.push_back(x);
  return out;
}

inline bool is_hyperbolic(std::uint64_t l, std::uint64_t m, std::uint64_t n) {
  require(l >= 1 && m >= 1 && n >= 1, Errc::InvalidArgument, "periods must be positive");
  // 1/l + 1/m + 1/n < 1
  return m * n + l * n + l * m < l * m * n;
}

/// Riemann-Hurwitz: g = 1 + |G| (1 - 1/l - 1/m - 1/n) / 2.
inline BigInt genus(const BigInt& order, std::uint64_t l, std::uint64_t m, std::uint64_t n) {
  require(l >= 2 && m >= 2 && n >= 2, Errc::InvalidArgument, "periods must be at least 2");
  const BigRational v =
      BigRational(1) + BigRational(order) * (BigRational(1) - BigRational(1, l) - BigRational(1, m) - BigRational(1, n)) / 2;
  require(denominator(v) == 1 && v >= 0, Errc::NonIntegerGenus,
          "Riemann-Hurwitz value " + numerator(v).str() + "/" + denominator(v).str() + " for |G| = " + order.str() +
              " and periods (" + std::to_string(l) + "," + std::to_string(m) + "," + std::to_string(n) + ")");
  return numerator(v);
}

inline json triple_json(const FiniteGroup& g, const GeneratingTriple& t) {
  const auto& cp = g.classes();
  json el = json::array();
  json cls = json::array();
  for (auto e : t.elements()) {
    el.push_back(json{{"index", e}, {"order", g.element_order(e)}, {"element", g.format(e)}});
    cls.push_back(cp.classes[cp.class_of[e]].label);
  }
  return json{{"type", t.type}, {"elements", el}, {"classes", cls}};
}

struct BeauvilleCertificate {
  std::string group;
  json provenance;
  GeneratingTriple t1, t2;
  std::string evidence = "direct";
  bool directly_verified = true;
  std::vector<std::uint64_t> primes_checked;
  std::array<BigInt, 2> genera;
  json extra = json::object();
  json t1_json, t2_json;

  json to_json() const {
    json j{{"group", group},
           {"provenance", provenance},
           {"T1", t1_json},
           {"T2", t2_json},
           {"evidence", evidence},
           {"directly_verified", directly_verified},
           {"primes_checked", primes_checked},
           {"genus", json::array({genera[0].str(), genera[1].str()})}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
  }
};

struct BeauvilleVerdict {
  bool beauville = false;
  bool primewise = false;  // prime-wise criterion verdict, must equal `beauville`
  std::optional<index_t> common_element;
  std::vector<std::uint64_t> primes;
  std::optional<BeauvilleCertificate> certificate;
};

namespace detail {

inline std::vector<std::uint64_t> period_primes(const std::array<index_t, 3>& a, const std::array<index_t, 3>& b) {
  std::set<std::uint64_t> ps;
  for (auto v : a)
    for (auto p : arith::prime_divisors(v)) ps.insert(p);
  for (auto v : b)
    for (auto p : arith::prime_divisors(v)) ps.insert(p);
  return {ps.begin(), ps.end()};
}

inline void check_triple(const FiniteGroup& g, const GeneratingTriple& t, const char* which) {
  const std::string w = which;
  require(g.mul(g.mul(t.x, t.y), t.z) == FiniteGroup::identity(), Errc::InvalidArgument, w + ": xyz != 1");
  const std::array<index_t, 3> actual{g.element_order(t.x), g.element_order(t.y), g.element_order(t.z)};
  require(actual == t.type, Errc::NotSmooth,
          w + ": declared type (" + std::to_string(t.type[0]) + "," + std::to_string(t.type[1]) + "," +
              std::to_string(t.type[2]) + ") differs from element orders (" + std::to_string(actual[0]) + "," +
              std::to_string(actual[1]) + "," + std::to_string(actual[2]) + ")");
  const std::array<index_t, 2> s{t.x, t.y};
  require(generates(g, s), Errc::NotGenerating, w + " does not generate " + g.name());
  require(is_hyperbolic(t.type[0], t.type[1], t.type[2]), Errc::NotHyperbolic, w + " type is not hyperbolic");
}

}  // namespace detail

/// Direct test Sigma_1 ∩ Sigma_2 = {1}, together with the prime-wise test
/// Sigma_1^(p) ∩ Sigma_2^(p) = {} for every prime p dividing a period.
inline BeauvilleVerdict is_beauville_pair(const FiniteGroup& g, const GeneratingTriple& t1, const GeneratingTriple& t2) {
  detail::check_triple(g, t1, "T1");
  detail::check_triple(g, t2, "T2");
  const auto& cp = g.classes();
  const auto m1 = sigma_class_mask(g, t1.elements());
  const auto m2 = sigma_class_mask(g, t2.elements());
  BeauvilleVerdict v;
  v.primes = detail::period_primes(t1.type, t2.type);
  for (index_t c = 1; c < m1.size(); ++c)
    if (m1[c] && m2[c] && (!v.common_element || cp.classes[c].representative < *v.common_element))
      v.common_element = cp.classes[c].representative;
  v.beauville = !v.common_element;
  v.primewise = true;
  for (auto p : v.primes)
    for (index_t c = 1; c < m1.size(); ++c)
      if (m1[c] && m2[c] && cp.classes[c].rep_order == p) v.primewise = false;
  require(v.beauville == v.primewise, Errc::Internal, "direct and prime-wise Beauville criteria disagree");
  if (v.beauville) {
    BeauvilleCertificate c;
    c.group = g.name();
    c.provenance = g.provenance().to_json();
    c.t1 = t1;
    c.t2 = t2;
    c.primes_checked = v.primes;
    c.genera = {genus(g.order(), t1.type[0], t1.type[1], t1.type[2]), genus(g.order(), t2.type[0], t2.type[1], t2.type[2])};
    c.t1_json = triple_json(g, t1);
    c.t2_json = triple_json(g, t2);
    v.certificate = std::move(c);
  }
  return v;
}

/// Re-runs the check recorded in a certificate.
inline bool replay(const FiniteGroup& g, const BeauvilleCertificate& c) {
  try {
    return is_beauville_pair(g, c.t1, c.t2).beauville;
  } catch (const Error&) {
    return false;
  }
}

struct SearchResult {
  std::optional<BeauvilleCertificate> certificate;
  std::uint64_t candidates = 0;      // distinct (class triple) candidates for T1, T2
  std::uint64_t pairs_examined = 0;  // candidate pairs tested
};

/// Exhaustive search. Sigma(T) depends only on the classes of x, y, z, so it
/// suffices to take one generating hyperbolic triple per realized class
/// triple and test all pairs of these.
inline SearchResult exhaustive_beauville_search(const FiniteGroup& g, std::size_t cap = kSearchCap) {
  require(g.order() <= cap, Errc::CapExceeded,
          "exhaustive search limited to |G| <= " + std::to_string(cap) + ", got " + std::to_string(g.order()));
  const auto& cp = g.classes();
  struct Candidate {
    std::array<index_t, 3> type;
    std::array<index_t, 3> classes;
    GeneratingTriple witness;
    std::vector<std::uint64_t> mask;
  };
  std::map<std::pair<std::array<index_t, 3>, std::array<index_t, 3>>, Candidate> found;
  GenerationTester tester(g);
  for (const auto& cx : cp.classes) {
    const index_t x = cx.representative;
    for (index_t y = 0; y < g.order(); ++y) {
      const index_t z = g.inv(g.mul(x, y));
      const std::array<index_t, 3> type{g.element_order(x), g.element_order(y), g.element_order(z)};
      if (!is_hyperbolic(type[0], type[1], type[2])) continue;
      const std::array<index_t, 3> cls{cp.class_of[x], cp.class_of[y], cp.class_of[z]};
      if (found.count({type, cls})) continue;
      if (!tester.generates(x, y)) continue;
      Candidate c{type, cls, GeneratingTriple{x, y, z, type, true}, {}};
      const auto m = sigma_class_mask(g, c.witness.elements());
      c.mask.assign((m.size() + 63) / 64, 0);
      for (std::size_t i = 1; i < m.size(); ++i)
        if (m[i]) c.mask[i / 64] |= std::uint64_t(1) << (i % 64);
      found.emplace(std::pair(type, cls), std::move(c));
    }
  }
  std::vector<const Candidate*> cands;
  for (const auto& [k, c] : found) cands.push_back(&c);
  SearchResult r;
  r.candidates = cands.size();
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      ++r.pairs_examined;
      bool disjoint = true;
      for (std::size_t w = 0; w < cands[i]->mask.size() && disjoint; ++w)
        disjoint = (cands[i]->mask[w] & cands[j]->mask[w]) == 0;
      if (!disjoint) continue;
      auto v = is_beauville_pair(g, cands[i]->witness, cands[j]->witness);
      require(v.beauville, Errc::Internal, "class-mask test and direct test disagree");
      r.certificate = std::move(v.certificate);
      r.certificate->extra["search"] = json{{"candidates", r.candidates}, {"pairs_examined", r.pairs_examined}};
      return r;
    }
  return r;
}

/// Abelian Beauville groups are C_n x C_n with gcd(n, 6) = 1 and n > 1.
inline bool abelian_beauville_criterion(std::uint64_t n) {
  require(n >= 1, Errc::InvalidArgument, "n must be positive");
  return n > 1 && std::gcd(n, std::uint64_t(6)) == 1;
}

}  // namespace beauville
