#pragma once

// Beauville structures on cartesian powers H^k: summits, p-full elements,
// distinguishing pairs, and the constructions with exact verification.

#include "beauville/beauville.hpp"
#include "beauville/families.hpp"
#include "beauville/psl2.hpp"

namespace beauville {

inline constexpr std::uint64_t kDirectPowerCap = 1000000;

using Summit = std::vector<std::size_t>;  // 0-based coordinate positions

/// Order divisible by the full p-part of exp(H).
inline bool p_full(const FiniteGroup& h, index_t g, std::uint64_t p) {
  return arith::valuation(h.element_order(g), p) == arith::valuation(h.exponent(), p);
}

/// Coordinates whose order has maximal p-adic valuation; empty when p does
/// not divide the order of d.
inline Summit p_summit(const FiniteGroup& h, const PowerElement& d, std::uint64_t p) {
  require(std::any_of(d.begin(), d.end(), [](index_t c) { return c != FiniteGroup::identity(); }),
          Errc::TrivialElement, "summit of the identity");
  unsigned best = 0;
  for (auto c : d) best = std::max(best, arith::valuation(h.element_order(c), p));
  Summit s;
  if (best == 0) return s;
  for (std::size_t j = 0; j < d.size(); ++j)
    if (arith::valuation(h.element_order(d[j]), p) == best) s.push_back(j);
  return s;
}

/// F_p(d): coordinates that are p-full.
inline Summit p_full_positions(const FiniteGroup& h, const PowerElement& d, std::uint64_t p) {
  Summit s;
  for (std::size_t j = 0; j < d.size(); ++j)
    if (p_full(h, d[j], p)) s.push_back(j);
  return s;
}

inline unsigned nu_p(const FiniteGroup& h, const GeneratingTriple& t, std::uint64_t p) {
  unsigned n = 0;
  for (auto e : t.elements()) n += p_full(h, e, p);
  return n;
}

inline bool p_distinguishing(const FiniteGroup& h, const GeneratingTriple& t1, const GeneratingTriple& t2,
                             std::uint64_t p) {
  return nu_p(h, t1, p) != nu_p(h, t2, p);
}

inline bool strongly_p_distinguishing(const FiniteGroup& h, const GeneratingTriple& t1, const GeneratingTriple& t2,
                                      std::uint64_t p) {
  if (!p_distinguishing(h, t1, t2, p)) return false;
  const bool p2_divides_exp = arith::valuation(h.exponent(), p) >= 2;
  for (const auto* t : {&t1, &t2}) {
    if (nu_p(h, *t, p) != 0 || !p2_divides_exp) continue;
    for (auto o : t->type)
      if (o % p == 0) return false;
  }
  return true;
}

/// Per-prime analysis of a pair of triples of H.
struct TriplePair {
  GeneratingTriple t1, t2;
  std::map<std::uint64_t, std::array<unsigned, 2>> nu;
  std::map<std::uint64_t, bool> distinguishing, strongly;

  static TriplePair analyze(const FiniteGroup& h, const GeneratingTriple& t1, const GeneratingTriple& t2) {
    TriplePair r{t1, t2, {}, {}, {}};
    for (auto p : arith::prime_divisors(h.order())) {
      r.nu[p] = {nu_p(h, t1, p), nu_p(h, t2, p)};
      r.distinguishing[p] = p_distinguishing(h, t1, t2, p);
      r.strongly[p] = strongly_p_distinguishing(h, t1, t2, p);
    }
    return r;
  }
};

// ---------------------------------------------------------------------------
// Triples of H^k.

/// One coordinate of a power triple: an H-triple plus where it came from.
struct Position {
  GeneratingTriple triple;
  std::string source;  // e.g. "T1,1 rot 0", "pool 3"
};

struct PowerTriple {
  std::vector<Position> positions;

  std::size_t k() const { return positions.size(); }
  PowerElement a() const { return column(0); }
  PowerElement b() const { return column(1); }
  PowerElement c() const { return column(2); }
  std::array<PowerElement, 3> elements() const { return {a(), b(), c()}; }

  PowerElement column(int i) const {
    PowerElement d;
    for (const auto& p : positions) d.push_back(p.triple.elements()[i]);
    return d;
  }

  std::array<std::uint64_t, 3> type(const FiniteGroup& h) const {
    std::array<std::uint64_t, 3> t{1, 1, 1};
    for (int i = 0; i < 3; ++i)
      for (auto c : column(i)) t[i] = std::lcm(t[i], std::uint64_t(h.element_order(c)));
    return t;
  }

  json to_json(const FiniteGroup& h) const {
    json pos = json::array();
    for (std::size_t j = 0; j < positions.size(); ++j) {
      const auto& t = positions[j].triple;
      pos.push_back(json{{"position", j + 1},
                         {"source", positions[j].source},
                         {"type", t.type},
                         {"indices", {t.x, t.y, t.z}}});
    }
    return json{{"type", type(h)}, {"layout", pos}};
  }
};

/// One triple per Aut-class among the given generating triples.
inline std::vector<GeneratingTriple> inequivalent_representatives(const FiniteGroup& h,
                                                                  const std::vector<GeneratingTriple>& triples) {
  std::vector<GeneratingTriple> out;
  for (const auto& t : triples) {
    if (!t.generates) continue;
    if (std::none_of(out.begin(), out.end(), [&](const GeneratingTriple& u) { return equivalent_triples(h, t, u); }))
      out.push_back(t);
  }
  return out;
}

/// Throws EquivalentTriples naming the first Aut-equivalent pair of positions.
inline void require_inequivalent(const FiniteGroup& h, const std::vector<Position>& pos) {
  for (std::size_t i = 0; i < pos.size(); ++i) {
    require(pos[i].triple.generates, Errc::NotGenerating, "position " + std::to_string(i + 1) + " does not generate H");
    for (std::size_t j = 0; j < i; ++j)
      require(!equivalent_triples(h, pos[i].triple, pos[j].triple), Errc::EquivalentTriples,
              "positions " + std::to_string(j + 1) + " (" + pos[j].source + ") and " + std::to_string(i + 1) + " (" +
                  pos[i].source + ") carry Aut-equivalent triples");
  }
}

/// Order of the subgroup of H^k generated by a and b, by closure (counting only).
inline std::uint64_t power_subgroup_order(const PowerGroup& g, const PowerElement& a, const PowerElement& b,
                                          std::uint64_t cap) {
  detail::ElementTable table(g.k());
  auto id = g.identity();
  table.insert(id.data());
  const std::array<const PowerElement*, 2> gens{&a, &b};
  PowerElement tmp(g.k());
  for (std::size_t h = 0; h < table.size(); ++h)
    for (auto s : gens) {
      const index_t* x = table.at(static_cast<index_t>(h));
      for (std::size_t j = 0; j < g.k(); ++j) tmp[j] = g.base()->mul(x[j], (*s)[j]);
      table.insert(tmp.data());
      require(table.size() <= cap, Errc::CapExceeded, "power closure exceeded " + std::to_string(cap));
    }
  return table.size();
}

/// Coordinatewise assembly; generation of H^k follows from pairwise
/// inequivalence and is re-verified by closure when |H|^k <= cap.
inline PowerTriple assemble_power_triple(const FiniteGroup& h, std::vector<Position> positions) {
  require(!positions.empty(), Errc::InvalidArgument, "need at least one triple");
  require_inequivalent(h, positions);
  return PowerTriple{std::move(positions)};
}

// ---------------------------------------------------------------------------
// Verification in H^k.

namespace detail {

using ClassTuple = std::vector<index_t>;

/// Sigma(T) in H^k as the set of class tuples of powers of a, b, c.
inline std::set<ClassTuple> sigma_class_tuples(const FiniteGroup& h, const PowerTriple& t) {
  const auto& cp = h.classes();
  std::set<ClassTuple> out;
  for (const auto& d : t.elements()) {
    std::uint64_t o = 1;
    for (auto c : d) o = std::lcm(o, std::uint64_t(h.element_order(c)));
    PowerElement p(d.size(), FiniteGroup::identity());
    for (std::uint64_t m = 0; m < o; ++m) {
      ClassTuple ct(d.size());
      for (std::size_t j = 0; j < d.size(); ++j) ct[j] = cp.class_of[p[j]];
      out.insert(std::move(ct));
      for (std::size_t j = 0; j < d.size(); ++j) p[j] = h.mul(p[j], d[j]);
    }
  }
  return out;
}

inline std::uint64_t tuple_order(const FiniteGroup& h, const ClassTuple& ct) {
  std::uint64_t o = 1;
  for (auto c : ct) o = std::lcm(o, std::uint64_t(h.classes().classes[c].rep_order));
  return o;
}

/// Explicit member bitset of Sigma(T) over the mixed-radix index of H^k.
inline std::vector<bool> sigma_bitset(const FiniteGroup& h, const std::set<ClassTuple>& tuples, std::size_t k) {
  const auto& cp = h.classes();
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < k; ++j) total *= h.order();
  std::vector<bool> bits(total, false);
  for (const auto& ct : tuples) {
    std::vector<std::size_t> cursor(k, 0);
    bool more = true;
    while (more) {
      std::uint64_t idx = 0;
      for (std::size_t j = 0; j < k; ++j) idx = idx * h.order() + cp.classes[ct[j]].members[cursor[j]];
      bits[idx] = true;
      more = false;
      for (std::size_t j = k; j-- > 0;) {
        if (++cursor[j] < cp.classes[ct[j]].members.size()) {
          more = true;
          break;
        }
        cursor[j] = 0;
      }
    }
  }
  return bits;
}

}  // namespace detail

/// Result of checking a pair of triples in H^k.
struct PowerVerification {
  bool generation_by_corollary = false;
  std::optional<bool> generation_by_closure;  // set when |H|^k <= cap
  bool class_tuple_disjoint = false;          // exact, any size
  std::optional<bool> direct_disjoint;        // explicit member sets, |H|^k <= cap
  std::optional<bool> enumerated_disjoint;    // generic check in the enumerated group
  std::optional<bool> primewise_agrees;
  std::vector<index_t> common_tuple;  // witness class tuple if not disjoint
  json summits = json::object();      // per prime: summit families and verdict
  bool summit_argument = false;       // every prime covered by the summit/support argument

  json to_json(const FiniteGroup& h) const {
    json j{{"generation_by_corollary", generation_by_corollary}, {"class_tuple_disjoint", class_tuple_disjoint},
           {"summit_argument", summit_argument}, {"summits", summits}};
    if (generation_by_closure) j["generation_by_closure"] = *generation_by_closure;
    if (direct_disjoint) j["direct_disjoint"] = *direct_disjoint;
    if (enumerated_disjoint) j["enumerated_group_disjoint"] = *enumerated_disjoint;
    if (primewise_agrees) j["primewise_agrees"] = *primewise_agrees;
    if (!common_tuple.empty()) {
      json w = json::array();
      for (auto c : common_tuple) w.push_back(h.classes().classes[c].label);
      j["common_class_tuple"] = w;
    }
    return j;
  }
};

/// Prime-wise test: summit families of the elements whose order is divisible by p
/// share no subset.
inline bool lemma_4_1_check(const FiniteGroup& h, const PowerTriple& t1, const PowerTriple& t2, std::uint64_t p,
                            json* trace = nullptr) {
  auto family = [&](const PowerTriple& t) {
    std::set<Summit> f;
    for (const auto& d : t.elements()) {
      auto s = p_summit(h, d, p);
      if (!s.empty()) f.insert(std::move(s));
    }
    return f;
  };
  const auto f1 = family(t1), f2 = family(t2);
  bool disjoint = true;
  for (const auto& s : f1)
    if (f2.count(s)) disjoint = false;
  if (trace) {
    auto to_json = [](const std::set<Summit>& f) {
      json a = json::array();
      for (const auto& s : f) {
        json b = json::array();
        for (auto j : s) b.push_back(j + 1);
        a.push_back(b);
      }
      return a;
    };
    (*trace)[std::to_string(p)] = json{{"T1", to_json(f1)}, {"T2", to_json(f2)}, {"disjoint", disjoint}};
  }
  return disjoint;
}

/// Checks a candidate Beauville pair in H^k by every available method. The
/// class-tuple check is exact at any size; explicit member sets are used when
/// |H|^k <= direct_cap; the generic check on the enumerated group H^k when
/// |H|^k <= enum_cap.
inline PowerVerification verify_power_pair(const GroupPtr& hp, const PowerTriple& t1, const PowerTriple& t2,
                                           std::uint64_t direct_cap = kDirectPowerCap, std::uint64_t enum_cap = 0) {
  const FiniteGroup& h = *hp;
  const std::size_t k = t1.k();
  require(t2.k() == k, Errc::InvalidArgument, "triples live in different powers");
  PowerVerification v;
  require_inequivalent(h, t1.positions);
  require_inequivalent(h, t2.positions);
  v.generation_by_corollary = true;
  for (const auto* t : {&t1, &t2}) {
    auto ty = t->type(h);
    require(is_hyperbolic(ty[0], ty[1], ty[2]), Errc::NotHyperbolic, "power triple type is not hyperbolic");
  }

  const PowerGroup g(hp, k);
  const BigInt order = g.order();
  if (order <= direct_cap) {
    const auto n = static_cast<std::uint64_t>(order);
    v.generation_by_closure = power_subgroup_order(g, t1.a(), t1.b(), n) == n &&
                              power_subgroup_order(g, t2.a(), t2.b(), n) == n;
  }

  const auto s1 = detail::sigma_class_tuples(h, t1);
  const auto s2 = detail::sigma_class_tuples(h, t2);
  const detail::ClassTuple id(k, 0);
  v.class_tuple_disjoint = true;
  for (const auto& ct : s1)
    if (ct != id && s2.count(ct)) {
      v.class_tuple_disjoint = false;
      v.common_tuple = ct;
      break;
    }
  // Prime-wise form on class tuples.
  std::set<std::uint64_t> primes;
  for (const auto* t : {&t1, &t2})
    for (auto o : t->type(h))
      for (auto p : arith::prime_divisors(o)) primes.insert(p);
  bool primewise = true;
  for (const auto& ct : s1)
    if (ct != id && s2.count(ct) && primes.count(detail::tuple_order(h, ct))) primewise = false;
  v.primewise_agrees = (primewise == v.class_tuple_disjoint);

  if (order <= direct_cap) {
    const auto b1 = detail::sigma_bitset(h, s1, k);
    const auto b2 = detail::sigma_bitset(h, s2, k);
    bool disjoint = true;
    for (std::size_t i = 1; i < b1.size() && disjoint; ++i) disjoint = !(b1[i] && b2[i]);
    v.direct_disjoint = disjoint;
  }

  if (enum_cap && order <= enum_cap) {
    auto big = g.enumerate({t1.a(), t1.b()}, static_cast<std::size_t>(enum_cap));
    auto locate = [&](const PowerTriple& t) {
      GeneratingTriple r;
      const auto e = t.elements();
      r.x = *big->find(e[0]);
      r.y = *big->find(e[1]);
      r.z = *big->find(e[2]);
      r.type = {big->element_order(r.x), big->element_order(r.y), big->element_order(r.z)};
      r.generates = true;
      return r;
    };
    const auto verdict = is_beauville_pair(*big, locate(t1), locate(t2));
    v.enumerated_disjoint = verdict.beauville;
  }

  v.summit_argument = true;
  for (auto p : arith::prime_divisors(h.order())) {
    json tr;
    const bool ok = lemma_4_1_check(h, t1, t2, p, &tr);
    v.summits[std::to_string(p)] = tr[std::to_string(p)];
    v.summit_argument = v.summit_argument && ok;
  }
  require(!v.direct_disjoint || *v.direct_disjoint == v.class_tuple_disjoint, Errc::Internal,
          "explicit and class-tuple Sigma checks disagree");
  require(!v.enumerated_disjoint || *v.enumerated_disjoint == v.class_tuple_disjoint, Errc::Internal,
          "enumerated-group and class-tuple Sigma checks disagree");
  require(!v.summit_argument || v.class_tuple_disjoint, Errc::Internal,
          "summit argument claims disjointness but Sigma sets meet");
  return v;
}

struct PowerCertificate {
  std::string group;
  json provenance;
  std::size_t k = 0;
  std::string lemma;
  PowerTriple t1, t2;
  PowerVerification verification;
  json trace = json::object();
  std::string evidence;
  bool directly_verified = false;

  json to_json(const FiniteGroup& h) const {
    return json{{"group", group + "^" + std::to_string(k)},
                {"base", provenance},
                {"k", k},
                {"lemma", lemma},
                {"T1", t1.to_json(h)},
                {"T2", t2.to_json(h)},
                {"evidence", evidence},
                {"directly_verified", directly_verified},
                {"verification", verification.to_json(h)},
                {"trace", trace}};
  }
};

namespace detail {

inline PowerCertificate certify(const GroupPtr& h, std::string lemma, PowerTriple t1, PowerTriple t2, json trace,
                                std::uint64_t direct_cap, std::uint64_t enum_cap) {
  auto v = verify_power_pair(h, t1, t2, direct_cap, enum_cap);
  if (!v.class_tuple_disjoint) {
    json w = json::array();
    for (auto c : v.common_tuple) w.push_back(h->classes().classes[c].label);
    fail(Errc::HypothesisFailed, "construction " + lemma + " produced meeting Sigma sets (common class tuple " +
                                     w.dump() + "); no certificate emitted");
  }
  PowerCertificate c;
  c.group = h->name();
  c.provenance = h->provenance().to_json();
  c.k = t1.k();
  c.lemma = std::move(lemma);
  c.t1 = std::move(t1);
  c.t2 = std::move(t2);
  c.trace = std::move(trace);
  c.directly_verified = v.direct_disjoint.has_value();
  c.evidence = c.directly_verified ? "direct" : "summit-argument";
  c.verification = std::move(v);
  return c;
}

inline bool inequivalent_to_all(const FiniteGroup& h, const GeneratingTriple& t, const std::vector<Position>& used) {
  for (const auto& u : used)
    if (equivalent_triples(h, t, u.triple)) return false;
  return true;
}

/// Fills positions up to k from the pool, skipping triples equivalent to any
/// already used in either triple.
inline void fill_from_pool(const FiniteGroup& h, std::vector<Position>& p1, std::vector<Position>& p2, std::size_t k,
                           const std::vector<GeneratingTriple>& pool) {
  for (std::size_t i = 0; i < pool.size() && p1.size() < k; ++i) {
    const auto& t = pool[i];
    if (!t.generates) continue;
    if (!inequivalent_to_all(h, t, p1) || !inequivalent_to_all(h, t, p2)) continue;
    p1.push_back({t, "pool " + std::to_string(i)});
    p2.push_back({t, "pool " + std::to_string(i)});
  }
  require(p1.size() == k, Errc::PoolExhausted,
          "pool supplies only " + std::to_string(p1.size()) + " of " + std::to_string(k) + " inequivalent positions");
}

inline std::optional<std::uint64_t> try_d2(const GroupPtr& h) {
  if (h->order() > kPhi2Cap) return std::nullopt;
  const auto aut = automorphism_group(h);
  return phi2_and_d2(*h, aut).d2;
}

inline json triple_brief(const GeneratingTriple& t) { return json{{"type", t.type}, {"indices", {t.x, t.y, t.z}}}; }

}  // namespace detail

struct PairSpec {
  GeneratingTriple t1, t2;
};

/// Pairs (T_{1,s}, T_{2,s}), strongly p-distinguishing for every prime, laid
/// out with each T_{i,s} and its rotations in positions 3s-2..3s.
inline PowerCertificate construct_lemma_4_2(const GroupPtr& hp, const std::vector<PairSpec>& pairs, std::size_t k,
                                            const std::vector<GeneratingTriple>& pool = {},
                                            std::uint64_t direct_cap = kDirectPowerCap, std::uint64_t enum_cap = 0,
                                            bool strong = true) {
  const FiniteGroup& h = *hp;
  const std::size_t t = pairs.size();
  const std::size_t block = strong ? 3 * t : 6 * t;
  const std::string lemma = strong ? "4.2" : "4.3";
  require(t >= 1, Errc::InvalidArgument, "need at least one pair");
  require(k >= block, Errc::HypothesisFailed,
          "k = " + std::to_string(k) + " < " + std::to_string(block) + " positions needed by construction " + lemma);
  json trace{{"t", t}, {"k", k}};

  // Prime coverage.
  json cover = json::object();
  for (auto p : arith::prime_divisors(h.order())) {
    std::optional<std::size_t> chosen;
    for (std::size_t s = 0; s < t && !chosen; ++s) {
      const bool ok = strong ? strongly_p_distinguishing(h, pairs[s].t1, pairs[s].t2, p)
                             : p_distinguishing(h, pairs[s].t1, pairs[s].t2, p);
      if (ok) chosen = s;
    }
    require(chosen.has_value(), Errc::HypothesisFailed,
            "prime coverage: no " + std::string(strong ? "strongly " : "") + "p-distinguishing pair for p = " +
                std::to_string(p));
    const auto& pr = pairs[*chosen];
    const unsigned n1 = nu_p(h, pr.t1, p), n2 = nu_p(h, pr.t2, p);
    std::string reason;
    if (!strong)
      reason = "p-distinguishing";
    else if (n1 > 0 && n2 > 0)
      reason = "both triples have p-full entries";
    else if (arith::valuation(h.exponent(), p) < 2)
      reason = "p^2 does not divide exp(H)";
    else
      reason = "the nu_p = 0 triple has periods coprime to p";
    cover[std::to_string(p)] = json{{"s", *chosen + 1}, {"nu_p", {n1, n2}}, {"case", reason}};
  }
  trace["prime_cases"] = cover;

  // Inequivalence of the rotated triples.
  std::array<std::vector<Position>, 2> pos;
  for (int i = 0; i < 2; ++i)
    for (std::size_t s = 0; s < t; ++s) {
      GeneratingTriple r = i == 0 ? pairs[s].t1 : pairs[s].t2;
      for (int rot = 0; rot < 3; ++rot, r = rotate(r))
        pos[i].push_back({r, "T" + std::to_string(i + 1) + "," + std::to_string(s + 1) + " rot " + std::to_string(rot)});
    }
  if (!strong) {
    const auto first0 = pos[0], first1 = pos[1];
    pos[0].insert(pos[0].end(), first1.begin(), first1.end());
    pos[1].insert(pos[1].end(), first0.begin(), first0.end());
  }
  for (int i = 0; i < 2; ++i) {
    try {
      require_inequivalent(h, pos[i]);
    } catch (const Error& e) {
      fail(Errc::HypothesisFailed, "inequivalence for T" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (auto d2 = detail::try_d2(hp)) {
    trace["d2"] = *d2;
    require(k <= *d2, Errc::HypothesisFailed, "k = " + std::to_string(k) + " exceeds d2(H) = " + std::to_string(*d2));
  } else {
    trace["d2"] = "not computed; k <= d2 follows from the assembled generating triples";
  }
  detail::fill_from_pool(h, pos[0], pos[1], k, pool);
  auto t1 = assemble_power_triple(h, pos[0]);
  auto t2 = assemble_power_triple(h, pos[1]);
  json pairs_json = json::array();
  for (const auto& pr : pairs) pairs_json.push_back({detail::triple_brief(pr.t1), detail::triple_brief(pr.t2)});
  trace["pairs"] = pairs_json;
  return detail::certify(hp, lemma, std::move(t1), std::move(t2), std::move(trace), direct_cap, enum_cap);
}

/// As construct_lemma_4_2 with plain p-distinguishing pairs and the mirrored second block.
inline PowerCertificate construct_lemma_4_3(const GroupPtr& hp, const std::vector<PairSpec>& pairs, std::size_t k,
                                            const std::vector<GeneratingTriple>& pool = {},
                                            std::uint64_t direct_cap = kDirectPowerCap, std::uint64_t enum_cap = 0) {
  auto c = construct_lemma_4_2(hp, pairs, k, pool, direct_cap, enum_cap, false);
  // Each generator needs a p-full coordinate for every prime.
  const FiniteGroup& h = *hp;
  for (auto p : arith::prime_divisors(h.order()))
    for (const auto* t : {&c.t1, &c.t2})
      for (const auto& d : t->elements())
        require(!p_full_positions(h, d, p).empty(), Errc::Internal,
                "mirrored construction lacks a p-full coordinate for p = " + std::to_string(p));
  c.trace["p_full_every_generator"] = true;
  return c;
}

/// r >= 2 inequivalent triples of one type (l, m, n) with mutually coprime
/// periods. T1 = (T_1, T_2, tail), T2 = (T_1, rot(T_2), tail) with a shared
/// tail drawn first from the remaining T_j, then from rot(T_j).
inline PowerCertificate construct_lemma_4_4(const GroupPtr& hp, const std::vector<GeneratingTriple>& triples,
                                            std::size_t k, std::uint64_t direct_cap = kDirectPowerCap,
                                            std::uint64_t enum_cap = 0) {
  const FiniteGroup& h = *hp;
  require(!triples.empty(), Errc::TooFewTriples, "no triples supplied");
  const auto ty = triples.front().type;
  require(std::gcd(ty[0], ty[1]) == 1 && std::gcd(ty[1], ty[2]) == 1 && std::gcd(ty[0], ty[2]) == 1,
          Errc::NotCoprimeType,
          "type (" + std::to_string(ty[0]) + "," + std::to_string(ty[1]) + "," + std::to_string(ty[2]) +
              ") does not have mutually coprime periods");
  for (const auto& t : triples)
    require(t.type == ty, Errc::InvalidArgument, "all triples must have the same type");
  const std::size_t r = triples.size();
  require(r >= 2, Errc::TooFewTriples, "need r >= 2 inequivalent triples, got " + std::to_string(r));
  require(k >= 2 && k <= 6 * r, Errc::RangeError,
          "k = " + std::to_string(k) + " outside 2.." + std::to_string(6 * r));
  std::vector<Position> base;
  for (std::size_t j = 0; j < r; ++j) base.push_back({triples[j], "T" + std::to_string(j + 1)});
  try {
    require_inequivalent(h, base);
  } catch (const Error& e) {
    fail(Errc::TooFewTriples, std::string("supplied triples are not inequivalent: ") + e.what());
  }

  // The 6r family: rotations of each T_j and of each (z^-1, y^-1, x^-1).
  std::vector<Position> family;
  for (std::size_t j = 0; j < r; ++j) {
    GeneratingTriple t = triples[j];
    for (int rot = 0; rot < 3; ++rot, t = rotate(t))
      family.push_back({t, "T" + std::to_string(j + 1) + " rot " + std::to_string(rot)});
    GeneratingTriple u = reverse_inverse(h, triples[j]);
    for (int rot = 0; rot < 3; ++rot, u = rotate(u))
      family.push_back({u, "T" + std::to_string(j + 1) + "' rot " + std::to_string(rot)});
  }
  // Tail order: unrotated T_j (j >= 3), then rot(T_j) for j != 2, then the rest.
  auto fam = [&](std::size_t j, int v) { return family[6 * j + v]; };
  std::vector<Position> tail;
  for (std::size_t j = 2; j < r; ++j) tail.push_back(fam(j, 0));
  for (std::size_t j = 0; j < r; ++j)
    if (j != 1) tail.push_back(fam(j, 1));
  for (int v : {2, 3, 4, 5})
    for (std::size_t j = 0; j < r; ++j) tail.push_back(fam(j, v));
  for (std::size_t j = 0; j < r; ++j)
    if (j == 1) tail.push_back(fam(j, 1));

  std::vector<Position> p1{fam(0, 0), fam(1, 0)};
  std::vector<Position> p2{fam(0, 0), fam(1, 1)};
  std::size_t used_tail = 0;
  for (const auto& t : tail) {
    if (p1.size() >= k) break;
    if (!detail::inequivalent_to_all(h, t.triple, p1) || !detail::inequivalent_to_all(h, t.triple, p2)) continue;
    p1.push_back(t);
    p2.push_back(t);
    ++used_tail;
  }
  require(p1.size() >= k, Errc::PoolExhausted, "family supplies too few inequivalent positions");
  p1.resize(k);
  p2.resize(k);

  json trace{{"r", r}, {"k", k}, {"type", ty}};
  // The support-size claim |supp(g) ∩ {1,2}| = 2 vs 1 holds literally when
  // every tail position carries an unrotated T_j.
  bool plain_tail = true;
  for (std::size_t j = 2; j < k; ++j) plain_tail = plain_tail && p1[j].triple.type == ty;
  trace["plain_tail"] = plain_tail;
  auto t1 = assemble_power_triple(h, p1);
  auto t2 = assemble_power_triple(h, p2);
  if (plain_tail) {
    // Literal check on Sigma^(p): order-p class tuples meet the first two
    // positions in 2 coordinates for T1 and in 1 for T2.
    json supp = json::object();
    const auto s1 = detail::sigma_class_tuples(h, t1);
    const auto s2 = detail::sigma_class_tuples(h, t2);
    std::set<std::uint64_t> primes;
    for (auto o : ty)
      for (auto p : arith::prime_divisors(o)) primes.insert(p);
    for (auto p : primes) {
      auto sizes = [&](const std::set<detail::ClassTuple>& st) {
        std::set<std::size_t> out;
        for (const auto& ct : st)
          if (detail::tuple_order(h, ct) == p) out.insert((ct[0] != 0) + (ct[1] != 0));
        return out;
      };
      const auto z1 = sizes(s1), z2 = sizes(s2);
      require(z1 == std::set<std::size_t>{2} && z2 == std::set<std::size_t>{1}, Errc::Internal,
              "support claim fails for p = " + std::to_string(p));
      supp[std::to_string(p)] = json{{"T1", 2}, {"T2", 1}};
    }
    trace["support_sizes_in_first_two"] = supp;
  }
  return detail::certify(hp, "4.4", std::move(t1), std::move(t2), std::move(trace), direct_cap, enum_cap);
}

/// k = 2 structure on L_2(q)^2 from the (q1,q1,p0) and (q2,q2,p0) triples:
/// a1=(x1,x2), b1=(y1,y2), c1=(z1,z2); a2=(x2,z1), b2=(y2,x1), c2=(z2,y1).
inline PowerCertificate macbeath_k2_construction(std::uint64_t q, std::uint64_t direct_cap = kDirectPowerCap,
                                                 std::uint64_t enum_cap = kDefaultGroupCap) {
  const auto params = Psl2Params::make(q);
  require(q == 7 || q == 8 || q >= 11, Errc::InvalidArgument,
          "q = " + std::to_string(q) + " is covered by the alternating-group case");
  auto h = make_psl2(q);
  const auto r1 = macbeath_triple(q, params.q1, h);
  const auto r2 = macbeath_triple(q, params.q2, h);
  const auto& s1 = r1.triple;
  const auto& s2 = r2.triple;
  PowerTriple t1{{{s1, "(q1,q1,p0)"}, {s2, "(q2,q2,p0)"}}};
  GeneratingTriple second1 = s2;
  GeneratingTriple second2 = rotate(rotate(s1));  // (z1, x1, y1)
  PowerTriple t2{{{second1, "(q2,q2,p0)"}, {second2, "(q1,q1,p0) rot 2"}}};
  json trace{{"params", params.to_json()}, {"triple_q1", r1.to_json()}, {"triple_q2", r2.to_json()}};
  json cases = json::object();
  for (auto p : arith::prime_divisors(h->order())) {
    json tr;
    require(lemma_4_1_check(*h, t1, t2, p, &tr), Errc::Internal, "support argument fails at p = " + std::to_string(p));
    std::string why = p == params.p0 ? "p = p0: supports of size 2 vs 1"
                      : params.q1 % p == 0 ? "p | q1: supports {1} vs {2}"
                                           : "p | q2: supports {2} vs {1}";
    tr[std::to_string(p)]["case"] = why;
    cases[std::to_string(p)] = tr[std::to_string(p)];
  }
  trace["prime_cases"] = cases;
  auto c = detail::certify(h, "macbeath-k2", std::move(t1), std::move(t2), std::move(trace), direct_cap, enum_cap);
  return c;
}

}  // namespace beauville
