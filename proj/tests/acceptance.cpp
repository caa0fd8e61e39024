// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>

#include "beauville/loader.hpp"
#include "beauville/powers.hpp"

using namespace beauville;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

GroupPtr fixture(const std::string& name) {
  return load_group(std::string(BEAUVILLE_DATA_DIR) + "/groups/" + name).group;
}

Outcome m11_census() {
  auto g = fixture("M11.json");
  const auto aut = automorphism_group(g);
  const auto a = phi_triples(*g, 3, 8, 11, &aut);
  const auto b = phi_triples(*g, 5, 11, 11, &aut);
  const bool ok = aut.order() == 7920 && a.nu == 158400 && a.nu == 20 * aut.order() && a.nu_generating == a.nu &&
                  *a.orbit_count == 20 && b.nu == 54u * 7920 && *b.orbit_count == 46;
  return {ok, "nu(3,8,11)=" + std::to_string(a.nu) + " orbits=" + std::to_string(*a.orbit_count) +
                  "; nu(5,11,11)=" + std::to_string(b.nu) + " generating orbits=" + std::to_string(*b.orbit_count)};
}

Outcome l2_11() {
  auto h = make_psl2(11);
  const auto c = phi_triples(*h, 5, 11, 11);
  return {c.nu == 5280 && c.nu_generating == 5280,
          "nu=" + std::to_string(c.nu) + " generating=" + std::to_string(c.nu_generating)};
}

Outcome a5_negative() {
  const auto r = exhaustive_beauville_search(*make_alternating(5));
  return {!r.certificate, std::string(r.certificate ? "certificate found" : "ExhaustedNone") + " after " +
                              std::to_string(r.pairs_examined) + " candidate pairs"};
}

Outcome abelian_criterion() {
  std::string detail;
  bool ok = true;
  for (std::size_t n = 2; n <= 11; ++n) {
    const bool found = exhaustive_beauville_search(*make_abelian_square(n)).certificate.has_value();
    ok = ok && found == (std::gcd(n, std::size_t(6)) == 1);
    if (found) detail += (detail.empty() ? "" : ",") + std::to_string(n);
  }
  return {ok, "certificates for n in {" + detail + "}"};
}

Outcome riemann_hurwitz() {
  const auto g = genus(BigInt(175560), 2, 5, 19);
  return {g == 21715, "genus=" + g.str()};
}

Outcome sz8_counts() {
  auto g = fixture("Sz8.json");
  const std::uint64_t order = g->order();
  bool ok = order == 29120;
  std::string detail;
  for (auto [ty, per] : {std::pair{std::array<index_t, 3>{4, 5, 7}, 4u * 13 * order},
                         std::pair{std::array<index_t, 3>{13, 7, 7}, 5u * 9 * order}}) {
    const auto c = phi_triples(*g, ty[0], ty[1], ty[2]);
    for (const auto& r : c.rows) ok = ok && r.nu == per && r.phi == per;
    ok = ok && !c.rows.empty() && c.nu == c.nu_generating;
    detail += "(" + std::to_string(ty[0]) + "," + std::to_string(ty[1]) + "," + std::to_string(ty[2]) +
              "): " + std::to_string(c.rows.size()) + " class triples x " + std::to_string(per) + "; ";
  }
  return {ok, detail + "all generating"};
}

Outcome recipes() {
  bool ok = true;
  for (std::uint64_t q : {7, 8, 11, 13}) {
    const auto p = Psl2Params::make(q);
    auto h = make_psl2(q);
    GenerationTester t(*h);
    auto check = [&](const Psl2Triple& r, std::array<index_t, 3> ty) {
      const std::array<index_t, 2> s{r.triple.x, r.triple.y};
      ok = ok && r.triple.type == ty && t.subgroup_order(s) == h->order();
    };
    check(macbeath_triple(q, p.q1, h), {index_t(p.q1), index_t(p.q1), index_t(p.p0)});
    check(macbeath_triple(q, p.q2, h), {index_t(p.q2), index_t(p.q2), index_t(p.p0)});
    check(second_triple(q, h), {index_t(p.q1), index_t(p.q2), index_t(p.q2)});
  }
  return {ok, "q in {7,8,11,13}, three triples each"};
}

Outcome l27_square() {
  const auto c = macbeath_k2_construction(7, kDirectPowerCap, kDefaultGroupCap);
  const auto& v = c.verification;
  const bool ok = v.enumerated_disjoint.value_or(false) && v.direct_disjoint.value_or(false) &&
                  v.primewise_agrees.value_or(false) && v.generation_by_closure.value_or(false);
  return {ok, "Sigma1 and Sigma2 meet only in 1 inside the enumerated group of order 28224; prime-wise test agrees"};
}

Outcome frobenius_oracle() {
  std::size_t checked = 0;
  bool ok = true;
  for (auto g : {make_alternating(5), make_psl2(7), make_abelian_square(5), fixture("M11.json")}) {
    const auto t = dixon_character_table(*g);
    const index_t r = g->classes().classes.size();
    for (index_t a = 0; a < r; ++a)
      for (index_t b = 0; b < r; ++b)
        for (index_t c = 0; c < r; ++c) {
          ok = ok && nu_frobenius(t, a, b, c) == nu_brute(*g, a, b, c);
          ++checked;
        }
  }
  return {ok, std::to_string(checked) + " class triples compared"};
}

Outcome replay_soundness() {
  std::vector<std::pair<std::string, std::function<PowerCertificate()>>> runs;
  auto a5 = make_alternating(5);
  auto l27 = make_psl2(7);
  auto reps = [](const GroupPtr& g, index_t l, index_t m, index_t n) {
    return inequivalent_representatives(*g, phi_triples(*g, l, m, n).representatives);
  };
  runs.emplace_back("A5^3 strongly distinguishing", [&] {
    return construct_lemma_4_2(a5, {{reps(a5, 2, 5, 5).at(0), reps(a5, 3, 3, 5).at(0)}}, 3);
  });
  runs.emplace_back("A5^4 strongly distinguishing with pool", [&] {
    return construct_lemma_4_2(a5, {{reps(a5, 2, 5, 5).at(0), reps(a5, 3, 3, 5).at(0)}}, 4, reps(a5, 5, 5, 5));
  });
  runs.emplace_back("L2(7)^6 distinguishing", [&] {
    return construct_lemma_4_3(l27, {{reps(l27, 4, 7, 7).at(0), reps(l27, 2, 3, 7).at(0)}}, 6);
  });
  for (std::uint64_t q : {7, 8, 11}) {
    auto h = make_psl2(q);
    for (auto ty : {std::array<index_t, 3>{3, 4, 7}, {2, 3, 7}, {2, 7, 9}, {2, 5, 11}, {3, 5, 11}, {2, 9, 7}}) {
      runs.emplace_back(h->name() + "^k coprime type", [h, ty, reps] {
        const auto ts = reps(h, ty[0], ty[1], ty[2]);
        return construct_lemma_4_4(h, ts, 2);
      });
      runs.emplace_back(h->name() + "^3 coprime type", [h, ty, reps] {
        return construct_lemma_4_4(h, reps(h, ty[0], ty[1], ty[2]), 3);
      });
    }
  }
  std::size_t emitted = 0, in_cap = 0, refused = 0;
  bool ok = true;
  for (const auto& [name, run] : runs) {
    try {
      const auto c = run();
      ++emitted;
      if (!c.verification.direct_disjoint) continue;
      ++in_cap;
      ok = ok && *c.verification.direct_disjoint && c.directly_verified;
    } catch (const Error&) {
      ++refused;
    }
  }
  ok = ok && in_cap > 0;
  return {ok, std::to_string(emitted) + " certificates emitted, " + std::to_string(in_cap) +
                  " within |H|^k <= 10^6 all directly verified, " + std::to_string(refused) + " refusals"};
}

Outcome d2_consistency() {
  auto g = make_alternating(5);
  const auto aut = automorphism_group(g);
  const auto phi2 = phi2_count(*g);
  const bool divides = phi2 % aut.order() == 0;
  const auto orbits = generating_pair_orbits(*g, aut);
  GenerationTester t(*g);
  std::vector<std::pair<index_t, index_t>> pairs;
  for (index_t x = 0; x < g->order(); ++x)
    for (index_t y = 0; y < g->order(); ++y)
      if (t.generates(x, y)) pairs.emplace_back(x, y);
  bool semiregular = pairs.size() == phi2;
  for (std::uint64_t i = 1; i < aut.order(); ++i) {
    const auto m = aut.map(i);
    for (const auto& [x, y] : pairs) semiregular = semiregular && !(m[x] == x && m[y] == y);
  }
  const bool ok = divides && phi2 / aut.order() == orbits && semiregular;
  return {ok, "phi2=" + std::to_string(phi2) + " |Aut|=" + std::to_string(aut.order()) +
                  " d2=" + std::to_string(phi2 / aut.order()) + " orbits=" + std::to_string(orbits) +
                  (semiregular ? " semiregular" : " not semiregular")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"M11 triple census", m11_census},
      {"L2(11) triples of type (5,11,11)", l2_11},
      {"A5 exhaustive search finds nothing", a5_negative},
      {"abelian squares C_n^2, 2 <= n <= 11", abelian_criterion},
      {"Riemann-Hurwitz genus", riemann_hurwitz},
      {"Sz(8) counts of types (4,5,7) and (13,7,7)", sz8_counts},
      {"L2(q) recipe triples", recipes},
      {"L2(7)^2 structure verified directly", l27_square},
      {"Frobenius formula against brute force", frobenius_oracle},
      {"power constructions replay directly", replay_soundness},
      {"d2 of A5 and semiregularity", d2_consistency},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
