#include <random>

#include "beauville/loader.hpp"
#include "beauville/powers.hpp"
#include "test_util.hpp"

using namespace beauville;

namespace {

GroupPtr l27() {
  static GroupPtr g = make_psl2(7);
  return g;
}

GroupPtr sz8() {
  static GroupPtr g = load_group(data_path("groups/Sz8.json")).group;
  return g;
}

std::vector<GeneratingTriple> classes_of_type(const GroupPtr& g, index_t l, index_t m, index_t n) {
  return inequivalent_representatives(*g, phi_triples(*g, l, m, n).representatives);
}

GeneratingTriple first(const GroupPtr& g, index_t l, index_t m, index_t n) {
  return phi_triples(*g, l, m, n).representatives.at(0);
}

index_t element_of_order(const FiniteGroup& g, index_t o) { return g.elements_of_order(o).at(0); }

}  // namespace

TEST(Summits, Definitions) {
  auto h = make_alternating(6);  // exponent 60 = 4 * 3 * 5
  const PowerElement d{element_of_order(*h, 4), element_of_order(*h, 2), element_of_order(*h, 3)};
  EXPECT_EQ(p_summit(*h, d, 2), (Summit{0}));
  EXPECT_EQ(p_summit(*h, d, 3), (Summit{2}));
  EXPECT_TRUE(p_summit(*h, d, 5).empty());
  EXPECT_ERRC(p_summit(*h, PowerElement{0, 0, 0}, 2), Errc::TrivialElement);
  EXPECT_TRUE(p_full(*h, d[0], 2));
  EXPECT_FALSE(p_full(*h, d[1], 2));
  EXPECT_FALSE(p_full(*h, d[2], 5));
  EXPECT_TRUE(p_full(*h, d[2], 7));  // 7 does not divide exp
}

TEST(Summits, EqualFullPositionsWhenNonempty) {
  std::mt19937_64 rng(11);
  for (auto h : {make_psl2(7), make_alternating(6), sz8()}) {
    std::uniform_int_distribution<index_t> pick(0, h->order() - 1);
    for (int i = 0; i < 400; ++i) {
      PowerElement d{pick(rng), pick(rng), pick(rng), pick(rng)};
      if (d == PowerElement(4, 0)) continue;
      for (auto p : arith::prime_divisors(h->order())) {
        const auto f = p_full_positions(*h, d, p);
        if (!f.empty()) {
          ASSERT_EQ(p_summit(*h, d, p), f);
        }
      }
    }
  }
}

TEST(Distinguishing, Sz8Types) {
  const auto t1 = first(sz8(), 4, 5, 7);
  const auto t2 = first(sz8(), 13, 7, 7);
  EXPECT_EQ(nu_p(*sz8(), t1, 2), 1u);
  EXPECT_EQ(nu_p(*sz8(), t2, 2), 0u);
  EXPECT_EQ(nu_p(*sz8(), t2, 7), 2u);
  const auto a = TriplePair::analyze(*sz8(), t1, t2);
  for (auto p : {2, 5, 7, 13}) {
    EXPECT_TRUE(a.distinguishing.at(p)) << p;
    EXPECT_TRUE(a.strongly.at(p)) << p;
  }
}

TEST(Distinguishing, NotStronglyInL27) {
  const auto t1 = first(l27(), 4, 7, 7);
  const auto t2 = first(l27(), 2, 3, 7);
  EXPECT_TRUE(p_distinguishing(*l27(), t1, t2, 2));
  EXPECT_FALSE(strongly_p_distinguishing(*l27(), t1, t2, 2));
}

TEST(Assembly, SingleAndRepeated) {
  const auto t = first(l27(), 2, 3, 7);
  const auto one = assemble_power_triple(*l27(), {{t, "only"}});
  EXPECT_EQ(one.a(), PowerElement{t.x});
  EXPECT_EQ(one.k(), 1u);
  EXPECT_ERRC(assemble_power_triple(*l27(), {{t, "a"}, {t, "b"}}), Errc::EquivalentTriples);
  EXPECT_ERRC(assemble_power_triple(*l27(), {}), Errc::InvalidArgument);
}

TEST(Assembly, RecipeTriplesGenerateSquare) {
  const auto t1 = macbeath_triple(7, 4, l27()).triple;
  const auto t2 = macbeath_triple(7, 3, l27()).triple;
  const auto pt = assemble_power_triple(*l27(), {{t1, "(4,4,7)"}, {t2, "(3,3,7)"}});
  const PowerGroup g(l27(), 2);
  EXPECT_EQ(power_subgroup_order(g, pt.a(), pt.b(), 30000), 28224u);
}

TEST(SummitFamilies, SimpleCases) {
  const auto t = first(l27(), 2, 3, 7);
  const auto u = rotate(first(l27(), 4, 4, 7));
  const PowerTriple same{{{t, "a"}, {u, "b"}}};
  EXPECT_FALSE(lemma_4_1_check(*l27(), same, same, 2));
  EXPECT_FALSE(lemma_4_1_check(*l27(), same, same, 7));
}

TEST(Macbeath, L27DirectAndEnumerated) {
  const auto c = macbeath_k2_construction(7);
  EXPECT_EQ(c.lemma, "macbeath-k2");
  EXPECT_TRUE(c.directly_verified);
  EXPECT_EQ(c.evidence, "direct");
  EXPECT_TRUE(*c.verification.direct_disjoint);
  EXPECT_TRUE(*c.verification.enumerated_disjoint);
  EXPECT_TRUE(*c.verification.primewise_agrees);
  EXPECT_TRUE(*c.verification.generation_by_closure);
  const auto j = c.to_json(*l27());
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["T1"]["layout"].size(), 2u);
}

TEST(Macbeath, OtherFields) {
  for (std::uint64_t q : {8, 11}) {
    const auto c = macbeath_k2_construction(q);
    EXPECT_TRUE(c.directly_verified) << q;
  }
  const auto c = macbeath_k2_construction(13);
  EXPECT_FALSE(c.directly_verified);
  EXPECT_EQ(c.evidence, "summit-argument");
  EXPECT_TRUE(c.verification.summit_argument);
  EXPECT_TRUE(c.verification.class_tuple_disjoint);
  EXPECT_ERRC(macbeath_k2_construction(5), Errc::InvalidArgument);
}

TEST(StronglyDistinguishing, A5CubeDirect) {
  auto a5 = make_alternating(5);
  const auto c = construct_lemma_4_2(a5, {{first(a5, 2, 5, 5), first(a5, 3, 3, 5)}}, 3);
  EXPECT_TRUE(c.directly_verified);
  EXPECT_TRUE(*c.verification.direct_disjoint);
  EXPECT_TRUE(*c.verification.generation_by_closure);
  EXPECT_EQ(c.trace["prime_cases"].size(), 3u);
  EXPECT_EQ(c.t1.positions[1].source, "T1,1 rot 1");
}

TEST(StronglyDistinguishing, L27Cube) {
  const auto c = construct_lemma_4_2(l27(), {{first(l27(), 4, 4, 7), first(l27(), 4, 3, 3)}}, 3);
  EXPECT_FALSE(c.directly_verified);
  EXPECT_TRUE(c.verification.class_tuple_disjoint);
  EXPECT_EQ(c.trace["d2"], 57);
}

TEST(StronglyDistinguishing, Sz8Cube) {
  const auto c = construct_lemma_4_2(sz8(), {{first(sz8(), 4, 5, 7), first(sz8(), 13, 7, 7)}}, 3);
  EXPECT_TRUE(c.verification.class_tuple_disjoint);
  EXPECT_EQ(c.trace["prime_cases"].size(), 4u);
}

TEST(StronglyDistinguishing, PoolFillsExtraPositions) {
  auto a5 = make_alternating(5);
  const PairSpec pr{first(a5, 2, 5, 5), first(a5, 3, 3, 5)};
  const auto c = construct_lemma_4_2(a5, {pr}, 4, classes_of_type(a5, 5, 5, 5), 1, 0);
  EXPECT_EQ(c.t1.k(), 4u);
  EXPECT_EQ(c.t1.positions[3].source.rfind("pool", 0), 0u);
  EXPECT_EQ(c.evidence, "summit-argument");
  // every (2,5,5) triple is equivalent to a rotation already placed
  EXPECT_ERRC(construct_lemma_4_2(a5, {pr}, 4, classes_of_type(a5, 2, 5, 5)), Errc::PoolExhausted);
  EXPECT_ERRC(construct_lemma_4_2(a5, {pr}, 4), Errc::PoolExhausted);
}

TEST(StronglyDistinguishing, Refusals) {
  auto a5 = make_alternating(5);
  const PairSpec pr{first(a5, 2, 5, 5), first(a5, 3, 3, 5)};
  EXPECT_ERRC(construct_lemma_4_2(a5, {pr}, 2), Errc::HypothesisFailed);
  EXPECT_ERRC(construct_lemma_4_2(a5, {pr}, 20), Errc::HypothesisFailed);  // beyond d2 = 19
  // a single type cannot distinguish anything
  EXPECT_ERRC(construct_lemma_4_2(a5, {{pr.t1, pr.t1}}, 3), Errc::HypothesisFailed);
}

TEST(Distinguishing, MirroredBlocksL27) {
  const PairSpec pr{first(l27(), 4, 7, 7), first(l27(), 2, 3, 7)};
  const auto c = construct_lemma_4_3(l27(), {pr}, 6);
  EXPECT_EQ(c.lemma, "4.3");
  EXPECT_TRUE(c.verification.class_tuple_disjoint);
  EXPECT_TRUE(c.trace["p_full_every_generator"].get<bool>());
  EXPECT_EQ(c.t1.positions[3].source, c.t2.positions[0].source);
  EXPECT_EQ(c.t2.positions[3].source, c.t1.positions[0].source);
  EXPECT_ERRC(construct_lemma_4_3(l27(), {pr}, 5), Errc::HypothesisFailed);
}

TEST(CoprimePeriods, L27Type3_4_7) {
  const auto ts = classes_of_type(l27(), 3, 4, 7);
  ASSERT_EQ(ts.size(), 2u);
  const auto c2 = construct_lemma_4_4(l27(), ts, 2);
  EXPECT_TRUE(c2.directly_verified);
  EXPECT_TRUE(*c2.verification.direct_disjoint);
  EXPECT_TRUE(c2.trace["plain_tail"].get<bool>());
  EXPECT_EQ(c2.trace["support_sizes_in_first_two"].size(), 3u);
  const auto c3 = construct_lemma_4_4(l27(), ts, 3);
  EXPECT_TRUE(c3.verification.class_tuple_disjoint);
  // a shared tail beyond the safe orientations puts a common class tuple in both sets
  EXPECT_ERRC(construct_lemma_4_4(l27(), ts, 4), Errc::HypothesisFailed);
  EXPECT_ERRC(construct_lemma_4_4(l27(), ts, 13), Errc::RangeError);
  EXPECT_ERRC(construct_lemma_4_4(l27(), ts, 1), Errc::RangeError);
}

TEST(CoprimePeriods, Refusals) {
  const auto hurwitz = classes_of_type(l27(), 2, 3, 7);
  EXPECT_EQ(hurwitz.size(), 1u);
  EXPECT_ERRC(construct_lemma_4_4(l27(), hurwitz, 2), Errc::TooFewTriples);
  auto a5 = make_alternating(5);
  const auto t = first(a5, 2, 5, 5);
  EXPECT_ERRC(construct_lemma_4_4(a5, {t, t}, 2), Errc::NotCoprimeType);
  const auto h = classes_of_type(l27(), 3, 4, 7);
  EXPECT_ERRC(construct_lemma_4_4(l27(), {h[0], h[0]}, 2), Errc::TooFewTriples);
}

TEST(CoprimePeriods, Sz8Square) {
  auto reps = phi_triples(*sz8(), 4, 5, 7).representatives;
  reps.resize(40);
  const auto ts = inequivalent_representatives(*sz8(), reps);
  ASSERT_GE(ts.size(), 2u);
  const std::vector<GeneratingTriple> two(ts.begin(), ts.begin() + 2);
  const auto c = construct_lemma_4_4(sz8(), two, 2);
  EXPECT_FALSE(c.directly_verified);
  EXPECT_TRUE(c.verification.summit_argument);
  EXPECT_TRUE(c.verification.class_tuple_disjoint);
}

TEST(Replay, InCapCertificatesVerifyDirectly) {
  std::vector<std::pair<GroupPtr, PowerCertificate>> certs;
  certs.emplace_back(l27(), macbeath_k2_construction(7));
  certs.emplace_back(make_psl2(11), macbeath_k2_construction(11));
  auto a5 = make_alternating(5);
  certs.emplace_back(a5, construct_lemma_4_2(a5, {{first(a5, 2, 5, 5), first(a5, 3, 3, 5)}}, 3));
  certs.emplace_back(l27(), construct_lemma_4_4(l27(), classes_of_type(l27(), 3, 4, 7), 2));
  for (std::uint64_t q : {8, 11}) {
    auto h = make_psl2(q);
    for (auto ty : {std::array<index_t, 3>{2, 3, 7}, {2, 5, 11}, {3, 7, 2}, {2, 9, 7}}) {
      if (h->elements_of_order(ty[0]).empty() || h->elements_of_order(ty[1]).empty()) continue;
      const auto ts = classes_of_type(h, ty[0], ty[1], ty[2]);
      if (ts.size() < 2) continue;
      certs.emplace_back(h, construct_lemma_4_4(h, ts, 2));
    }
  }
  ASSERT_GE(certs.size(), 5u);
  for (const auto& [h, c] : certs) {
    ASSERT_TRUE(c.verification.direct_disjoint.has_value()) << h->name();
    EXPECT_TRUE(*c.verification.direct_disjoint) << h->name() << " " << c.lemma;
    EXPECT_EQ(*c.verification.direct_disjoint, c.verification.summit_argument) << h->name() << " " << c.lemma;
  }
}
