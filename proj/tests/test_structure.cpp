#include "beauville/families.hpp"
#include "beauville/loader.hpp"
#include "beauville/structure.hpp"
#include "test_util.hpp"

using namespace beauville;

TEST(Generation, Basics) {
  auto a5 = make_alternating(5);
  GenerationTester t(*a5);
  const auto g = a5->generators();
  EXPECT_TRUE(t.generates(g[0], g[1]));
  EXPECT_FALSE(t.generates(g[0], g[0]));
  const std::array<index_t, 1> single{g[1]};
  EXPECT_FALSE(generates(*a5, single));
  EXPECT_TRUE(generates(*make_cyclic(1), std::array<index_t, 1>{0}));
  const std::array<index_t, 1> c{1};
  EXPECT_TRUE(generates(*make_cyclic(7), c));
  EXPECT_EQ(t.subgroup_order(single), a5->element_order(g[1]));
}

TEST(Generation, NoSingleElementGeneratesSimpleGroup) {
  auto h = make_psl2(7);
  GenerationTester t(*h);
  for (index_t x = 0; x < h->order(); ++x) {
    const std::array<index_t, 1> s{x};
    ASSERT_FALSE(t.generates(s));
  }
}

TEST(Triples, MakeRotateReverse) {
  auto h = make_psl2(7);
  const auto t = make_triple(*h, h->generators()[0], h->generators()[1]);
  EXPECT_EQ(h->mul(h->mul(t.x, t.y), t.z), 0u);
  const auto r = rotate(t);
  EXPECT_EQ(h->mul(h->mul(r.x, r.y), r.z), 0u);
  EXPECT_EQ(rotate(rotate(rotate(t))).key(), t.key());
  const auto v = reverse_inverse(*h, t);
  EXPECT_EQ(h->mul(h->mul(v.x, v.y), v.z), 0u);
  EXPECT_EQ(v.type, (std::array<index_t, 3>{t.type[2], t.type[1], t.type[0]}));
}

struct AutCase {
  const char* name;
  std::function<GroupPtr()> make;
  std::uint64_t order;
};

TEST(Automorphisms, Orders) {
  const std::vector<AutCase> cases{
      {"C1", [] { return make_cyclic(1); }, 1},
      {"C5", [] { return make_cyclic(5); }, 4},
      {"C12", [] { return make_cyclic(12); }, 4},
      {"C5^2", [] { return make_abelian_square(5); }, 480},
      {"C6^2", [] { return make_abelian_square(6); }, 288},
      {"A5", [] { return make_alternating(5); }, 120},
      {"L2(7)", [] { return make_psl2(7); }, 336},
      {"L2(8)", [] { return make_psl2(8); }, 1512},
      {"L2(11)", [] { return make_psl2(11); }, 1320},
      {"M11", [] { return load_group(data_path("groups/M11.json")).group; }, 7920},
  };
  for (const auto& c : cases) {
    const auto aut = automorphism_group(c.make());
    EXPECT_EQ(aut.order(), c.order) << c.name;
  }
}

TEST(Automorphisms, MapsAreAutomorphismsAndSemiregular) {
  for (auto g : {make_alternating(5), make_psl2(7), make_abelian_square(5)}) {
    const auto aut = automorphism_group(g);
    const auto [a, b] = aut.base_pair();
    std::set<std::pair<index_t, index_t>> images;
    for (std::uint64_t i = 0; i < aut.order(); ++i) {
      const auto m = aut.map(i);
      for (index_t x = 0; x < g->order(); x += 3)
        for (index_t y = 1; y < g->order(); y += 5) ASSERT_EQ(m[g->mul(x, y)], g->mul(m[x], m[y]));
      images.emplace(m[a], m[b]);
      ASSERT_EQ(aut.apply(i, a), m[a]);
    }
    // distinct automorphisms move the base pair differently: the action on
    // generating pairs is semiregular
    EXPECT_EQ(images.size(), aut.order()) << g->name();
  }
}

TEST(Automorphisms, CapAndTrivial) {
  EXPECT_ERRC(automorphism_group(make_psl2(13), 100), Errc::CapExceeded);
  const auto t = AutGroup::trivial(make_alternating(5));
  EXPECT_TRUE(t.is_trivial());
  EXPECT_EQ(t.order(), 1u);
}

TEST(Equivalence, TriplesUnderAut) {
  auto h = make_psl2(7);
  const auto aut = automorphism_group(h);
  const auto [a, b] = aut.base_pair();
  const auto t = make_triple(*h, a, b);
  for (std::uint64_t i = 0; i < aut.order(); i += 17) {
    const auto m = aut.map(i);
    const auto u = make_triple(*h, m[a], m[b]);
    EXPECT_TRUE(equivalent_triples(*h, t, u));
  }
  // a triple of a different type is never equivalent
  const auto r = rotate(t);
  if (r.type != t.type) {
    EXPECT_FALSE(equivalent_triples(*h, t, r));
  }
  EXPECT_TRUE(equivalent_pairs(*h, a, b, a, b));
}

TEST(Orbits, PartitionGeneratingPairsOfA5) {
  auto g = make_alternating(5);
  const auto aut = automorphism_group(g);
  GenerationTester t(*g);
  std::vector<GeneratingTriple> all;
  for (index_t x = 0; x < 60; ++x)
    for (index_t y = 0; y < 60; ++y)
      if (t.generates(x, y)) all.push_back(make_triple(*g, x, y));
  const auto orbits = triple_orbits(*g, all, aut);
  std::size_t total = 0;
  for (const auto& o : orbits) {
    EXPECT_EQ(o.size, aut.order());
    total += o.size;
  }
  EXPECT_EQ(total, all.size());
  EXPECT_EQ(orbits.size(), 19u);
  std::vector<GeneratingTriple> partial(all.begin(), all.begin() + 5);
  EXPECT_ERRC(triple_orbits(*g, partial, aut), Errc::InvalidArgument);
}
