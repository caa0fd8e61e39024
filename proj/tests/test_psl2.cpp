#include "beauville/psl2.hpp"
#include "test_util.hpp"

using namespace beauville;

TEST(Psl2Params, Values) {
  const auto p7 = Psl2Params::make(7);
  EXPECT_EQ(p7.p0, 7u);
  EXPECT_EQ(p7.q1, 4u);
  EXPECT_EQ(p7.q2, 3u);
  const auto p8 = Psl2Params::make(8);
  EXPECT_EQ(p8.d, 1u);
  EXPECT_EQ(p8.q1, 9u);
  EXPECT_EQ(p8.q2, 7u);
  EXPECT_ERRC(Psl2Params::make(10), Errc::InvalidArgument);
}

TEST(Traces, MenuGf7) {
  auto f = field_create(7, 1);
  const auto menu = trace_menu(*f);
  EXPECT_EQ(menu.at(2), (std::vector<std::uint32_t>{0}));
  EXPECT_EQ(menu.at(3), (std::vector<std::uint32_t>{1, 6}));
  EXPECT_EQ(menu.at(4), (std::vector<std::uint32_t>{3, 4}));
  EXPECT_EQ(menu.at(7), (std::vector<std::uint32_t>{2, 5}));
  EXPECT_TRUE(order_from_trace(*f, 2).unipotent);
  EXPECT_FALSE(order_from_trace(*f, 3).unipotent);
}

TEST(Traces, OrdersDivideTorusOrders) {
  for (std::uint64_t q : {8, 9, 11, 13, 16, 25, 27}) {
    const auto p = Psl2Params::make(q);
    auto f = field_create(static_cast<std::uint32_t>(p.p0), p.e);
    for (std::uint32_t s = 0; s < f->q(); ++s) {
      const auto t = order_from_trace(*f, s);
      if (t.unipotent) {
        EXPECT_EQ(t.order, p.p0) << q;
      } else {
        EXPECT_TRUE(p.q1 % t.order == 0 || p.q2 % t.order == 0 || t.order == 2) << q << " trace " << s;
      }
    }
  }
}

class Recipes : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(Recipes, DeclaredTypesGenerate) {
  const std::uint64_t q = GetParam();
  const auto p = Psl2Params::make(q);
  auto h = make_psl2(q);
  for (auto target : {p.q1, p.q2}) {
    const auto r = macbeath_triple(q, target, h);
    EXPECT_EQ(r.triple.type, (std::array<index_t, 3>{index_t(target), index_t(target), index_t(p.p0)}));
    EXPECT_TRUE(r.triple.generates);
    const std::array<index_t, 2> s{r.triple.x, r.triple.y};
    GenerationTester t(*h);
    EXPECT_EQ(t.subgroup_order(s), h->order());
  }
  const auto r = second_triple(q, h);
  EXPECT_EQ(r.triple.type, (std::array<index_t, 3>{index_t(p.q1), index_t(p.q2), index_t(p.q2)}));
  EXPECT_TRUE(r.triple.generates);
  const auto j = r.to_json();
  EXPECT_EQ(j["matrices"].size(), 3u);
  EXPECT_TRUE(j["choices"].contains("w"));
}

INSTANTIATE_TEST_SUITE_P(SmallQ, Recipes, ::testing::Values(7, 8, 11, 13, 16, 17, 19, 23, 25, 27));

TEST(Recipes, KnownChoicesQ7) {
  const auto r = macbeath_triple(7, 4);
  EXPECT_EQ(r.choices["s"], 3);
  EXPECT_EQ(r.choices["t"], 3);
  const auto u = second_triple(7);
  EXPECT_EQ(u.choices["u"], 3);
  EXPECT_EQ(u.choices["v"], 3);
  EXPECT_EQ(u.choices["w"], 1);
}

TEST(Recipes, Rejections) {
  EXPECT_ERRC(macbeath_triple(5, 3), Errc::InvalidArgument);
  EXPECT_ERRC(macbeath_triple(9, 5), Errc::InvalidArgument);
  EXPECT_ERRC(macbeath_triple(7, 7), Errc::InvalidArgument);
  EXPECT_ERRC(second_triple(4), Errc::InvalidArgument);
}
