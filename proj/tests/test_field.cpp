#include "beauville/field.hpp"
#include "test_util.hpp"

using namespace beauville;

TEST(Field, PrimeFieldArithmetic) {
  auto f = field_create(7, 1);
  EXPECT_EQ(f->q(), 7u);
  EXPECT_EQ(f->add(5, 4), 2u);
  EXPECT_EQ(f->mul(3, 5), 1u);
  EXPECT_EQ(f->inv(3), 5u);
  EXPECT_EQ(f->neg(2), 5u);
  EXPECT_EQ(f->from_int(-1), 6u);
  EXPECT_EQ(f->modulus(), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(f->primitive(), 3u);
}

TEST(Field, LeastModulus) {
  EXPECT_EQ(field_create(2, 2)->modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(field_create(2, 3)->modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
  EXPECT_EQ(field_create(3, 2)->modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(field_create(5, 2)->modulus(), (std::vector<std::uint32_t>{2, 0, 1}));
}

TEST(Field, Gf8PrimitiveHasFullOrder) {
  auto f = field_create(2, 3);
  EXPECT_EQ(f->multiplicative_order(f->primitive()), 7u);
  std::set<std::uint32_t> powers;
  for (int i = 0; i < 7; ++i) powers.insert(f->pow(f->primitive(), i));
  EXPECT_EQ(powers.size(), 7u);
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<std::uint32_t, unsigned>> {};

TEST_P(FieldAxioms, Exhaustive) {
  auto [p, e] = GetParam();
  auto f = field_create(p, e);
  const auto q = f->q();
  for (std::uint32_t a = 0; a < q; ++a) {
    EXPECT_EQ(f->add(a, f->neg(a)), 0u);
    EXPECT_EQ(f->sub(a, a), 0u);
    if (a) {
      EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
    }
    EXPECT_EQ(f->pow(a, q), a);
    for (std::uint32_t b = 0; b < q; ++b) {
      EXPECT_EQ(f->add(a, b), f->add(b, a));
      EXPECT_EQ(f->mul(a, b), f->mul(b, a));
      // Frobenius is additive
      EXPECT_EQ(f->pow(f->add(a, b), p), f->add(f->pow(a, p), f->pow(b, p)));
      for (std::uint32_t c = 0; c < q; ++c)
        ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms,
                         ::testing::Values(std::pair{2u, 1u}, std::pair{5u, 1u}, std::pair{2u, 2u}, std::pair{2u, 3u},
                                           std::pair{3u, 2u}, std::pair{5u, 2u}, std::pair{2u, 4u}, std::pair{3u, 3u}));

TEST(Field, MultiplicativeGroupCyclicForAllSmallQ) {
  for (auto [p, e] : {std::pair{2u, 5u}, std::pair{7u, 2u}, std::pair{11u, 1u}, std::pair{13u, 2u}}) {
    auto f = field_create(p, e);
    EXPECT_EQ(f->multiplicative_order(f->primitive()), f->q() - 1);
    for (std::uint32_t a = 1; a < f->primitive(); ++a) EXPECT_LT(f->multiplicative_order(a), f->q() - 1);
  }
}

TEST(Field, Errors) {
  EXPECT_ERRC(field_create(4, 1), Errc::NotPrime);
  EXPECT_ERRC(field_create(1, 1), Errc::NotPrime);
  EXPECT_ERRC(field_create(2, 20, 1024), Errc::CapExceeded);
  EXPECT_ERRC(field_create(3, 0), Errc::InvalidArgument);
  auto f = field_create(5, 1);
  EXPECT_ERRC(f->inv(0), Errc::DivisionByZero);
}

TEST(Field, ElementValueSemantics) {
  auto f = field_create(3, 2);
  FieldElement a(f, 4), b(f, 7);
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a - a, FieldElement(f, 0));
  EXPECT_EQ(-(-a), a);
  EXPECT_EQ(a.pow(8), FieldElement(f, 1));
  EXPECT_EQ(multiplicative_generator(f).code(), f->primitive());
  auto g = field_create(3, 1);
  EXPECT_ERRC((void)(a + FieldElement(g, 1)), Errc::SpecMismatch);
  EXPECT_ERRC(FieldElement(f, 9), Errc::InvalidArgument);
  auto f2 = field_create(3, 2);
  EXPECT_EQ(a + FieldElement(f2, 1), FieldElement(f, f->add(4, 1)));
}

TEST(Field, CoefficientsRoundTrip) {
  auto f = field_create(3, 3);
  for (std::uint32_t c = 0; c < f->q(); ++c) {
    const auto k = f->coeffs(c);
    std::uint32_t back = 0, scale = 1;
    for (auto x : k) {
      back += x * scale;
      scale *= 3;
    }
    EXPECT_EQ(back, c);
  }
}
