#pragma once

// Named group constructors and cartesian powers.

#include <boost/multiprecision/cpp_int.hpp>

#include "beauville/group.hpp"

namespace beauville {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline std::vector<index_t> cycle_perm(std::size_t degree, std::size_t from, std::size_t len) {
  std::vector<index_t> img(degree);
  std::iota(img.begin(), img.end(), 0);
  for (std::size_t i = 0; i < len; ++i) img[from + i] = static_cast<index_t>(from + (i + 1) % len);
  return img;
}

}  // namespace detail

/// C_n as the group of an n-cycle.
inline GroupPtr make_cyclic(std::size_t n, std::size_t cap = kDefaultGroupCap) {
  require(n >= 1, Errc::InvalidArgument, "cyclic order must be positive");
  auto kind = std::make_shared<PermutationKind>(n);
  Provenance prov{"C" + std::to_string(n), "cyclic", json{{"n", n}}};
  return closure(kind, {detail::cycle_perm(n, 0, n)}, cap, prov);
}

/// C_n x C_n acting on two disjoint n-cycles.
inline GroupPtr make_abelian_square(std::size_t n, std::size_t cap = kDefaultGroupCap) {
  require(n >= 1, Errc::InvalidArgument, "abelian square parameter must be positive");
  require(n * n <= cap, Errc::CapExceeded, "C_n^2 order exceeds cap");
  auto kind = std::make_shared<PermutationKind>(2 * n);
  Provenance prov{"C" + std::to_string(n) + "^2", "abelian-square", json{{"n", n}}};
  return closure(kind, {detail::cycle_perm(2 * n, 0, n), detail::cycle_perm(2 * n, n, n)}, cap, prov);
}

/// A_n on n points, generated by (1,2,3) and an (n or n-1)-cycle of even sign.
inline GroupPtr make_alternating(std::size_t n, std::size_t cap = kDefaultGroupCap) {
  require(n >= 1, Errc::InvalidArgument, "alternating degree must be positive");
  std::uint64_t expected = 1;
  for (std::size_t i = 3; i <= n; ++i) {
    expected *= i;
    require(expected <= cap, Errc::CapExceeded, "A_" + std::to_string(n) + " exceeds cap");
  }
  auto kind = std::make_shared<PermutationKind>(n);
  Provenance prov{"A" + std::to_string(n), "alternating", json{{"n", n}}};
  std::vector<std::vector<index_t>> gens;
  if (n >= 3) {
    gens.push_back(detail::cycle_perm(n, 0, 3));
    if (n >= 4) gens.push_back(n % 2 ? detail::cycle_perm(n, 0, n) : detail::cycle_perm(n, 1, n - 1));
  }
  auto g = closure(kind, gens, cap, prov);
  require(g->order() == expected, Errc::Internal, "alternating group order mismatch");
  return g;
}

inline std::uint64_t psl2_order(std::uint64_t q) {
  const std::uint64_t d = (q % 2 == 1) ? 2 : 1;
  return q * (q * q - 1) / d;
}

/// L_2(q) = PSL_2(q) as projective 2x2 matrices, generated by [[1,1],[0,1]],
/// [[1,0],[v,1]] and diag(v, v^-1) with v the least primitive element.
/// The two transvections alone only give SL_2 of the prime field generated by v,
/// which is a proper subgroup for q = 4.
inline GroupPtr make_psl2(std::uint64_t q, std::size_t cap = kDefaultGroupCap) {
  require(q >= 4, Errc::InvalidArgument, "L2(q) requires q >= 4");
  auto [p, e] = arith::prime_power(q);
  require(p != 0, Errc::InvalidArgument, std::to_string(q) + " is not a prime power");
  require(psl2_order(q) <= cap, Errc::CapExceeded, "L2(" + std::to_string(q) + ") exceeds cap");
  auto f = field_create(static_cast<std::uint32_t>(p), e);
  auto kind = std::make_shared<MatrixKind>(f, 2, true);
  Provenance prov{"L2(" + std::to_string(q) + ")", "psl2", json{{"q", q}}};
  prov.params["field"] = json{{"p", f->p()}, {"e", f->e()}, {"modulus", f->modulus()}};
  const auto v = f->primitive();
  auto g = closure(kind, {{1, 1, 0, 1}, {1, 0, v, 1}, {v, 0, 0, f->inv(v)}}, cap, prov);
  require(g->order() == psl2_order(q), Errc::Internal, "L2(q) order mismatch");
  return g;
}

/// The subgroup of G generated by the given elements, as a group in its own right.
inline GroupPtr subgroup(const GroupPtr& g, const std::vector<index_t>& gens, std::string name = {},
                         std::size_t cap = kDefaultGroupCap) {
  std::vector<std::vector<index_t>> raw;
  for (auto x : gens) {
    auto d = g->digits(x);
    raw.emplace_back(d.begin(), d.end());
  }
  Provenance prov{name.empty() ? "subgroup of " + g->name() : std::move(name), "subgroup",
                  json{{"parent", g->name()}}};
  return closure(g->kind_ptr(), raw, cap, prov);
}

// ---------------------------------------------------------------------------
// Cartesian powers H^k.

/// Elements of H^k as coordinate index vectors into H.
class PowerKind final : public ElementKind {
 public:
  PowerKind(GroupPtr base, std::size_t k) : base_(std::move(base)), k_(k) {
    require(k >= 1, Errc::InvalidArgument, "power exponent must be positive");
  }
  std::size_t width() const override { return k_; }
  void multiply(const index_t* a, const index_t* b, index_t* out) const override {
    for (std::size_t j = 0; j < k_; ++j) out[j] = base_->mul(a[j], b[j]);
  }
  void invert(const index_t* a, index_t* out) const override {
    for (std::size_t j = 0; j < k_; ++j) out[j] = base_->inv(a[j]);
  }
  void identity(index_t* out) const override {
    for (std::size_t j = 0; j < k_; ++j) out[j] = FiniteGroup::identity();
  }
  std::string format(const index_t* a) const override {
    std::string s = "(";
    for (std::size_t j = 0; j < k_; ++j) {
      if (j) s += "; ";
      s += base_->format(a[j]);
    }
    return s + ")";
  }
  json describe() const override { return json{{"kind", "power"}, {"base", base_->name()}, {"k", k_}}; }

 private:
  GroupPtr base_;
  std::size_t k_;
};

using PowerElement = std::vector<index_t>;

/// Lazy H^k: componentwise arithmetic, enumeration only on request.
class PowerGroup {
 public:
  PowerGroup(GroupPtr base, std::size_t k) : base_(std::move(base)), k_(k) {
    require(k >= 1, Errc::InvalidArgument, "power exponent must be positive");
  }

  const GroupPtr& base() const noexcept { return base_; }
  std::size_t k() const noexcept { return k_; }
  BigInt order() const {
    BigInt r = 1;
    for (std::size_t j = 0; j < k_; ++j) r *= base_->order();
    return r;
  }
  PowerElement identity() const { return PowerElement(k_, FiniteGroup::identity()); }
  PowerElement mul(const PowerElement& a, const PowerElement& b) const {
    PowerElement r(k_);
    for (std::size_t j = 0; j < k_; ++j) r[j] = base_->mul(a[j], b[j]);
    return r;
  }
  PowerElement inv(const PowerElement& a) const {
    PowerElement r(k_);
    for (std::size_t j = 0; j < k_; ++j) r[j] = base_->inv(a[j]);
    return r;
  }
  PowerElement pow(const PowerElement& a, std::int64_t n) const {
    PowerElement r(k_);
    for (std::size_t j = 0; j < k_; ++j) r[j] = base_->pow(a[j], n);
    return r;
  }
  std::uint64_t element_order(const PowerElement& a) const {
    std::uint64_t o = 1;
    for (auto c : a) o = std::lcm(o, std::uint64_t(base_->element_order(c)));
    return o;
  }

  /// Subgroup generated by the given power elements, fully enumerated.
  GroupPtr enumerate(const std::vector<PowerElement>& gens, std::size_t cap = kDefaultGroupCap) const {
    require(order() <= cap, Errc::CapExceeded,
            "|H|^k = " + order().str() + " exceeds enumeration cap " + std::to_string(cap));
    auto kind = std::make_shared<PowerKind>(base_, k_);
    Provenance prov{base_->name() + "^" + std::to_string(k_), "power",
                    json{{"base", base_->name()}, {"k", k_}}};
    return closure(kind, gens, cap, prov);
  }

 private:
  GroupPtr base_;
  std::size_t k_;
};

inline PowerGroup cartesian_power(GroupPtr h, std::size_t k) { return PowerGroup(std::move(h), k); }

}  // namespace beauville
