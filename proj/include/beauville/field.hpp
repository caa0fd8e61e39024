#pragma once

// Arithmetic in GF(p^e) in a polynomial basis.
//
// An element is identified with its code c = c_0 + c_1 p + ... + c_{e-1} p^{e-1}
// where c_i are the polynomial-basis coordinates. Codes double as the
// enumeration order: "least" always means smallest code.

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "beauville/arith.hpp"
#include "beauville/error.hpp"

namespace beauville {

inline constexpr std::uint32_t kDefaultFieldCap = 1u << 16;

namespace detail {

// Dense polynomials over GF(p), lowest coefficient first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, so a^(p-2) works; p is small.
  std::uint64_t r = 1, b = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::size_t shift = a.size() - m.size();
    const std::uint64_t f = std::uint64_t(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = f * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  trim(r);
  return r;
}

// Digits of `code` in base p, length e (may carry trailing zeros).
inline Poly code_to_poly(std::uint32_t code, std::uint32_t p, unsigned e) {
  Poly r(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    r[i] = code % p;
    code /= p;
  }
  return r;
}

inline std::uint32_t poly_to_code(const Poly& a, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = a.size(); i-- > 0;) code = code * p + a[i];
  return code;
}

// Irreducibility by trial division over all monic polynomials of degree
// 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = arith::ipow(p, d);
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = code_to_poly(static_cast<std::uint32_t>(low), p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Immutable description of GF(p^e) plus lookup tables. Shared by pointer.
class FieldSpec {
 public:
  static std::shared_ptr<const FieldSpec> create(std::uint32_t p, unsigned e,
                                                 std::uint32_t cap = kDefaultFieldCap) {
    require(arith::is_prime(p), Errc::NotPrime, std::to_string(p) + " is not prime");
    require(e >= 1, Errc::InvalidArgument, "extension degree must be positive");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
      q *= p;
      require(q <= cap, Errc::CapExceeded,
              "field size " + std::to_string(p) + "^" + std::to_string(e) + " exceeds cap " +
                  std::to_string(cap));
    }
    return std::shared_ptr<const FieldSpec>(new FieldSpec(p, e, static_cast<std::uint32_t>(q)));
  }

  std::uint32_t p() const noexcept { return p_; }
  unsigned e() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }
  /// Monic modulus, lowest coefficient first (length e + 1). For e = 1 this is x.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  /// Least element of multiplicative order q - 1.
  std::uint32_t primitive() const noexcept { return primitive_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (e_ == 1) return (a + b) % p_;
    if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
    return add_digits(a, b, false);
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (p_ == 2) return a;
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_table_[a];
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  std::uint32_t inv(std::uint32_t a) const {
    require(a != 0, Errc::DivisionByZero, "inverse of zero");
    const std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
  }
  std::uint32_t pow(std::uint32_t a, std::int64_t n) const {
    if (n < 0) {
      a = inv(a);
      n = -n;
    }
    std::uint32_t r = 1, b = a;
    while (n) {
      if (n & 1) r = mul(r, b);
      b = mul(b, b);
      n >>= 1;
    }
    return r;
  }
  /// Image of an integer under Z -> GF(p).
  std::uint32_t from_int(std::int64_t v) const {
    std::int64_t r = v % std::int64_t(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t one() const noexcept { return 1; }
  std::uint32_t multiplicative_order(std::uint32_t a) const {
    require(a != 0, Errc::DivisionByZero, "order of zero");
    std::uint32_t o = 1, x = a;
    while (x != 1) {
      x = mul(x, a);
      ++o;
    }
    return o;
  }
  /// Polynomial-basis coordinates of a code.
  std::vector<std::uint32_t> coeffs(std::uint32_t code) const {
    return detail::code_to_poly(code, p_, e_);
  }

  /// Human-readable element: integer for prime fields, polynomial in x otherwise.
  std::string format(std::uint32_t code) const {
    if (e_ == 1) return std::to_string(code);
    auto c = coeffs(code);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] == 0) continue;
      if (!first) os << '+';
      first = false;
      if (c[i] != 1 || i == 0) os << c[i];
      if (i >= 1) os << 'x';
      if (i >= 2) os << '^' << i;
    }
    if (first) os << '0';
    return os.str();
  }

  bool operator==(const FieldSpec& o) const { return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_; }

 private:
  FieldSpec(std::uint32_t p, unsigned e, std::uint32_t q) : p_(p), e_(e), q_(q) {
    if (e == 1) {
      modulus_ = {0, 1};
    } else {
      const std::uint64_t count = arith::ipow(p, e);
      bool found = false;
      for (std::uint64_t low = 0; low < count && !found; ++low) {
        detail::Poly f = detail::code_to_poly(static_cast<std::uint32_t>(low), p, e);
        f.push_back(1);
        if (f[0] != 0 && detail::is_irreducible(f, p)) {
          modulus_ = f;
          found = true;
        }
      }
      require(found, Errc::NoIrreducibleFound,
              "no irreducible of degree " + std::to_string(e) + " over GF(" + std::to_string(p) + ")");
    }
    build_tables();
  }

  std::uint32_t poly_mul_code(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
    auto pa = detail::code_to_poly(a, p_, e_), pb = detail::code_to_poly(b, p_, e_);
    detail::trim(pa);
    detail::trim(pb);
    return detail::poly_to_code(detail::poly_mod(detail::poly_mul(pa, pb, p_), modulus_, p_), p_);
  }

  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b, bool) const {
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < e_; ++i) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }

  void build_tables() {
    // The primitive element is found with plain polynomial arithmetic; the
    // log/exp tables are then derived from it.
    primitive_ = 0;
    for (std::uint32_t g = 1; g < q_ && primitive_ == 0; ++g) {
      std::uint32_t x = g, o = 1;
      while (x != 1) {
        x = poly_mul_code(x, g);
        ++o;
      }
      if (o == q_ - 1) primitive_ = g;
    }
    if (q_ == 2) primitive_ = 1;
    exp_.assign(q_, 0);
    log_.assign(q_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = poly_mul_code(x, primitive_);
    }
    if (e_ > 1 && p_ != 2) {
      neg_table_.resize(q_);
      for (std::uint32_t a = 0; a < q_; ++a) {
        std::uint32_t r = 0, scale = 1, t = a;
        for (unsigned i = 0; i < e_; ++i) {
          const std::uint32_t d = t % p_;
          r += (d == 0 ? 0 : p_ - d) * scale;
          t /= p_;
          scale *= p_;
        }
        neg_table_[a] = r;
      }
      if (q_ <= 1024) {
        add_table_.resize(std::size_t(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
          for (std::uint32_t b = 0; b < q_; ++b) add_table_[std::size_t(a) * q_ + b] = add_digits(a, b, false);
      }
    }
  }

  std::uint32_t p_;
  unsigned e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::uint32_t primitive_ = 1;
  std::vector<std::uint32_t> exp_, log_, neg_table_, add_table_;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

inline FieldPtr field_create(std::uint32_t p, unsigned e, std::uint32_t cap = kDefaultFieldCap) {
  return FieldSpec::create(p, e, cap);
}

/// Value-semantic field element bound to its field.
class FieldElement {
 public:
  FieldElement(FieldPtr f, std::uint32_t code) : f_(std::move(f)), code_(code) {
    require(code_ < f_->q(), Errc::InvalidArgument, "field code out of range");
  }

  const FieldPtr& field() const noexcept { return f_; }
  std::uint32_t code() const noexcept { return code_; }
  std::vector<std::uint32_t> coeffs() const { return f_->coeffs(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const { return {f_, f_->add(code_, same(o))}; }
  FieldElement operator-(const FieldElement& o) const { return {f_, f_->sub(code_, same(o))}; }
  FieldElement operator*(const FieldElement& o) const { return {f_, f_->mul(code_, same(o))}; }
  FieldElement operator/(const FieldElement& o) const { return {f_, f_->mul(code_, f_->inv(same(o)))}; }
  FieldElement operator-() const { return {f_, f_->neg(code_)}; }
  FieldElement inv() const { return {f_, f_->inv(code_)}; }
  FieldElement pow(std::int64_t n) const { return {f_, f_->pow(code_, n)}; }

  bool operator==(const FieldElement& o) const { return same(o) == code_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string to_string() const { return f_->format(code_); }

 private:
  std::uint32_t same(const FieldElement& o) const {
    require(f_ == o.f_ || *f_ == *o.f_, Errc::SpecMismatch, "operands from different fields");
    return o.code_;
  }

  FieldPtr f_;
  std::uint32_t code_;
};

/// Least element (in code order) generating the multiplicative group.
inline FieldElement multiplicative_generator(const FieldPtr& f) { return {f, f->primitive()}; }

}  // namespace beauville
