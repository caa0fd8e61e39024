#pragma once

// Trace-controlled generating triples for L_2(q).

#include "beauville/families.hpp"
#include "beauville/structure.hpp"

namespace beauville {

struct Psl2Params {
  std::uint64_t q = 0, p0 = 0;
  unsigned e = 0;
  std::uint64_t d = 1;
  std::uint64_t q1 = 0;  // (q+1)/d
  std::uint64_t q2 = 0;  // (q-1)/d

  static Psl2Params make(std::uint64_t q) {
    auto [p, e] = arith::prime_power(q);
    require(p != 0 && q >= 4, Errc::InvalidArgument, "q must be a prime power >= 4, got " + std::to_string(q));
    Psl2Params r;
    r.q = q;
    r.p0 = p;
    r.e = e;
    r.d = std::gcd(std::uint64_t(2), q - 1);
    r.q1 = (q + 1) / r.d;
    r.q2 = (q - 1) / r.d;
    require(r.q1 * r.q2 * r.d * r.d == q * q - 1 && std::gcd(r.q1, r.q2) == 1 && std::gcd(r.q1, r.p0) == 1 &&
                std::gcd(r.q2, r.p0) == 1,
            Errc::Internal, "L2(q) parameters are not mutually coprime");
    return r;
  }

  json to_json() const {
    return json{{"q", q}, {"p0", p0}, {"e", e}, {"d", d}, {"q1", q1}, {"q2", q2}};
  }
};

struct TraceOrder {
  std::uint64_t order = 1;
  bool unipotent = false;
};

using Mat2 = std::array<std::uint32_t, 4>;

namespace detail {

inline Mat2 mat2_mul(const FieldSpec& f, const Mat2& a, const Mat2& b) {
  return {f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])), f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
          f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])), f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3]))};
}

inline bool is_scalar_pm1(const FieldSpec& f, const Mat2& a) {
  return a[1] == 0 && a[2] == 0 && a[0] == a[3] && (a[0] == 1 || a[0] == f.neg(1));
}

inline std::uint64_t projective_order(const FieldSpec& f, const Mat2& m) {
  Mat2 p = m;
  std::uint64_t k = 1;
  while (!is_scalar_pm1(f, p)) {
    p = mat2_mul(f, p, m);
    ++k;
    require(k <= 2 * f.q() + 2, Errc::Internal, "projective order search did not terminate");
  }
  return k;
}

}  // namespace detail

/// Order in L_2(q) of any element of SL_2(q) with trace s (via [[s,1],[-1,0]]).
inline TraceOrder order_from_trace(const FieldSpec& f, std::uint32_t s) {
  TraceOrder r;
  const std::uint32_t two = f.add(1, 1);
  r.unipotent = (s == two || s == f.neg(two));
  r.order = detail::projective_order(f, {s, 1, f.neg(1), 0});
  return r;
}

/// For each realized order, the traces realizing it in code order.
inline std::map<std::uint64_t, std::vector<std::uint32_t>> trace_menu(const FieldSpec& f) {
  std::map<std::uint64_t, std::vector<std::uint32_t>> menu;
  for (std::uint32_t s = 0; s < f.q(); ++s) menu[order_from_trace(f, s).order].push_back(s);
  return menu;
}

struct Psl2Triple {
  GroupPtr group;
  Psl2Params params;
  GeneratingTriple triple;
  std::array<Mat2, 3> matrices;  // SL_2 representatives of x, y, z
  json choices;                  // trace and parameter choices

  json to_json() const {
    const auto& f = *static_cast<const MatrixKind&>(group->kind()).field();
    json mats = json::array();
    for (const auto& m : matrices) mats.push_back(json::array({m[0], m[1], m[2], m[3]}));
    return json{{"group", group->name()},
                {"params", params.to_json()},
                {"field", {{"p", f.p()}, {"e", f.e()}, {"modulus", f.modulus()}}},
                {"type", triple.type},
                {"matrices", mats},
                {"indices", {triple.x, triple.y, triple.z}},
                {"choices", choices}};
  }
};

namespace detail {

inline void require_supported(const Psl2Params& p) {
  require(p.q == 7 || p.q == 8 || p.q >= 11, Errc::InvalidArgument,
          "recipes need q = 7, 8 or q >= 11 (q = " + std::to_string(p.q) + " reduces to alternating groups)");
}

inline Psl2Triple finish_triple(GroupPtr h, const Psl2Params& params, const std::array<Mat2, 3>& m,
                                const std::array<std::uint64_t, 3>& declared, json choices) {
  const auto& f = *static_cast<const MatrixKind&>(h->kind()).field();
  const Mat2 prod = mat2_mul(f, mat2_mul(f, m[0], m[1]), m[2]);
  require(prod == Mat2{1, 0, 0, 1}, Errc::Internal, "recipe matrices do not multiply to the identity");
  std::array<index_t, 3> idx{};
  for (int i = 0; i < 3; ++i) {
    auto found = h->find_raw({m[i][0], m[i][1], m[i][2], m[i][3]});
    require(found.has_value(), Errc::Internal, "recipe matrix not in L2(q)");
    idx[i] = *found;
  }
  Psl2Triple out{h, params, make_triple(*h, idx[0], idx[1]), m, std::move(choices)};
  require(out.triple.z == idx[2], Errc::Internal, "third recipe matrix is not (xy)^-1");
  for (int i = 0; i < 3; ++i)
    require(out.triple.type[i] == declared[i], Errc::NotSmooth,
            "recipe element " + std::to_string(i) + " has order " + std::to_string(out.triple.type[i]) +
                ", expected " + std::to_string(declared[i]));
  require(out.triple.generates, Errc::NotGenerating, "recipe triple does not generate " + h->name());
  return out;
}

}  // namespace detail

/// Type (q_i, q_i, p0): x = [[s,1],[-1,0]], y = [[0,1],[-1,t]], z = (xy)^-1,
/// with (s, t) least such that both traces give order q_i and s + t != 0.
inline Psl2Triple macbeath_triple(std::uint64_t q, std::uint64_t target, GroupPtr h = nullptr) {
  const auto params = Psl2Params::make(q);
  detail::require_supported(params);
  require(target == params.q1 || target == params.q2, Errc::InvalidArgument,
          "target must be q1 = " + std::to_string(params.q1) + " or q2 = " + std::to_string(params.q2));
  if (!h) h = make_psl2(q);
  const auto& f = *static_cast<const MatrixKind&>(h->kind()).field();
  const auto menu = trace_menu(f);
  const auto it = menu.find(target);
  require(it != menu.end(), Errc::NoValidTraces, "no trace of order " + std::to_string(target) + " in L2(" +
                                                    std::to_string(q) + ")");
  for (auto s : it->second)
    for (auto t : it->second) {
      if (f.add(s, t) == 0) continue;
      const Mat2 x{s, 1, f.neg(1), 0};
      const Mat2 y{0, 1, f.neg(1), t};
      // (xy)^-1 = [[-1, s+t],[0,-1]]^-1 = [[-1, -(s+t)], [0, -1]]
      const Mat2 z{f.neg(1), f.neg(f.add(s, t)), 0, f.neg(1)};
      return detail::finish_triple(h, params, {x, y, z}, {target, target, params.p0},
                                   json{{"s", s}, {"t", t}, {"s_plus_t", f.add(s, t)}});
    }
  fail(Errc::NoValidTraces, "no traces s, t with s + t != 0 for order " + std::to_string(target));
}

/// Type (q1, q2, q2): [[u,1],[-1,0]], [[v,w],[0,v^-1]], [[-w,-uw-v^-1],[v,uv]]
/// with u the least trace of order q1, v the primitive element and w least
/// with uv - w a trace of order q2.
inline Psl2Triple second_triple(std::uint64_t q, GroupPtr h = nullptr) {
  const auto params = Psl2Params::make(q);
  detail::require_supported(params);
  if (!h) h = make_psl2(q);
  const auto& f = *static_cast<const MatrixKind&>(h->kind()).field();
  const auto menu = trace_menu(f);
  const auto it1 = menu.find(params.q1);
  require(it1 != menu.end(), Errc::NoValidTraces, "no trace of order q1 = " + std::to_string(params.q1));
  const std::uint32_t u = it1->second.front();
  const std::uint32_t v = f.primitive();
  const std::uint32_t vi = f.inv(v);
  for (std::uint32_t w = 0; w < f.q(); ++w) {
    const std::uint32_t tr = f.sub(f.mul(u, v), w);
    if (order_from_trace(f, tr).order != params.q2) continue;
    const Mat2 a{u, 1, f.neg(1), 0};
    const Mat2 b{v, w, 0, vi};
    const Mat2 c{f.neg(w), f.neg(f.add(f.mul(u, w), vi)), v, f.mul(u, v)};
    return detail::finish_triple(h, params, {a, b, c}, {params.q1, params.q2, params.q2},
                                 json{{"u", u}, {"v", v}, {"w", w}, {"trace_z", tr}});
  }
  fail(Errc::NoValidW, "no w with uv - w of order q2 in L2(" + std::to_string(q) + ")");
}

}  // namespace beauville
