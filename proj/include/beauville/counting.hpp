#pragma once

// Triple counts by structure constants and by Frobenius's character sum,
// Dixon's character-table oracle, phi_2, d_2 and the d_2 bounds.

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <random>
#include <set>

#include "beauville/structure.hpp"

namespace beauville {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline constexpr double kCharTol = 1e-6;
inline constexpr std::size_t kDixonClassCap = 32;
inline constexpr std::size_t kPhi2Cap = 2000;

// ---------------------------------------------------------------------------
// Structure constants.

/// |{(x,y,z) in X x Y x Z : xyz = 1}| via a fixed z0 in Z.
inline std::uint64_t nu_brute(const FiniteGroup& g, index_t cx, index_t cy, index_t cz) {
  const auto& cp = g.classes();
  const auto& zc = cp.classes.at(cz);
  const index_t zi = g.inv(zc.representative);
  std::uint64_t hits = 0;
  for (auto x : cp.classes.at(cx).members)
    if (cp.class_of[g.mul(g.inv(x), zi)] == cy) ++hits;
  return hits * zc.size;
}

/// Direct count over all pairs (x, y); for cross-checks on small groups.
inline std::uint64_t nu_exhaustive(const FiniteGroup& g, index_t l, index_t m, index_t n) {
  std::uint64_t count = 0;
  for (index_t x = 0; x < g.order(); ++x) {
    if (g.element_order(x) != l) continue;
    for (index_t y = 0; y < g.order(); ++y)
      if (g.element_order(y) == m && g.element_order(g.mul(x, y)) == n) ++count;
  }
  return count;
}

/// c[j][k][l] = |{x in C_j : x^-1 z_l in C_k}| for a fixed z_l in C_l, so that
/// K_j K_k = sum_l c[j][k][l] K_l for class sums K.
inline std::vector<std::uint64_t> class_coefficients(const FiniteGroup& g) {
  const auto& cp = g.classes();
  const std::size_t r = cp.classes.size();
  std::vector<std::uint64_t> c(r * r * r, 0);
  for (std::size_t l = 0; l < r; ++l) {
    const index_t z = cp.classes[l].representative;
    for (index_t x = 0; x < g.order(); ++x) {
      const std::size_t j = cp.class_of[x];
      const std::size_t k = cp.class_of[g.mul(g.inv(x), z)];
      ++c[(j * r + k) * r + l];
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Character tables.

struct ClassInfo {
  std::string label;
  std::uint64_t size = 0;
  std::uint64_t rep_order = 0;
  std::uint64_t centralizer_order = 0;
};

struct CharacterTable {
  std::string group;
  std::uint64_t order = 0;
  std::vector<ClassInfo> classes;
  std::vector<std::vector<Complex>> characters;  // row = character, column = class
  std::uint64_t seed = 0;
  std::size_t attempts = 0;

  std::vector<double> degrees() const {
    std::vector<double> d;
    for (const auto& row : characters) d.push_back(row.empty() ? 0.0 : row[0].real());
    return d;
  }

  std::size_t class_index(const std::string& label) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (classes[i].label == label) return i;
    fail(Errc::InvalidArgument, "no class labelled '" + label + "' in table for " + group);
  }

  /// Throws TableInvalid naming the first failed relation.
  void validate() const {
    const std::size_t r = classes.size();
    require(r > 0, Errc::TableInvalid, "table has no classes");
    require(characters.size() == r, Errc::TableInvalid,
            "expected " + std::to_string(r) + " characters, got " + std::to_string(characters.size()));
    std::uint64_t total = 0;
    for (const auto& c : classes) {
      require(c.size > 0 && order % c.size == 0, Errc::TableInvalid, "class " + c.label + " size does not divide |G|");
      total += c.size;
    }
    require(total == order, Errc::TableInvalid, "class sizes sum to " + std::to_string(total) + ", not |G|");
    double deg2 = 0;
    for (std::size_t i = 0; i < r; ++i) {
      require(characters[i].size() == r, Errc::TableInvalid, "row " + std::to_string(i) + " has wrong length");
      const Complex d = characters[i][0];
      require(std::abs(d.imag()) < kCharTol && d.real() > 0.5 && std::abs(d.real() - std::round(d.real())) < kCharTol,
              Errc::TableInvalid, "row " + std::to_string(i) + " degree is not a positive integer");
      deg2 += d.real() * d.real();
    }
    require(std::abs(deg2 - double(order)) < kCharTol * double(order), Errc::TableInvalid,
            "sum of squared degrees is " + std::to_string(deg2) + ", not |G|");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) {
        Complex s = 0;
        for (std::size_t k = 0; k < r; ++k) s += double(classes[k].size) * characters[i][k] * std::conj(characters[j][k]);
        s /= double(order);
        const double want = (i == j) ? 1.0 : 0.0;
        require(std::abs(s - want) < kCharTol, Errc::TableInvalid,
                "orthogonality fails for characters (" + std::to_string(i) + ", " + std::to_string(j) +
                    "): <chi_i, chi_j> = " + std::to_string(s.real()) + (s.imag() >= 0 ? "+" : "") +
                    std::to_string(s.imag()) + "i");
      }
  }

  json to_json() const {
    json cls = json::array();
    for (const auto& c : classes)
      cls.push_back(json{{"label", c.label}, {"size", c.size}, {"rep_order", c.rep_order},
                         {"centralizer_order", c.centralizer_order}});
    auto round12 = [](double v) {
      const double r = std::round(v * 1e12) / 1e12;
      return r == 0.0 ? 0.0 : r;
    };
    json chars = json::array();
    for (const auto& row : characters) {
      json jr = json::array();
      for (const auto& v : row) jr.push_back(json::array({round12(v.real()), round12(v.imag())}));
      chars.push_back(std::move(jr));
    }
    return json{{"group", group}, {"order", order}, {"seed", seed}, {"classes", cls}, {"characters", chars}};
  }

  static CharacterTable from_json(const json& j) {
    try {
      CharacterTable t;
      t.group = j.value("group", std::string());
      t.order = j.at("order").get<std::uint64_t>();
      t.seed = j.value("seed", std::uint64_t(0));
      for (const auto& c : j.at("classes")) {
        ClassInfo ci;
        ci.label = c.at("label").get<std::string>();
        ci.size = c.at("size").get<std::uint64_t>();
        ci.rep_order = c.at("rep_order").get<std::uint64_t>();
        ci.centralizer_order = c.value("centralizer_order", ci.size ? t.order / ci.size : 0);
        t.classes.push_back(std::move(ci));
      }
      for (const auto& row : j.at("characters")) {
        std::vector<Complex> r;
        for (const auto& v : row) {
          if (v.is_array())
            r.emplace_back(v.at(0).get<double>(), v.size() > 1 ? v.at(1).get<double>() : 0.0);
          else
            r.emplace_back(v.get<double>(), 0.0);
        }
        t.characters.push_back(std::move(r));
      }
      return t;
    } catch (const json::exception& e) {
      throw Error(Errc::ParseError, std::string("character table: ") + e.what());
    }
  }
};

/// S(X,Y,Z) = sum over chi of chi(x) chi(y) chi(z) / chi(1).
inline Complex character_sum(const CharacterTable& t, std::size_t cx, std::size_t cy, std::size_t cz) {
  Complex s = 0;
  for (const auto& row : t.characters) s += row.at(cx) * row.at(cy) * row.at(cz) / row.at(0);
  return s;
}

inline std::uint64_t nu_frobenius(const CharacterTable& t, std::size_t cx, std::size_t cy, std::size_t cz) {
  const double scale =
      double(t.classes.at(cx).size) * double(t.classes.at(cy).size) * double(t.classes.at(cz).size) / double(t.order);
  const Complex v = scale * character_sum(t, cx, cy, cz);
  const double r = std::round(v.real());
  require(std::abs(v.imag()) < kCharTol && std::abs(v.real() - r) < kCharTol && r > -0.5, Errc::NonIntegerResult,
          "Frobenius sum " + std::to_string(v.real()) + "+" + std::to_string(v.imag()) +
              "i is not a nonnegative integer");
  return static_cast<std::uint64_t>(r);
}

/// Character table by simultaneous diagonalization of the class-multiplication
/// matrices (Burnside/Dixon) over the complex numbers.
inline CharacterTable dixon_character_table(const FiniteGroup& g, std::uint64_t seed = 1,
                                            std::size_t class_cap = kDixonClassCap) {
  const auto& cp = g.classes();
  const std::size_t r = cp.classes.size();
  require(r <= class_cap, Errc::CapExceeded,
          g.name() + " has " + std::to_string(r) + " classes, above the cap " + std::to_string(class_cap));
  const auto c = class_coefficients(g);
  CharacterTable t;
  t.group = g.name();
  t.order = g.order();
  for (const auto& k : cp.classes) t.classes.push_back({k.label, k.size, k.rep_order, k.centralizer_order});

  for (std::size_t attempt = 0; attempt < 5; ++attempt) {
    const std::uint64_t s = seed + attempt;
    std::mt19937_64 rng(s);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r, r);
    for (std::size_t j = 0; j < r; ++j) {
      const double w = uni(rng);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) a(k, l) += w * double(c[(j * r + k) * r + l]);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) continue;
    const auto ev = es.eigenvalues();
    double scale = 1.0;
    for (std::size_t i = 0; i < r; ++i) scale = std::max(scale, std::abs(ev(i)));
    bool distinct = true;
    for (std::size_t i = 0; i < r && distinct; ++i)
      for (std::size_t k = i + 1; k < r; ++k)
        if (std::abs(ev(i) - ev(k)) < 1e-6 * scale) {
          distinct = false;
          break;
        }
    if (!distinct) continue;

    std::vector<std::vector<Complex>> rows;
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
      Eigen::VectorXcd w = es.eigenvectors().col(i);
      if (std::abs(w(0)) < 1e-9) {
        ok = false;
        break;
      }
      w /= w(0);
      double norm = 0;
      for (std::size_t l = 0; l < r; ++l) norm += std::norm(w(l)) / double(cp.classes[l].size);
      const double deg = std::round(std::sqrt(double(g.order()) / norm));
      std::vector<Complex> row(r);
      for (std::size_t l = 0; l < r; ++l) row[l] = w(l) * deg / double(cp.classes[l].size);
      rows.push_back(std::move(row));
    }
    if (!ok) continue;
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
      for (std::size_t l = 0; l < x.size(); ++l) {
        const double xr = std::round(x[l].real() * 1e6), yr = std::round(y[l].real() * 1e6);
        if (xr != yr) return xr < yr;
        const double xi = std::round(x[l].imag() * 1e6), yi = std::round(y[l].imag() * 1e6);
        if (xi != yi) return xi < yi;
      }
      return false;
    });
    t.characters = std::move(rows);
    t.seed = s;
    t.attempts = attempt + 1;
    try {
      t.validate();
    } catch (const Error&) {
      continue;
    }
    return t;
  }
  fail(Errc::DegenerateEigenvalues, g.name() + ": no separating combination after 5 seeds from " + std::to_string(seed));
}

/// Checks that a table was computed for this group's class list.
inline void check_table_matches(const CharacterTable& t, const FiniteGroup& g) {
  const auto& cp = g.classes();
  require(t.order == g.order() && t.classes.size() == cp.classes.size(), Errc::TableInvalid,
          "table does not match group " + g.name());
  for (std::size_t i = 0; i < t.classes.size(); ++i)
    require(t.classes[i].label == cp.classes[i].label && t.classes[i].size == cp.classes[i].size &&
                t.classes[i].rep_order == cp.classes[i].rep_order,
            Errc::TableInvalid, "class " + t.classes[i].label + " does not match " + g.name());
}

// ---------------------------------------------------------------------------
// Triple censuses with generation.

struct ClassTripleCount {
  index_t x_class = 0, y_class = 0, z_class = 0;
  std::uint64_t nu = 0, phi = 0;
};

struct TripleCensus {
  std::string group;
  std::array<index_t, 3> type{};
  std::uint64_t nu = 0;
  std::uint64_t nu_generating = 0;
  std::optional<std::uint64_t> aut_order;
  std::optional<std::uint64_t> orbit_count;
  std::vector<ClassTripleCount> rows;
  std::string method = "brute";
  /// One generating triple per C(z0)-orbit, with z = z0 a class representative.
  std::vector<GeneratingTriple> representatives;
  std::vector<std::uint64_t> representative_weights;
};

/// Exact nu and phi for type (l, m, n). z runs over class representatives z0;
/// x over elements of order l with y = x^-1 z0^-1 of order m; generation is
/// tested once per C(z0)-orbit of x.
inline TripleCensus phi_triples(const FiniteGroup& g, index_t l, index_t m, index_t n, const AutGroup* aut = nullptr) {
  TripleCensus out;
  out.group = g.name();
  out.type = {l, m, n};
  const auto& cp = g.classes();
  const auto xs = g.elements_of_order(l);
  std::map<std::array<index_t, 3>, ClassTripleCount> rows;
  GenerationTester tester(g);
  std::vector<std::uint32_t> seen(g.order(), 0);
  std::uint32_t epoch = 0;

  for (index_t zc = 0; zc < cp.classes.size(); ++zc) {
    const auto& zk = cp.classes[zc];
    if (zk.rep_order != n) continue;
    const index_t z0 = zk.representative, zi = g.inv(z0);
    std::vector<index_t> cent;
    for (index_t c = 0; c < g.order(); ++c)
      if (g.mul(c, z0) == g.mul(z0, c)) cent.push_back(c);
    ++epoch;
    for (auto x : xs) {
      if (seen[x] == epoch) continue;
      const index_t y = g.mul(g.inv(x), zi);
      if (g.element_order(y) != m) continue;
      std::uint64_t orbit = 0;
      for (auto c : cent) {
        const index_t xc = g.conj(x, c);
        if (seen[xc] != epoch) {
          seen[xc] = epoch;
          ++orbit;
        }
      }
      const bool gen = tester.generates(x, y);
      auto& row = rows[{cp.class_of[x], cp.class_of[y], zc}];
      row.x_class = cp.class_of[x];
      row.y_class = cp.class_of[y];
      row.z_class = zc;
      row.nu += orbit * zk.size;
      if (gen) {
        row.phi += orbit * zk.size;
        GeneratingTriple t{x, y, z0, {l, m, n}, true};
        out.representatives.push_back(t);
        out.representative_weights.push_back(orbit * zk.size);
      }
    }
  }
  for (auto& [k, r] : rows) {
    out.nu += r.nu;
    out.nu_generating += r.phi;
    out.rows.push_back(r);
  }
  if (aut) {
    out.aut_order = aut->order();
    require(out.nu_generating % aut->order() == 0, Errc::Internal,
            "phi = " + std::to_string(out.nu_generating) + " is not a multiple of |Aut| = " +
                std::to_string(aut->order()));
    out.orbit_count = out.nu_generating / aut->order();
  }
  return out;
}

/// Every generating triple of the census, expanded from the representatives
/// by conjugation (for explicit orbit partitions).
inline std::vector<GeneratingTriple> expand_generating_triples(const FiniteGroup& g, const TripleCensus& c) {
  std::set<std::array<index_t, 3>> all;
  for (const auto& t : c.representatives) {
    std::set<std::array<index_t, 3>> local{{t.x, t.y, t.z}};
    std::vector<std::array<index_t, 3>> queue{{t.x, t.y, t.z}};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (auto s : g.generators()) {
        std::array<index_t, 3> u{g.conj(queue[h][0], s), g.conj(queue[h][1], s), g.conj(queue[h][2], s)};
        if (local.insert(u).second) queue.push_back(u);
      }
    all.insert(local.begin(), local.end());
  }
  std::vector<GeneratingTriple> out;
  for (const auto& k : all) out.push_back({k[0], k[1], k[2], c.type, true});
  return out;
}

// ---------------------------------------------------------------------------
// phi_2 and d_2.

struct Phi2Result {
  std::uint64_t phi2 = 0;
  std::uint64_t aut_order = 0;
  std::uint64_t d2 = 0;
  bool degenerate = false;
};

/// Ordered generating pairs by a full scan.
inline std::uint64_t phi2_naive(const FiniteGroup& g) {
  GenerationTester t(g);
  std::uint64_t count = 0;
  for (index_t x = 0; x < g.order(); ++x)
    for (index_t y = 0; y < g.order(); ++y) count += t.generates(x, y);
  return count;
}

/// Ordered generating pairs, counted over pairs of cyclic subgroups weighted
/// by their numbers of generators, with the first subgroup taken up to conjugacy.
inline std::uint64_t phi2_count(const FiniteGroup& g, std::size_t cap = kPhi2Cap) {
  require(g.order() <= cap, Errc::CapExceeded,
          "phi_2 scan limited to |G| <= " + std::to_string(cap) + ", got " + std::to_string(g.order()));
  const std::size_t n = g.order();
  if (n == 1) return 1;
  // Least generator of each cyclic subgroup.
  std::vector<index_t> key(n);
  for (index_t x = 0; x < n; ++x) {
    const index_t o = g.element_order(x);
    index_t best = x, p = x;
    for (index_t k = 2; k < o; ++k) {
      p = g.mul(p, x);
      if (std::gcd(k, o) == 1) best = std::min(best, p);
    }
    key[x] = best;
  }
  std::vector<index_t> cyclic;
  for (index_t x = 0; x < n; ++x)
    if (key[x] == x) cyclic.push_back(x);
  // Conjugacy classes of cyclic subgroups, keyed by least generator.
  std::map<index_t, std::uint64_t> reps;
  std::vector<bool> done(n, false);
  for (auto c : cyclic) {
    if (done[c]) continue;
    std::vector<index_t> queue{c};
    done[c] = true;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (auto s : g.generators()) {
        const index_t y = key[g.conj(queue[h], s)];
        if (!done[y]) {
          done[y] = true;
          queue.push_back(y);
        }
      }
    reps[c] = queue.size();
  }
  GenerationTester t(g);
  std::uint64_t total = 0;
  for (auto [c1, conjugates] : reps) {
    std::uint64_t inner = 0;
    for (auto c2 : cyclic)
      if (t.generates(c1, c2)) inner += arith::euler_phi(g.element_order(c2));
    total += conjugates * arith::euler_phi(g.element_order(c1)) * inner;
  }
  return total;
}

inline Phi2Result phi2_and_d2(const FiniteGroup& g, const AutGroup& aut, std::size_t cap = kPhi2Cap) {
  Phi2Result r;
  r.phi2 = phi2_count(g, cap);
  r.aut_order = aut.order();
  r.degenerate = g.order() == 1;
  require(r.phi2 % r.aut_order == 0, Errc::Internal,
          "phi_2 = " + std::to_string(r.phi2) + " is not divisible by |Aut| = " + std::to_string(r.aut_order));
  r.d2 = r.phi2 / r.aut_order;
  return r;
}

/// Aut-orbits on generating pairs, counted by explicit union-find.
inline std::uint64_t generating_pair_orbits(const FiniteGroup& g, const AutGroup& aut) {
  GenerationTester t(g);
  std::vector<GeneratingTriple> pairs;
  for (index_t x = 0; x < g.order(); ++x)
    for (index_t y = 0; y < g.order(); ++y)
      if (t.generates(x, y)) pairs.push_back({x, y, g.inv(g.mul(x, y)), {}, true});
  return triple_orbits(g, pairs, aut).size();
}

struct D2Bounds {
  BigInt upper;
  BigInt lower;
  BigRational upper_exact;
  BigRational lower_exact;
  BigRational index_sum;
};

/// |H|/|Out H| >= d_2(H) >= (|H|/|Out H|)(1 - sum 1/|H:M_i|); upper floored, lower ceiled.
inline D2Bounds d2_bounds(const BigInt& order, const BigInt& out, const std::vector<BigInt>& indices) {
  require(order > 0 && out > 0, Errc::InvalidArgument, "orders must be positive");
  D2Bounds b;
  for (const auto& i : indices) {
    require(i >= 2, Errc::InvalidArgument, "maximal subgroup index must be at least 2");
    b.index_sum += BigRational(1, i);
  }
  b.upper_exact = BigRational(order, out);
  b.lower_exact = b.upper_exact * (BigRational(1) - b.index_sum);
  auto floor_q = [](const BigRational& q) {
    BigInt num = numerator(q), den = denominator(q);
    BigInt f = num / den;
    if (num % den != 0 && num < 0) f -= 1;
    return f;
  };
  b.upper = floor_q(b.upper_exact);
  const BigRational& lo = b.lower_exact;
  b.lower = floor_q(lo);
  if (BigRational(b.lower) != lo) b.lower += 1;
  return b;
}

}  // namespace beauville
