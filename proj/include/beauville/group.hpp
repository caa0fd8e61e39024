#pragma once

// Fully enumerated finite groups.
//
// Elements are stored as fixed-width digit strings (permutation images,
// matrix entry codes, or coordinate indices into a base group) in one flat
// buffer with an open-addressing hash index. Element indices follow BFS
// discovery order from the generator list, with the identity at index 0.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <deque>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "beauville/arith.hpp"
#include "beauville/error.hpp"
#include "beauville/field.hpp"

namespace beauville {

using index_t = std::uint32_t;
using json = nlohmann::ordered_json;

inline constexpr std::size_t kDefaultGroupCap = 200000;
inline constexpr std::size_t kMaxGroupCap = 2000000;
inline constexpr std::size_t kMulTableLimit = 2048;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// How elements of one representation are multiplied, inverted and printed.
class ElementKind {
 public:
  virtual ~ElementKind() = default;
  virtual std::size_t width() const = 0;
  /// out = a * b, where a acts first.
  virtual void multiply(const index_t* a, const index_t* b, index_t* out) const = 0;
  virtual void invert(const index_t* a, index_t* out) const = 0;
  virtual void identity(index_t* out) const = 0;
  virtual void canonicalize(index_t*) const {}
  virtual std::string format(const index_t* a) const = 0;
  virtual json describe() const = 0;
};

using KindPtr = std::shared_ptr<const ElementKind>;

// ---------------------------------------------------------------------------
// Permutations on {0..n-1}; (a*b)(i) = b(a(i)).

class PermutationKind final : public ElementKind {
 public:
  explicit PermutationKind(std::size_t degree) : n_(degree) {
    require(degree >= 1, Errc::InvalidArgument, "permutation degree must be positive");
  }
  std::size_t degree() const noexcept { return n_; }
  std::size_t width() const override { return n_; }
  void multiply(const index_t* a, const index_t* b, index_t* out) const override {
    for (std::size_t i = 0; i < n_; ++i) out[i] = b[a[i]];
  }
  void invert(const index_t* a, index_t* out) const override {
    for (std::size_t i = 0; i < n_; ++i) out[a[i]] = static_cast<index_t>(i);
  }
  void identity(index_t* out) const override {
    for (std::size_t i = 0; i < n_; ++i) out[i] = static_cast<index_t>(i);
  }
  std::string format(const index_t* a) const override {
    std::string s;
    std::vector<bool> seen(n_, false);
    for (std::size_t i = 0; i < n_; ++i) {
      if (seen[i] || a[i] == i) continue;
      s += '(';
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) s += ',';
        first = false;
        s += std::to_string(j + 1);
        j = a[j];
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }
  json describe() const override { return json{{"kind", "permutation"}, {"degree", n_}}; }

 private:
  std::size_t n_;
};

/// Parses "(1,2,3)(4,5)" with 1-based points, whitespace-insensitive.
inline std::vector<index_t> parse_cycles(const std::string& text, std::size_t degree) {
  std::vector<index_t> img(degree);
  std::iota(img.begin(), img.end(), 0);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    require(text[i] == '(', Errc::ParseError, "expected '(' in cycle notation: " + text);
    ++i;
    std::vector<index_t> cycle;
    for (;;) {
      skip_ws();
      require(i < text.size(), Errc::ParseError, "unterminated cycle: " + text);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      require(std::isdigit(static_cast<unsigned char>(text[i])), Errc::ParseError,
              "bad character in cycle notation: " + text);
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      require(v >= 1 && v <= degree, Errc::ParseError, "point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      require(!used[v - 1], Errc::ParseError, "point " + std::to_string(v) + " repeated in " + text);
      used[v - 1] = true;
      cycle.push_back(static_cast<index_t>(v - 1));
    }
    for (std::size_t j = 0; j < cycle.size(); ++j) img[cycle[j]] = cycle[(j + 1) % cycle.size()];
    skip_ws();
  }
  return img;
}

// ---------------------------------------------------------------------------
// dim x dim matrices over GF(q), row-major codes. In projective mode every
// stored matrix is scaled so its first nonzero entry is 1.

class MatrixKind final : public ElementKind {
 public:
  MatrixKind(FieldPtr f, std::size_t dim, bool projective)
      : f_(std::move(f)), dim_(dim), projective_(projective) {
    require(dim >= 1 && dim <= 8, Errc::InvalidArgument, "matrix dimension must be in 1..8");
  }
  const FieldPtr& field() const noexcept { return f_; }
  std::size_t dim() const noexcept { return dim_; }
  bool projective() const noexcept { return projective_; }
  std::size_t width() const override { return dim_ * dim_; }

  void multiply(const index_t* a, const index_t* b, index_t* out) const override {
    const auto& F = *f_;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        std::uint32_t s = 0;
        for (std::size_t k = 0; k < dim_; ++k) s = F.add(s, F.mul(a[i * dim_ + k], b[k * dim_ + j]));
        out[i * dim_ + j] = s;
      }
    canonicalize(out);
  }

  void invert(const index_t* a, index_t* out) const override {
    const auto& F = *f_;
    const std::size_t n = dim_;
    std::vector<std::uint32_t> m(a, a + n * n), r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && m[piv * n + c] == 0) ++piv;
      require(piv < n, Errc::DivisionByZero, "singular matrix");
      if (piv != c)
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(m[piv * n + j], m[c * n + j]);
          std::swap(r[piv * n + j], r[c * n + j]);
        }
      const std::uint32_t iv = F.inv(m[c * n + c]);
      for (std::size_t j = 0; j < n; ++j) {
        m[c * n + j] = F.mul(m[c * n + j], iv);
        r[c * n + j] = F.mul(r[c * n + j], iv);
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c || m[i * n + c] == 0) continue;
        const std::uint32_t fct = m[i * n + c];
        for (std::size_t j = 0; j < n; ++j) {
          m[i * n + j] = F.sub(m[i * n + j], F.mul(fct, m[c * n + j]));
          r[i * n + j] = F.sub(r[i * n + j], F.mul(fct, r[c * n + j]));
        }
      }
    }
    std::copy(r.begin(), r.end(), out);
    canonicalize(out);
  }

  void identity(index_t* out) const override {
    for (std::size_t i = 0; i < dim_ * dim_; ++i) out[i] = (i % (dim_ + 1) == 0) ? 1 : 0;
  }

  void canonicalize(index_t* a) const override {
    if (!projective_) return;
    std::size_t i = 0;
    const std::size_t w = dim_ * dim_;
    while (i < w && a[i] == 0) ++i;
    require(i < w, Errc::DivisionByZero, "zero matrix");
    if (a[i] == 1) return;
    const std::uint32_t s = f_->inv(a[i]);
    for (; i < w; ++i) a[i] = f_->mul(a[i], s);
  }

  std::uint32_t determinant(const index_t* a) const {
    const auto& F = *f_;
    const std::size_t n = dim_;
    std::vector<std::uint32_t> m(a, a + n * n);
    std::uint32_t det = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && m[piv * n + c] == 0) ++piv;
      if (piv == n) return 0;
      if (piv != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[c * n + j]);
        det = F.neg(det);
      }
      det = F.mul(det, m[c * n + c]);
      const std::uint32_t iv = F.inv(m[c * n + c]);
      for (std::size_t i = c + 1; i < n; ++i) {
        if (m[i * n + c] == 0) continue;
        const std::uint32_t fct = F.mul(m[i * n + c], iv);
        for (std::size_t j = c; j < n; ++j) m[i * n + j] = F.sub(m[i * n + j], F.mul(fct, m[c * n + j]));
      }
    }
    return det;
  }

  std::string format(const index_t* a) const override {
    std::string s = "[";
    for (std::size_t i = 0; i < dim_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < dim_; ++j) {
        if (j) s += ',';
        s += f_->format(a[i * dim_ + j]);
      }
      s += ']';
    }
    return s + "]";
  }

  json describe() const override {
    return json{{"kind", "matrix"},
                {"dim", dim_},
                {"projective", projective_},
                {"field", json{{"p", f_->p()}, {"e", f_->e()}, {"modulus", f_->modulus()}}}};
  }

 private:
  FieldPtr f_;
  std::size_t dim_;
  bool projective_;
};

// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t hash_words(const index_t* w, std::size_t n) {
  std::uint64_t h = 0x243F6A8885A308D3ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= w[i];
    h *= 0x9E3779B97F4A7C15ull;
    h ^= h >> 29;
  }
  return h;
}

/// Flat element store with an open-addressing hash index.
class ElementTable {
 public:
  explicit ElementTable(std::size_t width) : width_(width), slots_(64, kEmpty) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return count_; }
  const index_t* at(index_t i) const noexcept { return data_.data() + std::size_t(i) * width_; }

  std::optional<index_t> find(const index_t* w) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash_words(w, width_) & mask;; s = (s + 1) & mask) {
      const index_t v = slots_[s];
      if (v == kEmpty) return std::nullopt;
      if (std::memcmp(at(v), w, width_ * sizeof(index_t)) == 0) return v;
    }
  }

  std::pair<index_t, bool> insert(const index_t* w) {
    if (auto f = find(w)) return {*f, false};
    if ((count_ + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
    const index_t id = static_cast<index_t>(count_++);
    data_.insert(data_.end(), w, w + width_);
    place(id);
    return {id, true};
  }

  void shrink() { data_.shrink_to_fit(); }

 private:
  static constexpr index_t kEmpty = ~index_t(0);

  void place(index_t id) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = hash_words(at(id), width_) & mask;
    while (slots_[s] != kEmpty) s = (s + 1) & mask;
    slots_[s] = id;
  }
  void rehash(std::size_t n) {
    slots_.assign(n, kEmpty);
    for (index_t i = 0; i < count_; ++i) place(i);
  }

  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<index_t> data_;
  std::vector<index_t> slots_;
};

// Fixed scratch buffer for one element, on the stack when small.
class Scratch {
 public:
  explicit Scratch(std::size_t w) : w_(w) {
    if (w > kInline) heap_.resize(w);
  }
  index_t* data() { return w_ > kInline ? heap_.data() : buf_; }

 private:
  static constexpr std::size_t kInline = 64;
  std::size_t w_;
  index_t buf_[kInline];
  std::vector<index_t> heap_;
};

}  // namespace detail

struct ConjugacyClass {
  index_t representative = 0;  // least member index
  std::vector<index_t> members;
  std::uint64_t size = 0;
  index_t rep_order = 1;
  std::uint64_t centralizer_order = 0;
  std::string label;  // ATLAS-style: order followed by A, B, ... in sort order
};

struct ClassPartition {
  std::vector<ConjugacyClass> classes;
  std::vector<index_t> class_of;  // element index -> class index
};

/// Where a group came from; embedded in every report.
struct Provenance {
  Provenance() = default;
  Provenance(std::string n, std::string f, json p = json::object(), std::string s = {}, std::string t = {})
      : name(std::move(n)), family(std::move(f)), params(std::move(p)), source(std::move(s)), notes(std::move(t)) {}

  std::string name;
  std::string family;
  json params = json::object();
  std::string source;
  std::string notes;

  json to_json() const {
    json j{{"name", name}, {"family", family}, {"params", params}};
    if (!source.empty()) j["source"] = source;
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }
};

class FiniteGroup {
  struct Private {};

 public:
  FiniteGroup(Private, KindPtr kind, detail::ElementTable table, std::vector<index_t> gens,
              std::vector<index_t> parent, std::vector<std::uint16_t> parent_gen, Provenance prov)
      : kind_(std::move(kind)),
        table_(std::move(table)),
        generators_(std::move(gens)),
        parent_(std::move(parent)),
        parent_gen_(std::move(parent_gen)),
        prov_(std::move(prov)) {
    finish();
  }

  /// Breadth-first closure of the generators. Throws CapExceeded once more
  /// than `cap` elements have been discovered.
  static GroupPtr closure(KindPtr kind, const std::vector<std::vector<index_t>>& generators,
                          std::size_t cap = kDefaultGroupCap, Provenance prov = {}) {
    const std::size_t w = kind->width();
    detail::ElementTable table(w);
    std::vector<index_t> id(w);
    kind->identity(id.data());
    table.insert(id.data());
    std::vector<index_t> parent{0};
    std::vector<std::uint16_t> parent_gen{0};

    std::vector<std::vector<index_t>> gens;
    for (auto g : generators) {
      require(g.size() == w, Errc::InvalidArgument, "generator has wrong width");
      kind->canonicalize(g.data());
      gens.push_back(std::move(g));
    }
    detail::Scratch scratch(w);
    for (std::size_t head = 0; head < table.size(); ++head) {
      for (std::size_t s = 0; s < gens.size(); ++s) {
        kind->multiply(table.at(static_cast<index_t>(head)), gens[s].data(), scratch.data());
        auto [idx, fresh] = table.insert(scratch.data());
        if (fresh) {
          parent.push_back(static_cast<index_t>(head));
          parent_gen.push_back(static_cast<std::uint16_t>(s));
          if (table.size() > cap)
            fail(Errc::CapExceeded, "closure exceeded cap " + std::to_string(cap) + " (reached " +
                                        std::to_string(table.size()) + " elements)");
        }
      }
    }
    table.shrink();
    std::vector<index_t> gen_idx;
    for (auto& g : gens) gen_idx.push_back(*table.find(g.data()));
    return std::make_shared<const FiniteGroup>(Private{}, std::move(kind), std::move(table), std::move(gen_idx),
                                               std::move(parent), std::move(parent_gen), std::move(prov));
  }

  const ElementKind& kind() const noexcept { return *kind_; }
  const KindPtr& kind_ptr() const noexcept { return kind_; }
  std::size_t order() const noexcept { return table_.size(); }
  std::size_t width() const noexcept { return table_.width(); }
  static constexpr index_t identity() noexcept { return 0; }
  const std::vector<index_t>& generators() const noexcept { return generators_; }
  const Provenance& provenance() const noexcept { return prov_; }
  const std::string& name() const noexcept { return prov_.name; }

  std::span<const index_t> digits(index_t i) const { return {table_.at(i), table_.width()}; }
  std::optional<index_t> find(std::span<const index_t> d) const {
    if (d.size() != width()) return std::nullopt;
    return table_.find(d.data());
  }
  /// Index of an element given in raw (uncanonicalized) digits.
  std::optional<index_t> find_raw(std::vector<index_t> d) const {
    if (d.size() != width()) return std::nullopt;
    kind_->canonicalize(d.data());
    return table_.find(d.data());
  }

  index_t mul(index_t a, index_t b) const {
    if (!mul_table_.empty()) return mul_table_[std::size_t(a) * order() + b];
    return mul_slow(a, b);
  }
  index_t inv(index_t a) const noexcept { return inverse_[a]; }
  index_t element_order(index_t a) const noexcept { return orders_[a]; }
  const std::vector<index_t>& orders() const noexcept { return orders_; }
  /// g^-1 x g.
  index_t conj(index_t x, index_t g) const { return mul(mul(inverse_[g], x), g); }
  index_t pow(index_t a, std::int64_t n) const {
    const std::int64_t o = orders_[a];
    n %= o;
    if (n < 0) n += o;
    index_t r = identity(), b = a;
    while (n) {
      if (n & 1) r = mul(r, b);
      b = mul(b, b);
      n >>= 1;
    }
    return r;
  }
  std::uint64_t exponent() const noexcept { return exponent_; }
  std::string format(index_t a) const { return kind_->format(table_.at(a)); }

  /// BFS tree from closure: element i = parent(i) * generator(parent_generator(i)).
  index_t bfs_parent(index_t i) const noexcept { return parent_[i]; }
  std::size_t bfs_generator(index_t i) const noexcept { return parent_gen_[i]; }

  bool is_abelian() const {
    for (auto a : generators_)
      for (auto b : generators_)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Conjugacy classes, computed on first use (thread-safe).
  const ClassPartition& classes() const {
    std::call_once(classes_once_, [this] { compute_classes(); });
    return classes_;
  }
  index_t class_of(index_t g) const { return classes().class_of[g]; }

  /// Elements of each order, ascending index.
  std::vector<index_t> elements_of_order(index_t o) const {
    std::vector<index_t> out;
    for (index_t i = 0; i < order(); ++i)
      if (orders_[i] == o) out.push_back(i);
    return out;
  }

 private:
  index_t mul_slow(index_t a, index_t b) const {
    detail::Scratch s(width());
    kind_->multiply(table_.at(a), table_.at(b), s.data());
    auto r = table_.find(s.data());
    require(r.has_value(), Errc::Internal, "product left the group");
    return *r;
  }

  void finish() {
    const std::size_t n = order();
    if (n <= kMulTableLimit) {
      mul_table_.resize(n * n);
      for (index_t a = 0; a < n; ++a)
        for (index_t b = 0; b < n; ++b) mul_table_[std::size_t(a) * n + b] = mul_slow(a, b);
    }
    inverse_.resize(n);
    detail::Scratch s(width());
    for (index_t a = 0; a < n; ++a) {
      kind_->invert(table_.at(a), s.data());
      auto r = table_.find(s.data());
      require(r.has_value(), Errc::Internal, "inverse left the group");
      inverse_[a] = *r;
    }
    orders_.assign(n, 0);
    orders_[0] = 1;
    exponent_ = 1;
    for (index_t a = 1; a < n; ++a) {
      if (orders_[a]) continue;
      index_t x = a, o = 1;
      while (x != 0) {
        x = mul(x, a);
        ++o;
      }
      orders_[a] = o;
      // Powers a^k have order o / gcd(o, k).
      x = a;
      for (index_t k = 1; k < o; ++k, x = mul(x, a))
        if (!orders_[x]) orders_[x] = o / std::gcd(o, k);
    }
    for (index_t a = 0; a < n; ++a) exponent_ = std::lcm(exponent_, std::uint64_t(orders_[a]));
  }

  void compute_classes() const {
    const std::size_t n = order();
    constexpr index_t kUnset = ~index_t(0);
    std::vector<index_t> cls(n, kUnset);
    std::vector<ConjugacyClass> raw;
    std::vector<index_t> queue;
    for (index_t g = 0; g < n; ++g) {
      if (cls[g] != kUnset) continue;
      const index_t id = static_cast<index_t>(raw.size());
      ConjugacyClass c;
      queue.assign(1, g);
      cls[g] = id;
      for (std::size_t h = 0; h < queue.size(); ++h)
        for (auto s : generators_) {
          const index_t y = conj(queue[h], s);
          if (cls[y] == kUnset) {
            cls[y] = id;
            queue.push_back(y);
          }
        }
      std::sort(queue.begin(), queue.end());
      c.members = queue;
      c.representative = queue.front();
      c.size = queue.size();
      c.rep_order = orders_[g];
      c.centralizer_order = n / c.size;
      raw.push_back(std::move(c));
    }
    std::vector<index_t> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](index_t a, index_t b) {
      const auto& x = raw[a];
      const auto& y = raw[b];
      if (x.rep_order != y.rep_order) return x.rep_order < y.rep_order;
      if (x.size != y.size) return x.size < y.size;
      return x.representative < y.representative;
    });
    std::vector<index_t> rank(raw.size());
    classes_.classes.clear();
    for (index_t i = 0; i < perm.size(); ++i) {
      rank[perm[i]] = i;
      classes_.classes.push_back(std::move(raw[perm[i]]));
    }
    // Labels: within each order, A, B, ..., Z, AA, ...
    index_t run = 0;
    for (std::size_t i = 0; i < classes_.classes.size(); ++i) {
      auto& c = classes_.classes[i];
      if (i == 0 || classes_.classes[i - 1].rep_order != c.rep_order) run = 0;
      std::string suffix;
      index_t r = run++;
      do {
        suffix.insert(suffix.begin(), char('A' + r % 26));
        r = r / 26;
      } while (r-- > 0);
      c.label = std::to_string(c.rep_order) + suffix;
    }
    classes_.class_of.resize(n);
    for (index_t g = 0; g < n; ++g) classes_.class_of[g] = rank[cls[g]];
  }

  KindPtr kind_;
  detail::ElementTable table_;
  std::vector<index_t> generators_;
  std::vector<index_t> parent_;
  std::vector<std::uint16_t> parent_gen_;
  Provenance prov_;
  std::vector<index_t> mul_table_, inverse_, orders_;
  std::uint64_t exponent_ = 1;
  mutable std::once_flag classes_once_;
  mutable ClassPartition classes_;
};

/// Closure of explicit generators given as elements of an existing kind.
inline GroupPtr closure(KindPtr kind, const std::vector<std::vector<index_t>>& generators,
                        std::size_t cap = kDefaultGroupCap, Provenance prov = {}) {
  return FiniteGroup::closure(std::move(kind), generators, cap, std::move(prov));
}

}  // namespace beauville
