#pragma once

// Generation tests, automorphism groups and Aut-orbits of generating triples.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <unordered_map>

#include "beauville/group.hpp"

namespace beauville {

inline constexpr std::size_t kDefaultAutCap = 10000;

/// Reusable closure workspace; epochs avoid clearing the visited array.
class GenerationTester {
 public:
  explicit GenerationTester(const FiniteGroup& g) : g_(g), stamp_(g.order(), 0) {}

  /// Order of <S>, or the first size exceeding `stop_above` if reached earlier.
  std::size_t subgroup_order(std::span<const index_t> s, std::size_t stop_above = ~std::size_t(0)) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    queue_.assign(1, FiniteGroup::identity());
    stamp_[FiniteGroup::identity()] = epoch_;
    for (std::size_t h = 0; h < queue_.size(); ++h)
      for (auto x : s) {
        const index_t y = g_.mul(queue_[h], x);
        if (stamp_[y] != epoch_) {
          stamp_[y] = epoch_;
          queue_.push_back(y);
          if (queue_.size() > stop_above) return queue_.size();
        }
      }
    return queue_.size();
  }

  /// A subgroup with more than |G|/2 elements is G itself.
  bool generates(std::span<const index_t> s) {
    const std::size_t n = g_.order();
    return subgroup_order(s, n / 2) > n / 2 || n == 1;
  }
  bool generates(index_t x, index_t y) {
    const std::array<index_t, 2> s{x, y};
    return generates(s);
  }

  /// Members of the last computed subgroup (complete only if not stopped early).
  const std::vector<index_t>& last_members() const noexcept { return queue_; }

 private:
  const FiniteGroup& g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<index_t> queue_;
};

inline bool generates(const FiniteGroup& g, std::span<const index_t> s) {
  GenerationTester t(g);
  return t.generates(s);
}

struct GeneratingTriple {
  index_t x = 0, y = 0, z = 0;
  std::array<index_t, 3> type{1, 1, 1};
  bool generates = false;

  std::array<index_t, 3> elements() const { return {x, y, z}; }
  auto key() const { return std::array<index_t, 3>{x, y, z}; }
};

/// The triple (x, y, (xy)^-1) with its true type and generation flag.
inline GeneratingTriple make_triple(const FiniteGroup& g, index_t x, index_t y) {
  GeneratingTriple t;
  t.x = x;
  t.y = y;
  t.z = g.inv(g.mul(x, y));
  t.type = {g.element_order(t.x), g.element_order(t.y), g.element_order(t.z)};
  const std::array<index_t, 2> s{x, y};
  t.generates = generates(g, s);
  return t;
}

/// Cyclic permutation (y, z, x).
inline GeneratingTriple rotate(const GeneratingTriple& t) {
  GeneratingTriple r = t;
  r.x = t.y;
  r.y = t.z;
  r.z = t.x;
  r.type = {t.type[1], t.type[2], t.type[0]};
  return r;
}

/// (z^-1, y^-1, x^-1), again a triple with product 1.
inline GeneratingTriple reverse_inverse(const FiniteGroup& g, const GeneratingTriple& t) {
  GeneratingTriple r = t;
  r.x = g.inv(t.z);
  r.y = g.inv(t.y);
  r.z = g.inv(t.x);
  r.type = {t.type[2], t.type[1], t.type[0]};
  return r;
}

namespace detail {

/// Extends a -> a2, b -> b2 along words in (a, b). Returns the full image
/// array if the extension is a well-defined bijective homomorphism on <a,b> = G.
inline std::optional<std::vector<index_t>> extend_word_map(const FiniteGroup& g, index_t a, index_t b, index_t a2,
                                                           index_t b2) {
  constexpr index_t kUnset = ~index_t(0);
  const std::size_t n = g.order();
  std::vector<index_t> img(n, kUnset);
  std::vector<bool> hit(n, false);
  std::vector<index_t> queue{FiniteGroup::identity()};
  queue.reserve(n);
  img[0] = 0;
  hit[0] = true;
  const std::array<index_t, 2> src{a, b}, dst{a2, b2};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const index_t x = queue[h];
    for (int s = 0; s < 2; ++s) {
      const index_t y = g.mul(x, src[s]);
      const index_t iy = g.mul(img[x], dst[s]);
      if (img[y] == kUnset) {
        if (hit[iy]) return std::nullopt;
        img[y] = iy;
        hit[iy] = true;
        queue.push_back(y);
      } else if (img[y] != iy) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != n) return std::nullopt;
  return img;
}

inline std::array<index_t, 5> pair_invariants(const FiniteGroup& g, index_t a, index_t b) {
  const index_t ab = g.mul(a, b);
  const index_t abi = g.mul(a, g.inv(b));
  const index_t aab = g.mul(a, ab);
  const index_t abb = g.mul(ab, b);
  const index_t comm = g.mul(g.mul(g.inv(a), g.inv(b)), ab);
  return {g.element_order(ab), g.element_order(abi), g.element_order(aab), g.element_order(abb),
          g.element_order(comm)};
}

}  // namespace detail

/// True iff some automorphism maps (x1, y1) to (x2, y2); both pairs must generate.
inline bool equivalent_pairs(const FiniteGroup& g, index_t x1, index_t y1, index_t x2, index_t y2) {
  if (g.element_order(x1) != g.element_order(x2) || g.element_order(y1) != g.element_order(y2)) return false;
  if (detail::pair_invariants(g, x1, y1) != detail::pair_invariants(g, x2, y2)) return false;
  return detail::extend_word_map(g, x1, y1, x2, y2).has_value();
}

inline bool equivalent_triples(const FiniteGroup& g, const GeneratingTriple& t1, const GeneratingTriple& t2) {
  return equivalent_pairs(g, t1.x, t1.y, t2.x, t2.y);
}

/// Aut(G) in factored form. Fix a minimal generating pair (a, b). For each
/// class K that a can map to, with representative r, `outer` holds every
/// automorphism alpha with alpha(a) = r, and `transversal` elements t with
/// t^-1 r t running once over K. Every automorphism is uniquely
/// x -> t^-1 alpha(x) t.
class AutGroup {
 public:
  struct Block {
    index_t rep = 0;
    std::vector<std::vector<index_t>> outer;
    std::vector<index_t> transversal;
  };

  static AutGroup trivial(GroupPtr g) {
    AutGroup a;
    a.g_ = std::move(g);
    Block b;
    std::vector<index_t> id(a.g_->order());
    std::iota(id.begin(), id.end(), 0);
    b.outer.push_back(std::move(id));
    b.transversal.push_back(FiniteGroup::identity());
    a.blocks_.push_back(std::move(b));
    a.order_ = 1;
    a.trivial_ = true;
    return a;
  }

  static AutGroup compute(GroupPtr gp, std::size_t cap = kDefaultAutCap) {
    const FiniteGroup& g = *gp;
    require(g.order() <= cap, Errc::CapExceeded,
            "automorphism computation limited to |G| <= " + std::to_string(cap) + ", got " + std::to_string(g.order()));
    AutGroup out;
    out.g_ = gp;
    const auto& cp = g.classes();
    auto [a, b] = minimal_generating_pair(g);
    out.a_ = a;
    out.b_ = b;
    const auto& ca = cp.classes[cp.class_of[a]];
    const auto& cb = cp.classes[cp.class_of[b]];
    const auto inv = detail::pair_invariants(g, a, b);

    std::vector<index_t> b_candidates;
    for (const auto& c : cp.classes)
      if (c.rep_order == cb.rep_order && c.size == cb.size)
        b_candidates.insert(b_candidates.end(), c.members.begin(), c.members.end());
    std::sort(b_candidates.begin(), b_candidates.end());

    for (const auto& k : cp.classes) {
      if (k.rep_order != ca.rep_order || k.size != ca.size) continue;
      Block blk;
      blk.rep = k.representative;
      for (auto b2 : b_candidates) {
        if (detail::pair_invariants(g, blk.rep, b2) != inv) continue;
        if (auto img = detail::extend_word_map(g, a, b, blk.rep, b2)) blk.outer.push_back(std::move(*img));
      }
      if (blk.outer.empty()) continue;
      blk.transversal = conjugators(g, blk.rep, k);
      out.order_ += std::uint64_t(blk.outer.size()) * blk.transversal.size();
      out.blocks_.push_back(std::move(blk));
    }
    // Semiregularity on the fixed base: only the identity fixes (a, b).
    std::size_t fixing = 0;
    for (const auto& blk : out.blocks_)
      if (blk.rep == a)
        for (const auto& m : blk.outer) fixing += (m[b] == b);
    require(fixing == 1, Errc::Internal, "automorphisms fixing the base pair: " + std::to_string(fixing));
    return out;
  }

  const GroupPtr& group() const noexcept { return g_; }
  std::uint64_t order() const noexcept { return order_; }
  bool is_trivial() const noexcept { return trivial_; }
  std::pair<index_t, index_t> base_pair() const noexcept { return {a_, b_}; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  /// Image of g under automorphism number i (0 is the identity).
  index_t apply(std::uint64_t i, index_t x) const {
    for (const auto& blk : blocks_) {
      const std::uint64_t sz = std::uint64_t(blk.outer.size()) * blk.transversal.size();
      if (i < sz) {
        const index_t t = blk.transversal[i / blk.outer.size()];
        const index_t y = blk.outer[i % blk.outer.size()][x];
        return g_->conj(y, t);
      }
      i -= sz;
    }
    fail(Errc::InvalidArgument, "automorphism index out of range");
  }

  std::vector<index_t> map(std::uint64_t i) const {
    std::vector<index_t> m(g_->order());
    for (index_t x = 0; x < m.size(); ++x) m[x] = apply(i, x);
    return m;
  }

  /// A generating set of Aut(G) as full permutations: inner automorphisms by
  /// the group generators together with every stored alpha.
  std::vector<std::vector<index_t>> generator_maps() const {
    std::vector<std::vector<index_t>> gens;
    if (trivial_) return gens;
    for (auto s : g_->generators()) {
      std::vector<index_t> m(g_->order());
      for (index_t x = 0; x < m.size(); ++x) m[x] = g_->conj(x, s);
      gens.push_back(std::move(m));
    }
    for (const auto& blk : blocks_)
      for (const auto& m : blk.outer) gens.push_back(m);
    return gens;
  }

  /// First generating pair in (ord a, ord b, a, b) order with a a class representative.
  static std::pair<index_t, index_t> minimal_generating_pair(const FiniteGroup& g) {
    if (g.order() == 1) return {0, 0};
    const auto& cp = g.classes();
    std::vector<index_t> reps, elems(g.order());
    for (const auto& c : cp.classes) reps.push_back(c.representative);
    std::iota(elems.begin(), elems.end(), 0);
    auto by_order = [&](index_t u, index_t v) {
      return std::pair(g.element_order(u), u) < std::pair(g.element_order(v), v);
    };
    std::sort(reps.begin(), reps.end(), by_order);
    std::stable_sort(elems.begin(), elems.end(), by_order);
    std::vector<index_t> orders;
    for (auto x : elems)
      if (orders.empty() || orders.back() != g.element_order(x)) orders.push_back(g.element_order(x));
    GenerationTester tester(g);
    for (auto oa : orders)
      for (auto ob : orders)
        for (auto a : reps) {
          if (g.element_order(a) != oa) continue;
          for (auto b : elems)
            if (g.element_order(b) == ob && tester.generates(a, b)) return {a, b};
        }
    fail(Errc::NoGeneratingPair, g.name() + " is not 2-generated");
  }

 private:
  static std::vector<index_t> conjugators(const FiniteGroup& g, index_t r, const ConjugacyClass& k) {
    // BFS over the conjugation action, recording one conjugator per member.
    std::unordered_map<index_t, index_t> conj{{r, FiniteGroup::identity()}};
    std::vector<index_t> queue{r};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (auto s : g.generators()) {
        const index_t y = g.conj(queue[h], s);
        if (conj.emplace(y, g.mul(conj[queue[h]], s)).second) queue.push_back(y);
      }
    require(queue.size() == k.size, Errc::Internal, "conjugation orbit does not match class");
    std::vector<index_t> t;
    for (auto m : k.members) t.push_back(conj.at(m));
    return t;
  }

  GroupPtr g_;
  index_t a_ = 0, b_ = 0;
  std::vector<Block> blocks_;
  std::uint64_t order_ = 0;
  bool trivial_ = false;
};

inline AutGroup automorphism_group(GroupPtr g, std::size_t cap = kDefaultAutCap) {
  return AutGroup::compute(std::move(g), cap);
}

struct TripleOrbit {
  std::array<index_t, 3> representative;  // least (x, y, z)
  std::size_t size = 0;
  std::vector<std::size_t> members;  // positions in the input list
};

/// Partition of an Aut-invariant list of triples into Aut-orbits.
inline std::vector<TripleOrbit> triple_orbits(const FiniteGroup& g, const std::vector<GeneratingTriple>& triples,
                                              const AutGroup& aut) {
  std::unordered_map<std::uint64_t, std::size_t> pos;
  pos.reserve(triples.size() * 2);
  auto key = [&](index_t x, index_t y) { return (std::uint64_t(x) << 32) | y; };
  for (std::size_t i = 0; i < triples.size(); ++i) pos.emplace(key(triples[i].x, triples[i].y), i);

  std::vector<std::size_t> parent(triples.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& m : aut.generator_maps())
    for (std::size_t i = 0; i < triples.size(); ++i) {
      auto it = pos.find(key(m[triples[i].x], m[triples[i].y]));
      require(it != pos.end(), Errc::InvalidArgument, "triple list is not Aut-invariant");
      const auto u = find(i), v = find(it->second);
      if (u != v) parent[std::max(u, v)] = std::min(u, v);
    }
  (void)g;
  std::map<std::size_t, TripleOrbit> by_root;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    auto& o = by_root[find(i)];
    const auto k = triples[i].key();
    if (o.members.empty() || k < o.representative) o.representative = k;
    o.members.push_back(i);
    ++o.size;
  }
  std::vector<TripleOrbit> out;
  for (auto& [r, o] : by_root) out.push_back(std::move(o));
  std::sort(out.begin(), out.end(),
            [](const TripleOrbit& a, const TripleOrbit& b) { return a.representative < b.representative; });
  return out;
}

}  // namespace beauville
