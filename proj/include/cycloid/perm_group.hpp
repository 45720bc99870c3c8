#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "permutation.hpp"

namespace cycloid {

inline constexpr std::size_t default_order_cap = 1'000'000;

/// A finitely generated subgroup of Sym(n).  The element set is materialized
/// on first use (breadth-first closure, identity first, then in discovery
/// order) and cached; materialization is thread-safe.
class PermGroup
{
public:
  PermGroup() : PermGroup(0, {}, default_order_cap) {}

  /// Throws DegreeMismatch if the generators disagree on the degree.  An
  /// empty generator list needs an explicit degree; use trivial().
  static PermGroup generate(std::vector<Permutation> gens,
                            std::size_t order_cap = default_order_cap)
  {
    if (gens.empty())
      throw PreconditionFailed("generate: empty generator list");
    auto const n = gens.front().degree();
    for (auto const &g : gens)
      if (g.degree() != n)
        throw DegreeMismatch(n, g.degree());
    return PermGroup(n, std::move(gens), order_cap);
  }

  static PermGroup trivial(std::size_t n)
  {
    return PermGroup(n, {Permutation::identity(n)}, default_order_cap);
  }

  std::size_t degree() const { return degree_; }
  std::vector<Permutation> const &generators() const { return gens_; }
  std::size_t order_cap() const { return state_->cap; }

  /// Throws CapExceeded when the group is larger than the order cap.
  std::vector<Permutation> const &elements() const &
  {
    materialize();
    return state_->elements;
  }

  std::vector<Permutation> elements() &&
  {
    materialize();
    return state_->elements;
  }

  std::size_t order() const { return elements().size(); }

  std::optional<std::size_t> index_of(Permutation const &p) const
  {
    materialize();
    auto it = state_->index.find(p);
    if (it == state_->index.end())
      return std::nullopt;
    return it->second;
  }

  bool contains(Permutation const &p) const { return index_of(p).has_value(); }

  bool is_trivial() const
  {
    return std::all_of(gens_.begin(), gens_.end(),
                       [](auto const &g) { return g.is_identity(); });
  }

  /// Orbits of the natural action, each sorted, ordered by smallest point.
  std::vector<std::vector<point>> orbits() const
  {
    std::vector<std::vector<point>> result;
    std::vector<bool> seen(degree_, false);
    for (point start = 0; start < degree_; ++start) {
      if (seen[start])
        continue;
      std::vector<point> orbit{start};
      seen[start] = true;
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (auto const &g : gens_) {
          point img = g(orbit[i]);
          if (!seen[img]) {
            seen[img] = true;
            orbit.push_back(img);
          }
        }
      std::sort(orbit.begin(), orbit.end());
      result.push_back(std::move(orbit));
    }
    return result;
  }

  bool is_transitive() const { return degree_ <= 1 || orbits().size() == 1; }

private:
  struct State
  {
    std::size_t cap;
    std::once_flag once;
    std::vector<Permutation> elements;
    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  };

  PermGroup(std::size_t n, std::vector<Permutation> gens, std::size_t cap)
    : degree_(n), gens_(std::move(gens)), state_(std::make_shared<State>())
  {
    state_->cap = cap;
  }

  void materialize() const
  {
    std::call_once(state_->once, [this] {
      auto &elems = state_->elements;
      auto &index = state_->index;
      auto id = Permutation::identity(degree_);
      index.emplace(id, 0);
      elems.push_back(std::move(id));
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (auto const &g : gens_) {
          auto next = compose(g, elems[i]);
          if (index.contains(next))
            continue;
          if (elems.size() >= state_->cap) {
            elems.clear();
            index.clear();
            throw CapExceeded("group order exceeds cap of " +
                              std::to_string(state_->cap));
          }
          index.emplace(next, elems.size());
          elems.push_back(std::move(next));
        }
      }
    });
  }

  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::shared_ptr<State> state_;
};

/// Subgroup generated by `gens` inside Sym(n); tolerates an empty list.
inline PermGroup subgroup(std::size_t n, std::vector<Permutation> gens,
                          std::size_t order_cap = default_order_cap)
{
  if (gens.empty())
    return PermGroup::trivial(n);
  return PermGroup::generate(std::move(gens), order_cap);
}

/// Partition of {0,...,n-1}; blocks sorted internally and by smallest point.
struct BlockSystem
{
  std::size_t degree = 0;
  std::vector<std::vector<point>> blocks;

  std::size_t block_size() const
  {
    return blocks.empty() ? 0 : blocks.front().size();
  }

  /// block_of[i] = index of the block containing i.
  std::vector<std::size_t> block_index() const
  {
    std::vector<std::size_t> idx(degree);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (point i : blocks[b])
        idx[i] = b;
    return idx;
  }

  friend bool operator==(BlockSystem const &, BlockSystem const &) = default;
  friend auto operator<=>(BlockSystem const &, BlockSystem const &) = default;
};

namespace detail {

struct UnionFind
{
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n)
  {
    for (std::size_t i = 0; i < n; ++i)
      parent[i] = i;
  }

  std::size_t find(std::size_t x)
  {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b)
  {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (a < b)
      parent[b] = a;
    else
      parent[a] = b;
    return true;
  }

  /// Classes sorted internally and by smallest member.
  std::vector<std::vector<point>> classes()
  {
    std::vector<std::vector<point>> out;
    std::vector<std::size_t> slot(parent.size(), SIZE_MAX);
    for (std::size_t i = 0; i < parent.size(); ++i) {
      auto r = find(i);
      if (slot[r] == SIZE_MAX) {
        slot[r] = out.size();
        out.emplace_back();
      }
      out[slot[r]].push_back(static_cast<point>(i));
    }
    return out;
  }
};

/// Closes the partition held by uf under the action of the generators.
inline void close_under(UnionFind &uf, std::vector<Permutation> const &gens)
{
  auto const n = uf.parent.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto const &g : gens)
      for (std::size_t x = 0; x < n; ++x) {
        auto r = uf.find(x);
        if (uf.unite(g(static_cast<point>(x)), g(static_cast<point>(r))))
          changed = true;
      }
  }
}

inline bool refines(BlockSystem const &fine, BlockSystem const &coarse)
{
  auto idx = coarse.block_index();
  for (auto const &b : fine.blocks)
    for (point i : b)
      if (idx[i] != idx[b.front()])
        return false;
  return true;
}

} // namespace detail

/// Finest G-invariant partition in which all of `seed` lie in one block.
inline BlockSystem block_closure(PermGroup const &g,
                                 std::vector<point> const &seed)
{
  detail::UnionFind uf(g.degree());
  for (std::size_t i = 1; i < seed.size(); ++i)
    uf.unite(seed[0], seed[i]);
  detail::close_under(uf, g.generators());
  return BlockSystem{g.degree(), uf.classes()};
}

namespace detail {

inline void require_transitive(PermGroup const &g)
{
  if (!g.is_transitive())
    throw PreconditionFailed("block systems require a transitive group");
}

inline bool is_nontrivial(BlockSystem const &b)
{
  return b.blocks.size() > 1 && b.blocks.size() < b.degree;
}

} // namespace detail

/// Minimal nontrivial block systems of a transitive group: for each pair
/// {0, b} the finest system joining them, keeping those not strictly refined
/// by another.  Empty for primitive groups.
inline std::vector<BlockSystem> minimal_block_systems(PermGroup const &g)
{
  detail::require_transitive(g);
  std::set<BlockSystem> candidates;
  for (point b = 1; b < g.degree(); ++b) {
    auto sys = block_closure(g, {0, b});
    if (detail::is_nontrivial(sys))
      candidates.insert(std::move(sys));
  }
  std::vector<BlockSystem> result;
  for (auto const &c : candidates) {
    bool minimal = true;
    for (auto const &other : candidates)
      if (other != c && detail::refines(other, c)) {
        minimal = false;
        break;
      }
    if (minimal)
      result.push_back(c);
  }
  return result;
}

/// Every nontrivial block system of a transitive group, obtained as joins of
/// the pair-seeded systems.
inline std::vector<BlockSystem> block_systems(PermGroup const &g)
{
  detail::require_transitive(g);
  std::set<BlockSystem> found;
  std::vector<BlockSystem> frontier;
  for (point b = 1; b < g.degree(); ++b) {
    auto sys = block_closure(g, {0, b});
    if (found.insert(sys).second)
      frontier.push_back(std::move(sys));
  }
  std::vector<BlockSystem> principal(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<BlockSystem> next;
    for (auto const &a : frontier)
      for (auto const &p : principal) {
        detail::UnionFind uf(g.degree());
        for (auto const *sys : {&a, &p})
          for (auto const &blk : sys->blocks)
            for (point i : blk)
              uf.unite(blk.front(), i);
        BlockSystem joined{g.degree(), uf.classes()};
        if (found.insert(joined).second)
          next.push_back(std::move(joined));
      }
    frontier = std::move(next);
  }
  std::vector<BlockSystem> result;
  for (auto const &s : found)
    if (detail::is_nontrivial(s))
      result.push_back(s);
  return result;
}

/// The permutation induced by p on the blocks of a G-invariant system.
inline Permutation block_action(Permutation const &p, BlockSystem const &sys)
{
  auto idx = sys.block_index();
  std::vector<point> images(sys.blocks.size());
  for (std::size_t b = 0; b < sys.blocks.size(); ++b)
    images[b] = static_cast<point>(idx[p(sys.blocks[b].front())]);
  return Permutation(std::move(images));
}

inline Permutation commutator(Permutation const &a, Permutation const &b)
{
  return a.inverse() * b.inverse() * a * b;
}

/// Normal closure of ⟨gens⟩ inside g.
inline PermGroup normal_closure(PermGroup const &g,
                                std::vector<Permutation> gens)
{
  auto const n = g.degree();
  auto h = subgroup(n, gens, g.order_cap());
  bool grown = true;
  while (grown) {
    grown = false;
    auto const snapshot = gens;
    for (auto const &s : g.generators())
      for (auto const &u : snapshot) {
        auto conj = s.inverse() * u * s;
        if (!h.contains(conj)) {
          gens.push_back(conj);
          h = subgroup(n, gens, g.order_cap());
          grown = true;
        }
      }
  }
  return h;
}

struct LowerCentralSeries
{
  bool nilpotent = false;
  std::vector<PermGroup> terms; // G_1 = G, G_2 = [G, G], ...
};

/// G_{i+1} = [G, G_i], computed as the normal closure of the commutators of
/// generators; stops at the trivial group or when the series stabilizes.
inline LowerCentralSeries lower_central_series(PermGroup const &g)
{
  LowerCentralSeries series;
  series.terms.push_back(g);
  while (true) {
    auto const &current = series.terms.back();
    if (current.order() == 1) {
      series.nilpotent = true;
      return series;
    }
    std::vector<Permutation> comms;
    for (auto const &s : g.generators())
      for (auto const &u : current.generators()) {
        auto c = commutator(s, u);
        if (!c.is_identity())
          comms.push_back(std::move(c));
      }
    auto next = normal_closure(g, std::move(comms));
    if (next.order() == current.order()) {
      series.nilpotent = false;
      return series;
    }
    series.terms.push_back(std::move(next));
  }
}

inline bool is_nilpotent(PermGroup const &g)
{
  return lower_central_series(g).nilpotent;
}

} // namespace cycloid
