#pragma once

#include <set>
#include <stop_token>
#include <vector>

#include "cycle_set.hpp"

namespace cycloid {

inline constexpr std::size_t default_congruence_bound = 16;

/// An equivalence relation on the points of a cycle set, stored as its
/// classes (each sorted, ordered by smallest member).
struct Congruence
{
  std::vector<std::vector<point>> classes;

  std::size_t degree() const
  {
    std::size_t n = 0;
    for (auto const &c : classes)
      n += c.size();
    return n;
  }

  std::vector<point> labels() const
  {
    std::vector<point> lab(degree());
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (point x : classes[i])
        lab[x] = static_cast<point>(i);
    return lab;
  }

  bool is_discrete() const { return classes.size() == degree(); }
  bool is_total() const { return classes.size() <= 1; }

  static Congruence discrete(std::size_t n)
  {
    Congruence c;
    for (point x = 0; x < n; ++x)
      c.classes.push_back({x});
    return c;
  }

  static Congruence total(std::size_t n)
  {
    Congruence c;
    if (n > 0) {
      c.classes.emplace_back(n);
      std::iota(c.classes[0].begin(), c.classes[0].end(), point{0});
    }
    return c;
  }

  /// Normalizes an arbitrary partition (sorting classes and members).
  static Congruence from_partition(std::vector<std::vector<point>> parts)
  {
    for (auto &p : parts)
      std::sort(p.begin(), p.end());
    std::erase_if(parts, [](auto const &p) { return p.empty(); });
    std::sort(parts.begin(), parts.end());
    return Congruence{std::move(parts)};
  }

  friend bool operator==(Congruence const &, Congruence const &) = default;
  friend auto operator<=>(Congruence const &, Congruence const &) = default;
};

/// x ~ y and x' ~ y' imply x·x' ~ y·y'.
inline bool is_compatible(CycleSet const &X, Congruence const &c)
{
  auto const n = X.size();
  if (c.degree() != n)
    return false;
  auto lab = c.labels();
  for (auto const &cls : c.classes)
    for (std::size_t i = 1; i < cls.size(); ++i) {
      point a = cls[0], b = cls[i];
      for (point z = 0; z < n; ++z)
        if (lab[X(a, z)] != lab[X(b, z)] || lab[X(z, a)] != lab[X(z, b)])
          return false;
    }
  return true;
}

namespace detail {

inline Congruence close_congruence(CycleSet const &X, UnionFind &uf)
{
  auto const n = X.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (point x = 0; x < n; ++x) {
      auto r = static_cast<point>(uf.find(x));
      if (r == x)
        continue;
      for (point z = 0; z < n; ++z) {
        changed |= uf.unite(X(x, z), X(r, z));
        changed |= uf.unite(X(z, x), X(z, r));
      }
    }
  }
  return Congruence{uf.classes()};
}

} // namespace detail

/// The smallest congruence identifying a and b.
inline Congruence principal_congruence(CycleSet const &X, point a, point b)
{
  detail::UnionFind uf(X.size());
  uf.unite(a, b);
  return detail::close_congruence(X, uf);
}

/// Smallest congruence containing both.
inline Congruence join(CycleSet const &X, Congruence const &a,
                       Congruence const &b)
{
  detail::UnionFind uf(X.size());
  for (auto const *c : {&a, &b})
    for (auto const &cls : c->classes)
      for (point x : cls)
        uf.unite(cls.front(), x);
  return detail::close_congruence(X, uf);
}

/// All congruences, generated as joins of principal congruences rather than
/// by scanning set partitions.  Sorted; includes both trivial ones.
inline std::vector<Congruence>
congruences(CycleSet const &X, std::size_t bound = default_congruence_bound,
            std::stop_token stop = {})
{
  auto const n = X.size();
  if (n > bound)
    throw CapExceeded("congruences: size " + std::to_string(n) +
                      " exceeds bound " + std::to_string(bound));
  std::set<Congruence> found{Congruence::discrete(n)};
  std::vector<Congruence> principal;
  for (point a = 0; a < n; ++a)
    for (point b = a + 1; b < n; ++b) {
      auto c = principal_congruence(X, a, b);
      if (found.insert(c).second)
        principal.push_back(std::move(c));
    }
  std::vector<Congruence> frontier = principal;
  while (!frontier.empty()) {
    if (stop.stop_requested())
      throw Cancelled();
    std::vector<Congruence> next;
    for (auto const &f : frontier)
      for (auto const &p : principal) {
        auto j = join(X, f, p);
        if (found.insert(j).second)
          next.push_back(std::move(j));
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

/// Only the discrete and the total congruence exist.  Every nontrivial
/// congruence contains a principal one, so pairs suffice.
inline bool is_simple(CycleSet const &X)
{
  auto const n = X.size();
  for (point a = 0; a < n; ++a)
    for (point b = a + 1; b < n; ++b)
      if (!principal_congruence(X, a, b).is_total())
        return false;
  return true;
}

/// X / c with classes labeled in order of their smallest member.
inline Quotient quotient(CycleSet const &X, Congruence const &c)
{
  if (!is_compatible(X, c))
    throw PreconditionFailed("quotient: partition is not a congruence");
  auto norm = Congruence::from_partition(c.classes);
  auto lab = norm.labels();
  auto const m = norm.classes.size();
  std::vector<point> flat(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      flat[a * m + b] = lab[X(norm.classes[a][0], norm.classes[b][0])];
  return {CycleSet::from_table_unchecked(m, std::move(flat)), std::move(lab)};
}

/// The congruence whose classes are the fibers of σ, i.e. the retract
/// relation.
inline Congruence retract_congruence(CycleSet const &X)
{
  auto r = retraction(X);
  std::vector<std::vector<point>> parts(r.set.size());
  for (point x = 0; x < X.size(); ++x)
    parts[r.projection[x]].push_back(x);
  return Congruence::from_partition(std::move(parts));
}

} // namespace cycloid
