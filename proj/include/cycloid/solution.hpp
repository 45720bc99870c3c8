#pragma once

#include <array>
#include <utility>
#include <vector>

#include "cycle_set.hpp"

namespace cycloid {

/// The involutive solution r(x, y) = (λ_x(y), ρ_y(x)) attached to a cycle set
/// by λ_x = σ_x^{-1} and ρ_y(x) = σ_{λ_x(y)}(x).
struct SolutionPair
{
  std::size_t n = 0;
  std::vector<Permutation> lambda;
  std::vector<std::vector<point>> rho; // rho[y][x]

  std::pair<point, point> operator()(point x, point y) const
  {
    return {lambda[x](y), rho[y][x]};
  }
};

inline SolutionPair to_solution(CycleSet const &X)
{
  auto const n = X.size();
  SolutionPair s;
  s.n = n;
  s.lambda.reserve(n);
  for (point x = 0; x < n; ++x)
    s.lambda.push_back(X.sigma(x).inverse());
  s.rho.assign(n, std::vector<point>(n));
  for (point x = 0; x < n; ++x)
    for (point y = 0; y < n; ++y) {
      point u = s.lambda[x](y);
      s.rho[y][x] = X(u, x);
    }
  return s;
}

/// Inverse of to_solution: σ_x = λ_x^{-1}.
inline CycleSet from_solution(SolutionPair const &s)
{
  std::vector<point> flat;
  flat.reserve(s.n * s.n);
  for (auto const &l : s.lambda) {
    auto sig = l.inverse();
    flat.insert(flat.end(), sig.images().begin(), sig.images().end());
  }
  return CycleSet::from_table_unchecked(s.n, std::move(flat));
}

/// r ∘ r = id on all pairs.
inline bool is_involutive(SolutionPair const &s)
{
  for (point x = 0; x < s.n; ++x)
    for (point y = 0; y < s.n; ++y) {
      auto [u, v] = s(x, y);
      if (s(u, v) != std::pair{x, y})
        return false;
    }
  return true;
}

/// (r×id)(id×r)(r×id) = (id×r)(r×id)(id×r) on all triples.
inline bool satisfies_braid_relation(SolutionPair const &s)
{
  using triple = std::array<point, 3>;
  auto r12 = [&](triple t) {
    auto [a, b] = s(t[0], t[1]);
    return triple{a, b, t[2]};
  };
  auto r23 = [&](triple t) {
    auto [b, c] = s(t[1], t[2]);
    return triple{t[0], b, c};
  };
  for (point x = 0; x < s.n; ++x)
    for (point y = 0; y < s.n; ++y)
      for (point z = 0; z < s.n; ++z) {
        triple t{x, y, z};
        if (r12(r23(r12(t))) != r23(r12(r23(t))))
          return false;
      }
  return true;
}

/// λ_x and ρ_y are all bijective.
inline bool is_nondegenerate(SolutionPair const &s)
{
  std::vector<bool> seen(s.n);
  for (auto const &r : s.rho) {
    std::fill(seen.begin(), seen.end(), false);
    for (point v : r) {
      if (seen[v])
        return false;
      seen[v] = true;
    }
  }
  return true;
}

} // namespace cycloid
