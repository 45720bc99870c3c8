#pragma once

// Shared fixtures and test-only oracles.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "cycloid/catalog.hpp"
#include "cycloid/cycle_set.hpp"
#include "cycloid/permutation.hpp"

namespace cycloid::testing {

inline Permutation cyc(std::size_t n, char const *text)
{
  return parse_cycles(text, n, 0);
}

/// Calls f on every set partition of {0,...,n-1} (restricted growth
/// strings).
inline void for_each_partition(
    std::size_t n, std::function<void(std::vector<std::vector<point>> const &)> f)
{
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                           std::size_t blocks) {
    if (i == n) {
      std::vector<std::vector<point>> parts(blocks);
      for (std::size_t k = 0; k < n; ++k)
        parts[rgs[k]].push_back(static_cast<point>(k));
      f(parts);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) {
    f({});
    return;
  }
  rgs[0] = 0;
  rec(1, 1);
}

/// Nilpotency oracle: a finite group is nilpotent iff every Sylow subgroup is
/// normal, i.e. for every prime p the p-elements number exactly |G|_p.
inline bool nilpotent_by_sylow(std::vector<Permutation> const &elements)
{
  auto const order = elements.size();
  std::map<std::uint64_t, std::size_t> p_elements;
  std::uint64_t m = order;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= m; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0)
        m /= p;
    }
  for (auto p : primes) {
    std::uint64_t part = 1, k = order;
    while (k % p == 0) {
      k /= p;
      part *= p;
    }
    std::size_t count = 0;
    for (auto const &g : elements) {
      auto o = g.order();
      while (o % p == 0)
        o /= p;
      if (o == 1)
        ++count;
    }
    if (count != part)
      return false;
  }
  return true;
}

/// Independent cycle set check: the three axioms by literal triple loops.
inline bool naive_is_cycle_set(std::size_t n, std::vector<point> const &t)
{
  auto at = [&](std::size_t x, std::size_t y) -> std::size_t {
    return t[x * n + y];
  };
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<int> count(n, 0);
    for (std::size_t y = 0; y < n; ++y) {
      if (at(x, y) >= n)
        return false;
      count[at(x, y)]++;
    }
    for (int c : count)
      if (c != 1)
        return false;
  }
  std::vector<int> diag(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    diag[at(x, x)]++;
  for (int c : diag)
    if (c != 1)
      return false;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (at(at(x, y), at(x, z)) != at(at(y, x), at(y, z)))
          return false;
  return true;
}

} // namespace cycloid::testing
