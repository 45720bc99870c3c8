#pragma once

// Named small objects used by the CLI, the samples and the tests.

#include "cycle_set.hpp"
#include "permutation.hpp"

namespace cycloid {

/// The size-2 indecomposable cycle set: σ_0 = σ_1 = (0 1).
inline CycleSet two_cycle()
{
  return CycleSet::validate({{1, 0}, {1, 0}});
}

/// x·y = y + 1 mod n.
inline CycleSet cyclic(std::size_t n)
{
  std::vector<point> img(n);
  for (point i = 0; i < n; ++i)
    img[i] = static_cast<point>((i + 1) % n);
  return trivial_from(Permutation(img));
}

/// Twelve points, σ_0 = σ_1 = (0 1) and σ_x = (2 3 4) otherwise.
inline CycleSet twelve_point_example()
{
  auto a = parse_cycles("(0 1)", 12), b = parse_cycles("(2 3 4)", 12);
  table_rows rows;
  for (point x = 0; x < 12; ++x) {
    auto const &s = x < 2 ? a : b;
    rows.emplace_back(s.images().begin(), s.images().end());
  }
  return CycleSet::validate(rows);
}

/// Seventy-two points, every σ_x = (0 1)(2 3 4).
inline CycleSet seventy_two_point_example()
{
  return trivial_from(parse_cycles("(0 1)(2 3 4)", 72));
}

} // namespace cycloid
