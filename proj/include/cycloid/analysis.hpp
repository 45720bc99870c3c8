#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "congruence.hpp"
#include "cycle_set.hpp"
#include "number_theory.hpp"
#include "perm_group.hpp"

namespace cycloid {

/// Per-object invariants gathered in one pass.
struct AnalysisReport
{
  std::size_t size = 0;
  Permutation squaring;
  std::vector<std::size_t> squaring_cycle_type;
  std::vector<point> fix;
  bool decomposable = false;
  std::vector<std::vector<point>> decomposition; // G(X)-orbits when decomposable
  bool latin = false;
  bool simple = false;
  bool retractable = false;
  std::size_t retraction_size = 0;
  std::optional<std::uint64_t> dehornoy_class; // nullopt: search cap hit
  std::uint64_t group_order = 0;
  std::uint64_t disp_order = 0;
  bool group_nilpotent = false;
  bool disp_nilpotent = false;
  bool pi_type = false;
};

inline AnalysisReport analyze(CycleSet const &X)
{
  AnalysisReport r;
  r.size = X.size();
  r.squaring = squaring_map(X);
  r.squaring_cycle_type = cycle_type(r.squaring);
  r.fix = fix_set(X);
  auto d = decompose(X);
  r.decomposable = d.decomposable;
  if (d.decomposable)
    r.decomposition = d.parts;
  r.latin = is_latin(X);
  r.simple = is_simple(X);
  r.retraction_size = retraction(X).set.size();
  r.retractable = r.retraction_size != X.size();
  auto G = perm_group(X);
  auto D = disp_group(X);
  r.group_order = G.order();
  r.disp_order = D.order();
  r.group_nilpotent = is_nilpotent(G);
  r.disp_nilpotent = is_nilpotent(D);
  r.pi_type = r.size > 0 &&
              prime_support(r.size) == prime_support(r.group_order);
  try {
    r.dehornoy_class = dehornoy_class(X, r.group_order);
  } catch (CapExceeded const &) {
    r.dehornoy_class = std::nullopt;
  }
  return r;
}

} // namespace cycloid
