#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "number_theory.hpp"
#include "perm_group.hpp"
#include "permutation.hpp"

namespace cycloid {

using table_rows = std::vector<std::vector<point>>;

/// Why a table is not a non-degenerate cycle set.  For row failures x is the
/// row; for cycloid failures (x, y, z) is the first violated triple in
/// lexicographic order.
struct Rejection
{
  enum class Kind { shape, out_of_range, row_not_bijective, cycloid, degenerate };

  Kind kind;
  point x = 0, y = 0, z = 0;

  std::string message() const
  {
    switch (kind) {
    case Kind::shape:
      return "table is not square";
    case Kind::out_of_range:
      return "entry (" + std::to_string(x) + "," + std::to_string(y) +
             ") out of range";
    case Kind::row_not_bijective:
      return "row " + std::to_string(x) + " not bijective";
    case Kind::cycloid:
      return "cycloid equation fails at (" + std::to_string(x) + "," +
             std::to_string(y) + "," + std::to_string(z) + ")";
    case Kind::degenerate:
      return "squaring map not bijective (degenerate)";
    }
    return "invalid";
  }

  friend bool operator==(Rejection const &, Rejection const &) = default;
};

class InvalidCycleSet : public Error
{
public:
  explicit InvalidCycleSet(Rejection r) : Error(r.message()), rejection(r) {}
  Rejection rejection;
};

/// A finite non-degenerate cycle set: the table x·y = σ_x(y) with every σ_x
/// bijective, the cycloid equation (x·y)·(x·z) = (y·x)·(y·z), and the squaring
/// map x ↦ x·x bijective.  Immutable once built.
class CycleSet
{
public:
  CycleSet() = default;

  /// Checks every axiom and throws InvalidCycleSet naming the first failure.
  static CycleSet validate(table_rows const &rows)
  {
    auto flat = flatten(rows);
    if (auto r = check(rows.size(), flat))
      throw InvalidCycleSet(*r);
    return CycleSet(rows.size(), std::move(flat));
  }

  static CycleSet validate(std::size_t n, std::vector<point> flat)
  {
    if (flat.size() != n * n)
      throw InvalidCycleSet({Rejection::Kind::shape});
    if (auto r = check(n, flat))
      throw InvalidCycleSet(*r);
    return CycleSet(n, std::move(flat));
  }

  /// Builds without checking.  Meant for trusted pipelines (the enumerator)
  /// and for synthetic fixtures that deliberately break the axioms.
  static CycleSet from_table_unchecked(std::size_t n, std::vector<point> flat)
  {
    return CycleSet(n, std::move(flat));
  }

  static CycleSet from_rows_unchecked(table_rows const &rows)
  {
    return CycleSet(rows.size(), flatten(rows));
  }

  /// Validation on a flat row-major table; nullopt means valid.
  static std::optional<Rejection> check(std::size_t n,
                                        std::span<point const> t)
  {
    using K = Rejection::Kind;
    if (t.size() != n * n)
      return Rejection{K::shape};
    for (point x = 0; x < n; ++x)
      for (point y = 0; y < n; ++y)
        if (t[x * n + y] >= n)
          return Rejection{K::out_of_range, x, y};

    std::vector<bool> seen(n);
    for (point x = 0; x < n; ++x) {
      std::fill(seen.begin(), seen.end(), false);
      for (point y = 0; y < n; ++y) {
        if (seen[t[x * n + y]])
          return Rejection{K::row_not_bijective, x};
        seen[t[x * n + y]] = true;
      }
    }

    for (point x = 0; x < n; ++x)
      for (point y = 0; y < n; ++y) {
        auto xy = t[x * n + y], yx = t[y * n + x];
        for (point z = 0; z < n; ++z)
          if (t[xy * n + t[x * n + z]] != t[yx * n + t[y * n + z]])
            return Rejection{K::cycloid, x, y, z};
      }

    std::fill(seen.begin(), seen.end(), false);
    for (point x = 0; x < n; ++x) {
      if (seen[t[x * n + x]])
        return Rejection{K::degenerate, x};
      seen[t[x * n + x]] = true;
    }
    return std::nullopt;
  }

  std::size_t size() const { return n_; }

  /// x·y
  point operator()(point x, point y) const { return table_[x * n_ + y]; }

  std::span<point const> row(point x) const
  {
    return std::span<point const>(table_).subspan(x * n_, n_);
  }

  Permutation sigma(point x) const
  {
    auto r = row(x);
    return Permutation::from_images_unchecked({r.begin(), r.end()});
  }

  std::vector<Permutation> sigmas() const
  {
    std::vector<Permutation> out;
    out.reserve(n_);
    for (point x = 0; x < n_; ++x)
      out.push_back(sigma(x));
    return out;
  }

  std::vector<point> const &flat() const { return table_; }

  table_rows rows() const
  {
    table_rows out(n_);
    for (point x = 0; x < n_; ++x) {
      auto r = row(x);
      out[x].assign(r.begin(), r.end());
    }
    return out;
  }

  friend bool operator==(CycleSet const &, CycleSet const &) = default;
  friend auto operator<=>(CycleSet const &, CycleSet const &) = default;

private:
  CycleSet(std::size_t n, std::vector<point> flat)
    : n_(n), table_(std::move(flat))
  {}

  static std::vector<point> flatten(table_rows const &rows)
  {
    std::vector<point> flat;
    flat.reserve(rows.size() * rows.size());
    for (auto const &r : rows) {
      if (r.size() != rows.size())
        throw InvalidCycleSet({Rejection::Kind::shape});
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return flat;
  }

  std::size_t n_ = 0;
  std::vector<point> table_;
};

/// x·y = γ(y) for every x.
inline CycleSet trivial_from(Permutation const &gamma)
{
  auto const n = gamma.degree();
  std::vector<point> flat;
  flat.reserve(n * n);
  for (std::size_t x = 0; x < n; ++x)
    flat.insert(flat.end(), gamma.images().begin(), gamma.images().end());
  return CycleSet::from_table_unchecked(n, std::move(flat));
}

/// (x, y) * (z, t) = (x·z, y•t), with the pair (i, j) stored at i·|b| + j.
inline CycleSet direct_product(CycleSet const &a, CycleSet const &b)
{
  auto const na = a.size(), nb = b.size(), n = na * nb;
  std::vector<point> flat(n * n);
  for (point x = 0; x < na; ++x)
    for (point y = 0; y < nb; ++y)
      for (point z = 0; z < na; ++z)
        for (point t = 0; t < nb; ++t)
          flat[(x * nb + y) * n + (z * nb + t)] =
              static_cast<point>(a(x, z) * nb + b(y, t));
  return CycleSet::from_table_unchecked(n, std::move(flat));
}

/// T(x) = x·x.  Only a permutation on non-degenerate input.
inline Permutation squaring_map(CycleSet const &X)
{
  std::vector<point> images(X.size());
  for (point x = 0; x < X.size(); ++x)
    images[x] = X(x, x);
  return Permutation::from_images_unchecked(std::move(images));
}

inline std::vector<point> fix_set(CycleSet const &X)
{
  std::vector<point> fixed;
  for (point x = 0; x < X.size(); ++x)
    if (X(x, x) == x)
      fixed.push_back(x);
  return fixed;
}

/// G(X) = ⟨σ_x⟩.
inline PermGroup perm_group(CycleSet const &X,
                            std::size_t order_cap = default_order_cap)
{
  if (X.size() == 0)
    return PermGroup::trivial(0);
  auto gens = X.sigmas();
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return PermGroup::generate(std::move(gens), order_cap);
}

/// Dis(X) = ⟨σ_x σ_y^{-1}⟩.
inline PermGroup disp_group(CycleSet const &X,
                            std::size_t order_cap = default_order_cap)
{
  auto sig = X.sigmas();
  std::sort(sig.begin(), sig.end());
  sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
  std::vector<Permutation> gens;
  for (auto const &a : sig)
    for (auto const &b : sig) {
      auto g = a * b.inverse();
      if (!g.is_identity())
        gens.push_back(std::move(g));
    }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return subgroup(X.size(), std::move(gens), order_cap);
}

struct Decomposition
{
  bool decomposable = false;
  std::vector<std::vector<point>> parts; // G(X)-orbits
};

/// Decomposable iff G(X) has at least two orbits; the orbits witness it.
inline Decomposition decompose(CycleSet const &X)
{
  if (X.size() == 0)
    return {};
  auto parts = perm_group(X).orbits();
  bool const dec = parts.size() > 1;
  return {dec, std::move(parts)};
}

inline bool is_decomposable(CycleSet const &X)
{
  return decompose(X).decomposable;
}

inline bool is_indecomposable(CycleSet const &X) { return !is_decomposable(X); }

/// A cycle set together with the projection from its source.
struct Quotient
{
  CycleSet set;
  std::vector<point> projection; // source point -> class label
};

/// Quotient by x ~ y iff σ_x = σ_y.  Classes are labeled by smallest member.
inline Quotient retraction(CycleSet const &X)
{
  auto const n = X.size();
  std::vector<point> label(n);
  std::vector<point> reps;
  for (point x = 0; x < n; ++x) {
    auto it = std::find_if(reps.begin(), reps.end(), [&](point r) {
      return std::equal(X.row(r).begin(), X.row(r).end(), X.row(x).begin());
    });
    if (it == reps.end()) {
      label[x] = static_cast<point>(reps.size());
      reps.push_back(x);
    } else {
      label[x] = static_cast<point>(it - reps.begin());
    }
  }
  auto const m = reps.size();
  std::vector<point> flat(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      flat[a * m + b] = label[X(reps[a], reps[b])];
  return {CycleSet::from_table_unchecked(m, std::move(flat)), std::move(label)};
}

inline bool is_irretractable(CycleSet const &X)
{
  return retraction(X).set.size() == X.size();
}

/// The k-cabled operation: x·_1 y = x·y and
/// x·_k y = (x·_{k-1} x)·(x·_{k-1} y).
inline CycleSet cabling(CycleSet const &X, std::uint64_t k)
{
  if (k == 0)
    throw PreconditionFailed("cabling: k must be positive");
  auto const n = X.size();
  std::vector<point> current = X.flat();
  for (std::uint64_t step = 2; step <= k; ++step) {
    std::vector<point> next(n * n);
    for (point x = 0; x < n; ++x) {
      point xx = current[x * n + x];
      for (point y = 0; y < n; ++y)
        next[x * n + y] = X(xx, current[x * n + y]);
    }
    current = std::move(next);
  }
  return CycleSet::from_table_unchecked(n, std::move(current));
}

/// Ω_1(x1) = x1,
/// Ω_d(x1..xd) = Ω_{d-1}(x1..x_{d-1}) · Ω_{d-1}(x1..x_{d-2}, x_d).
inline point omega(CycleSet const &X, std::span<point const> args)
{
  if (args.empty())
    throw PreconditionFailed("omega: needs at least one argument");
  if (args.size() == 1)
    return args[0];
  auto const d = args.size();
  std::vector<point> tail(args.begin(), args.end() - 2);
  tail.push_back(args[d - 1]);
  return X(omega(X, args.first(d - 1)), omega(X, tail));
}

/// Smallest d >= 1 with Ω_{d+1}(x,...,x,y) = y for all x, y.  Uses the
/// unrolled form Ω_{d+1}(x,..,x,y) = σ_{T^{d-1}x} ⋯ σ_{Tx} σ_x (y).  The
/// search gives up after `cap` steps (default |G(X)|, which always
/// suffices).
inline std::uint64_t dehornoy_class(CycleSet const &X,
                                    std::optional<std::uint64_t> cap = {})
{
  auto const n = X.size();
  if (n == 0)
    return 1;
  std::uint64_t const limit = cap ? *cap : perm_group(X).order();
  auto T = squaring_map(X);
  std::vector<Permutation> run(n); // run[x] = σ_{T^{d-1}x} ⋯ σ_x
  std::vector<point> head(n);      // head[x] = T^{d-1} x
  for (point x = 0; x < n; ++x) {
    run[x] = X.sigma(x);
    head[x] = x;
  }
  for (std::uint64_t d = 1; d <= limit; ++d) {
    bool all_identity = std::all_of(run.begin(), run.end(),
                                    [](auto const &p) { return p.is_identity(); });
    if (all_identity)
      return d;
    for (point x = 0; x < n; ++x) {
      head[x] = T(head[x]);
      run[x] = X.sigma(head[x]) * run[x];
    }
  }
  throw CapExceeded("dehornoy_class: no class found up to " +
                    std::to_string(limit));
}

/// Every column map x ↦ x·y is bijective as well.
inline bool is_latin(CycleSet const &X)
{
  auto const n = X.size();
  std::vector<bool> seen(n);
  for (point y = 0; y < n; ++y) {
    std::fill(seen.begin(), seen.end(), false);
    for (point x = 0; x < n; ++x) {
      if (seen[X(x, y)])
        return false;
      seen[X(x, y)] = true;
    }
  }
  return true;
}

/// π(|X|) = π(|G(X)|).
inline bool is_pi_type(CycleSet const &X)
{
  return prime_support(X.size()) == prime_support(perm_group(X).order());
}

/// (x, y) ↦ (x·y, y·x) is a bijection of X × X.
inline bool map_m_is_bijective(CycleSet const &X)
{
  auto const n = X.size();
  std::vector<bool> hit(n * n, false);
  for (point x = 0; x < n; ++x)
    for (point y = 0; y < n; ++y) {
      auto code = X(x, y) * n + X(y, x);
      if (hit[code])
        return false;
      hit[code] = true;
    }
  return true;
}

/// The isomorphic copy with every point x renamed to perm(x).
inline CycleSet relabel(CycleSet const &X, Permutation const &perm)
{
  auto const n = X.size();
  if (perm.degree() != n)
    throw DegreeMismatch(n, perm.degree());
  std::vector<point> flat(n * n);
  for (point x = 0; x < n; ++x)
    for (point y = 0; y < n; ++y)
      flat[perm(x) * n + perm(y)] = perm(X(x, y));
  return CycleSet::from_table_unchecked(n, std::move(flat));
}

/// True iff `map` is a homomorphism X -> Y, i.e. map(x·y) = map(x)·map(y).
inline bool is_homomorphism(CycleSet const &X, CycleSet const &Y,
                            std::span<point const> map)
{
  for (point x = 0; x < X.size(); ++x)
    for (point y = 0; y < X.size(); ++y)
      if (map[X(x, y)] != Y(map[x], map[y]))
        return false;
  return true;
}

} // namespace cycloid
