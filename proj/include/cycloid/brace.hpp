#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cycle_set.hpp"
#include "errors.hpp"
#include "perm_group.hpp"
#include "permutation.hpp"

namespace cycloid {

using element = std::uint32_t;
using brace_rows = std::vector<std::vector<element>>;

/// First failure found by validate_brace.  (x, y, z) is the offending
/// triple (or pair) where one exists.
struct BraceRejection
{
  enum class Kind { shape, out_of_range, not_abelian_group, not_group, axiom };

  Kind kind;
  element x = 0, y = 0, z = 0;
  std::string detail;

  std::string message() const
  {
    auto triple = "(" + std::to_string(x) + "," + std::to_string(y) + "," +
                  std::to_string(z) + ")";
    switch (kind) {
    case Kind::shape:
      return "tables are not n×n";
    case Kind::out_of_range:
      return "entry out of range";
    case Kind::not_abelian_group:
      return "(B,+) is not an abelian group: " + detail;
    case Kind::not_group:
      return "(B,∘) is not a group: " + detail;
    case Kind::axiom:
      return "brace axiom fails at " + triple;
    }
    return "invalid";
  }
};

class InvalidBrace : public Error
{
public:
  explicit InvalidBrace(BraceRejection r)
    : Error(r.message()), rejection(std::move(r))
  {}
  BraceRejection rejection;
};

/// A finite left brace stored as tables.  Elements are 0..n-1; `zero` is the
/// common identity of + and ∘.
struct LeftBrace
{
  std::size_t n = 0;
  element zero = 0;
  std::vector<element> add;  // row-major, add[a*n+b] = a+b
  std::vector<element> circ; // circ[a*n+b] = a∘b
  std::vector<element> neg;  // -a
  std::vector<element> inv;  // a⁻

  element plus(element a, element b) const { return add[a * n + b]; }
  element times(element a, element b) const { return circ[a * n + b]; }

  brace_rows add_rows() const { return rows_of(add); }
  brace_rows circ_rows() const { return rows_of(circ); }

  friend bool operator==(LeftBrace const &, LeftBrace const &) = default;

private:
  brace_rows rows_of(std::vector<element> const &t) const
  {
    brace_rows r(n);
    for (std::size_t a = 0; a < n; ++a)
      r[a].assign(t.begin() + a * n, t.begin() + (a + 1) * n);
    return r;
  }
};

namespace detail {

/// Checks that t is a group table; returns the identity or a description of
/// the failure.
inline std::optional<std::string> group_failure(std::size_t n,
                                                std::vector<element> const &t,
                                                element &identity,
                                                element &bx, element &by,
                                                element &bz)
{
  auto at = [&](std::size_t a, std::size_t b) { return t[a * n + b]; };
  std::optional<element> e;
  for (element c = 0; c < n && !e; ++c) {
    bool ok = true;
    for (element a = 0; a < n && ok; ++a)
      ok = at(c, a) == a && at(a, c) == a;
    if (ok)
      e = c;
  }
  if (!e)
    return "no identity";
  identity = *e;
  for (element a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (element b = 0; b < n && !has_inverse; ++b)
      has_inverse = at(a, b) == *e && at(b, a) == *e;
    if (!has_inverse) {
      bx = a;
      return "element " + std::to_string(a) + " has no inverse";
    }
  }
  for (element a = 0; a < n; ++a)
    for (element b = 0; b < n; ++b)
      for (element c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c))) {
          bx = a, by = b, bz = c;
          return "not associative at (" + std::to_string(a) + "," +
                 std::to_string(b) + "," + std::to_string(c) + ")";
        }
  return std::nullopt;
}

inline std::vector<element> flatten_brace(brace_rows const &rows)
{
  std::vector<element> flat;
  for (auto const &r : rows)
    flat.insert(flat.end(), r.begin(), r.end());
  return flat;
}

} // namespace detail

/// Exhaustive check of every brace axiom; nullopt means valid.
inline std::optional<BraceRejection> check_brace(std::size_t n,
                                                 std::vector<element> const &add,
                                                 std::vector<element> const &circ)
{
  using K = BraceRejection::Kind;
  if (n == 0 || add.size() != n * n || circ.size() != n * n)
    return BraceRejection{K::shape, 0, 0, 0, {}};
  for (std::size_t i = 0; i < n * n; ++i)
    if (add[i] >= n || circ[i] >= n)
      return BraceRejection{K::out_of_range, static_cast<element>(i / n),
                            static_cast<element>(i % n), 0, {}};

  element zero = 0, one = 0, x = 0, y = 0, z = 0;
  if (auto f = detail::group_failure(n, add, zero, x, y, z))
    return BraceRejection{K::not_abelian_group, x, y, z, *f};
  for (element a = 0; a < n; ++a)
    for (element b = 0; b < a; ++b)
      if (add[a * n + b] != add[b * n + a])
        return BraceRejection{K::not_abelian_group, a, b, 0,
                              "not commutative"};
  if (auto f = detail::group_failure(n, circ, one, x, y, z))
    return BraceRejection{K::not_group, x, y, z, *f};

  auto plus = [&](element a, element b) { return add[a * n + b]; };
  auto times = [&](element a, element b) { return circ[a * n + b]; };
  for (element a = 0; a < n; ++a)
    for (element b = 0; b < n; ++b)
      for (element c = 0; c < n; ++c)
        if (plus(times(a, plus(b, c)), a) != plus(times(a, b), times(a, c)))
          return BraceRejection{K::axiom, a, b, c, {}};
  return std::nullopt;
}

/// Builds a brace from tables, checking every axiom.  Throws InvalidBrace.
inline LeftBrace validate_brace(std::size_t n, std::vector<element> add,
                                std::vector<element> circ)
{
  if (auto r = check_brace(n, add, circ))
    throw InvalidBrace(*r);
  LeftBrace B;
  B.n = n;
  B.add = std::move(add);
  B.circ = std::move(circ);
  for (element c = 0; c < n; ++c)
    if (B.plus(c, c) == c)
      B.zero = c;
  B.neg.resize(n);
  B.inv.resize(n);
  for (element a = 0; a < n; ++a)
    for (element b = 0; b < n; ++b) {
      if (B.plus(a, b) == B.zero)
        B.neg[a] = b;
      if (B.times(a, b) == B.zero)
        B.inv[a] = b;
    }
  return B;
}

inline LeftBrace validate_brace(brace_rows const &add, brace_rows const &circ)
{
  return validate_brace(add.size(), detail::flatten_brace(add),
                        detail::flatten_brace(circ));
}

/// Tables from two binary functions on 0..n-1, then validated.
template <class Add, class Circ>
LeftBrace brace_from_operations(std::size_t n, Add add, Circ circ)
{
  std::vector<element> a(n * n), c(n * n);
  for (element x = 0; x < n; ++x)
    for (element y = 0; y < n; ++y) {
      a[x * n + y] = static_cast<element>(add(x, y));
      c[x * n + y] = static_cast<element>(circ(x, y));
    }
  return validate_brace(n, std::move(a), std::move(c));
}

/// The trivial brace on Z/n (x∘y = x+y).
inline LeftBrace trivial_cyclic_brace(std::size_t n)
{
  return brace_from_operations(
      n, [n](element x, element y) { return (x + y) % n; },
      [n](element x, element y) { return (x + y) % n; });
}

/// Z/p² with x∘y = x + y + p·x·y.
inline LeftBrace cyclic_p_squared_brace(std::uint64_t p)
{
  auto const m = p * p;
  return brace_from_operations(
      m, [m](std::uint64_t x, std::uint64_t y) { return (x + y) % m; },
      [m, p](std::uint64_t x, std::uint64_t y) {
        return (x + y + p * x * y) % m;
      });
}

/// λ_x(y) = -x + x∘y.
inline Permutation lambda_of(LeftBrace const &B, element x)
{
  std::vector<point> img(B.n);
  for (element y = 0; y < B.n; ++y)
    img[y] = B.plus(B.neg[x], B.times(x, y));
  return Permutation(std::move(img));
}

inline std::vector<Permutation> lambda_maps(LeftBrace const &B)
{
  std::vector<Permutation> out;
  out.reserve(B.n);
  for (element x = 0; x < B.n; ++x)
    out.push_back(lambda_of(B, x));
  return out;
}

/// Kernel of x ↦ λ_x, ascending.
inline std::vector<element> socle(LeftBrace const &B)
{
  std::vector<element> out;
  for (element x = 0; x < B.n; ++x)
    if (lambda_of(B, x).is_identity())
      out.push_back(x);
  return out;
}

namespace detail {

inline std::vector<bool> membership(std::size_t n,
                                    std::vector<element> const &S)
{
  std::vector<bool> in(n, false);
  for (auto s : S)
    if (s < n)
      in[s] = true;
  return in;
}

inline bool is_mult_subgroup(LeftBrace const &B, std::vector<bool> const &in)
{
  if (!in[B.zero])
    return false;
  for (element a = 0; a < B.n; ++a)
    for (element b = 0; b < B.n; ++b)
      if (in[a] && in[b] && !in[B.times(a, b)])
        return false;
  return true;
}

} // namespace detail

/// Multiplicative subgroup closed under every λ_x.
inline bool is_left_ideal(LeftBrace const &B, std::vector<element> const &S)
{
  auto in = detail::membership(B.n, S);
  if (!detail::is_mult_subgroup(B, in))
    return false;
  for (element x = 0; x < B.n; ++x) {
    auto l = lambda_of(B, x);
    for (element s = 0; s < B.n; ++s)
      if (in[s] && !in[l(s)])
        return false;
  }
  return true;
}

/// Left ideal that is also normal in (B,∘).
inline bool is_ideal(LeftBrace const &B, std::vector<element> const &S)
{
  if (!is_left_ideal(B, S))
    return false;
  auto in = detail::membership(B.n, S);
  for (element g = 0; g < B.n; ++g)
    for (element s = 0; s < B.n; ++s)
      if (in[s] && !in[B.times(B.times(g, s), B.inv[g])])
        return false;
  return true;
}

inline std::uint64_t additive_order(LeftBrace const &B, element b)
{
  std::uint64_t k = 1;
  for (element c = b; c != B.zero; c = B.plus(c, b))
    ++k;
  return k;
}

inline std::uint64_t multiplicative_order(LeftBrace const &B, element b)
{
  std::uint64_t k = 1;
  for (element c = b; c != B.zero; c = B.times(c, b))
    ++k;
  return k;
}

inline std::uint64_t additive_exponent(LeftBrace const &B)
{
  std::uint64_t e = 1;
  for (element b = 0; b < B.n; ++b)
    e = std::lcm(e, additive_order(B, b));
  return e;
}

/// k·b in (B,+); k = 0 gives zero.
inline element additive_multiple(LeftBrace const &B, element b,
                                 std::uint64_t k)
{
  element acc = B.zero;
  for (std::uint64_t i = 0; i < k % additive_order(B, b); ++i)
    acc = B.plus(acc, b);
  return acc;
}

/// {k·b : b ∈ B}, ascending.
inline std::vector<element> multiple_set(LeftBrace const &B, std::uint64_t k)
{
  std::set<element> s;
  for (element b = 0; b < B.n; ++b)
    s.insert(additive_multiple(B, b, k));
  return {s.begin(), s.end()};
}

/// Subgroup of (B,+) generated by S, as a membership mask.
inline std::vector<bool> additive_span(LeftBrace const &B,
                                       std::vector<element> const &S)
{
  std::vector<bool> in(B.n, false);
  std::vector<element> reached{B.zero};
  in[B.zero] = true;
  for (std::size_t i = 0; i < reached.size(); ++i)
    for (auto s : S) {
      auto c = B.plus(reached[i], s);
      if (!in[c]) {
        in[c] = true;
        reached.push_back(c);
      }
    }
  return in;
}

inline bool generates_additively(LeftBrace const &B,
                                 std::vector<element> const &S)
{
  auto in = additive_span(B, S);
  return std::all_of(in.begin(), in.end(), [](bool b) { return b; });
}

/// Orbits of {λ_x} on B, each ascending, ordered by smallest member.
inline std::vector<std::vector<element>> lambda_orbits(LeftBrace const &B)
{
  auto orbits = subgroup(B.n, lambda_maps(B)).orbits();
  return {orbits.begin(), orbits.end()};
}

struct CycleBase
{
  std::vector<element> elements; // ascending
  bool transitive = false;

  friend bool operator==(CycleBase const &, CycleBase const &) = default;
};

inline constexpr std::size_t max_cycle_base_orbits = 20;

/// Every union of nonzero λ-orbits that generates (B,+).  Throws CapExceeded
/// when there are more than max_cycle_base_orbits nonzero orbits.
inline std::vector<CycleBase> cycle_bases(LeftBrace const &B)
{
  std::vector<std::vector<element>> orbits;
  for (auto &o : lambda_orbits(B))
    if (!(o.size() == 1 && o[0] == B.zero))
      orbits.push_back(std::move(o));
  if (orbits.size() > max_cycle_base_orbits)
    throw CapExceeded("too many λ-orbits for cycle base enumeration");
  std::vector<CycleBase> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << orbits.size());
       ++mask) {
    CycleBase base;
    for (std::size_t i = 0; i < orbits.size(); ++i)
      if (mask >> i & 1)
        base.elements.insert(base.elements.end(), orbits[i].begin(),
                             orbits[i].end());
    if (!generates_additively(B, base.elements))
      continue;
    std::sort(base.elements.begin(), base.elements.end());
    base.transitive = std::popcount(mask) == 1;
    out.push_back(std::move(base));
  }
  std::sort(out.begin(), out.end(), [](auto const &a, auto const &b) {
    return a.elements < b.elements;
  });
  return out;
}

/// Why a coset construction was refused.
class InvalidCosetData : public PreconditionFailed
{
public:
  enum class Kind {
    not_subgroup,
    not_core_free,
    not_in_stabilizer,
    not_transitive_base,
    not_in_base
  };

  InvalidCosetData(Kind k, std::string const &what)
    : PreconditionFailed(what), kind(k)
  {}
  Kind kind;
};

/// Left cosets x∘K, each ascending, ordered by smallest member.
inline std::vector<std::vector<element>>
left_cosets(LeftBrace const &B, std::vector<element> const &K)
{
  std::vector<bool> seen(B.n, false);
  std::vector<std::vector<element>> out;
  for (element x = 0; x < B.n; ++x) {
    if (seen[x])
      continue;
    std::vector<element> c;
    for (auto k : K)
      c.push_back(B.times(x, k));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (auto e : c)
      seen[e] = true;
    out.push_back(std::move(c));
  }
  return out;
}

/// Largest normal subgroup of (B,∘) inside K: ⋂_g g∘K∘g⁻.
inline std::vector<element> core(LeftBrace const &B,
                                 std::vector<element> const &K)
{
  auto in = detail::membership(B.n, K);
  std::vector<element> out;
  for (auto k : K) {
    bool everywhere = true;
    for (element g = 0; g < B.n && everywhere; ++g)
      everywhere = in[B.times(B.times(B.inv[g], k), g)];
    if (everywhere)
      out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The cycle set on B/K with σ_{x∘K}(y∘K) = λ_x(a)⁻∘y∘K, where Y is a
/// transitive cycle base containing a and K is a core-free subgroup of
/// (B,∘) fixing a under λ.  Cosets are labelled by the order of their
/// smallest element.
inline CycleSet coset_construction(LeftBrace const &B, CycleBase const &Y,
                                   element a, std::vector<element> K)
{
  using Kind = InvalidCosetData::Kind;
  if (K.empty())
    K.push_back(B.zero);
  std::sort(K.begin(), K.end());
  K.erase(std::unique(K.begin(), K.end()), K.end());
  if (!detail::is_mult_subgroup(B, detail::membership(B.n, K)) ||
      K.back() >= B.n)
    throw InvalidCosetData(Kind::not_subgroup, "K is not a subgroup");
  for (auto k : K)
    if (lambda_of(B, k)(a) != a)
      throw InvalidCosetData(Kind::not_in_stabilizer,
                             "K does not fix a under λ");
  if (core(B, K).size() != 1)
    throw InvalidCosetData(Kind::not_core_free, "K is not core-free");
  if (!std::binary_search(Y.elements.begin(), Y.elements.end(), a))
    throw InvalidCosetData(Kind::not_in_base, "a is not in the cycle base");
  auto orbit = lambda_orbits(B);
  bool single_orbit = false;
  for (auto const &o : orbit)
    single_orbit |= o == Y.elements;
  if (!single_orbit || !generates_additively(B, Y.elements))
    throw InvalidCosetData(Kind::not_transitive_base,
                           "Y is not a transitive cycle base");

  auto cosets = left_cosets(B, K);
  std::vector<point> label(B.n);
  for (point i = 0; i < cosets.size(); ++i)
    for (auto e : cosets[i])
      label[e] = i;
  auto const m = cosets.size();
  std::vector<point> table(m * m);
  for (point i = 0; i < m; ++i) {
    auto x = cosets[i].front();
    auto shift = B.inv[lambda_of(B, x)(a)];
    for (point j = 0; j < m; ++j)
      table[i * m + j] = label[B.times(shift, cosets[j].front())];
  }
  return CycleSet::validate(m, std::move(table));
}

/// A brace whose elements are the permutations of G(X).
struct PermutationBrace
{
  LeftBrace brace;
  std::vector<Permutation> elements; // elements[i] is brace element i
  std::vector<element> generator;    // generator[x] is σ_x⁻¹
};

/// The brace on G(X): ∘ is composition and + is the completion of
/// σ_x⁻¹ + σ_y⁻¹ = σ_x⁻¹∘σ_{σ_x(y)}⁻¹.  Writing e_y = σ_y⁻¹, the rule says
/// g + e_y = g∘e_{g⁻¹(y)}; these translations must commute and reach every
/// element from the identity, and the resulting tables are validated.
inline PermutationBrace brace_of_cycle_set(CycleSet const &X,
                                           std::size_t order_cap = 5000)
{
  auto const n = X.size();
  auto G = perm_group(X, order_cap);
  PermutationBrace out;
  out.elements = G.elements();
  auto const N = out.elements.size();
  auto index = [&](Permutation const &p) {
    auto i = G.index_of(p);
    if (!i)
      throw Error("brace_of_cycle_set: element outside G(X)");
    return static_cast<element>(*i);
  };

  std::vector<Permutation> e;
  for (point y = 0; y < n; ++y) {
    e.push_back(X.sigma(y).inverse());
    out.generator.push_back(index(e.back()));
  }

  // tau[y*N+g] = g + e_y
  std::vector<element> tau(n * N);
  for (element g = 0; g < N; ++g) {
    auto const &perm = out.elements[g];
    auto pinv = perm.inverse();
    for (point y = 0; y < n; ++y)
      tau[y * N + g] = index(perm * e[pinv(y)]);
  }
  for (point y = 0; y < n; ++y) {
    std::vector<bool> hit(N, false);
    for (element g = 0; g < N; ++g)
      hit[tau[y * N + g]] = true;
    if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
      throw Error("brace_of_cycle_set: translation is not a bijection");
  }
  for (point y = 0; y < n; ++y)
    for (point z = 0; z < y; ++z)
      for (element g = 0; g < N; ++g)
        if (tau[y * N + tau[z * N + g]] != tau[z * N + tau[y * N + g]])
          throw Error("brace_of_cycle_set: translations do not commute");

  // Breadth-first words from the identity (index 0).
  std::vector<element> parent(N, 0), order{0};
  std::vector<point> step(N, 0);
  std::vector<bool> seen(N, false);
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (point y = 0; y < n; ++y) {
      auto c = tau[y * N + order[i]];
      if (!seen[c]) {
        seen[c] = true;
        parent[c] = order[i];
        step[c] = y;
        order.push_back(c);
      }
    }
  if (order.size() != N)
    throw Error("brace_of_cycle_set: additive closure failed");

  std::vector<element> add(N * N), circ(N * N);
  for (element a = 0; a < N; ++a) {
    add[a * N + 0] = a;
    for (std::size_t i = 1; i < N; ++i) {
      auto b = order[i];
      add[a * N + b] = tau[step[b] * N + add[a * N + parent[b]]];
    }
    for (element b = 0; b < N; ++b)
      circ[a * N + b] = index(out.elements[a] * out.elements[b]);
  }
  out.brace = validate_brace(N, std::move(add), std::move(circ));
  return out;
}

/// Componentwise brace on pairs; (i, j) is element i·|b| + j.
inline LeftBrace direct_product_brace(LeftBrace const &a, LeftBrace const &b)
{
  auto const m = b.n;
  auto pair = [m](element i, element j) { return i * m + j; };
  return brace_from_operations(
      a.n * m,
      [&](element x, element y) {
        return pair(a.plus(x / m, y / m), b.plus(x % m, y % m));
      },
      [&](element x, element y) {
        return pair(a.times(x / m, y / m), b.times(x % m, y % m));
      });
}

namespace detail {

struct BraceInvariant
{
  std::uint64_t add_order, mult_order;
  std::size_t lambda_fixed;
  auto operator<=>(BraceInvariant const &) const = default;
};

inline std::vector<BraceInvariant> brace_invariants(LeftBrace const &B)
{
  std::vector<BraceInvariant> out;
  for (element x = 0; x < B.n; ++x) {
    auto l = lambda_of(B, x);
    std::size_t fixed = 0;
    for (element y = 0; y < B.n; ++y)
      fixed += l(y) == y;
    out.push_back({additive_order(B, x), multiplicative_order(B, x), fixed});
  }
  return out;
}

/// Extends the partial map f (unset entries = n) to the substructure
/// generated by its domain; false on any conflict.
inline bool extend_morphism(LeftBrace const &A, LeftBrace const &B,
                            std::vector<element> &f,
                            std::vector<element> &used_by)
{
  auto const unset = static_cast<element>(A.n);
  std::vector<element> domain;
  for (element x = 0; x < A.n; ++x)
    if (f[x] != unset)
      domain.push_back(x);
  auto set = [&](element x, element y) {
    if (f[x] != unset)
      return f[x] == y;
    if (used_by[y] != unset)
      return false;
    f[x] = y;
    used_by[y] = x;
    domain.push_back(x);
    return true;
  };
  for (std::size_t i = 0; i < domain.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      auto u = domain[i], v = domain[j];
      if (!set(A.plus(u, v), B.plus(f[u], f[v])) ||
          !set(A.times(u, v), B.times(f[u], f[v])) ||
          !set(A.times(v, u), B.times(f[v], f[u])))
        return false;
    }
  return true;
}

} // namespace detail

/// A bijection f with f(x+y) = f(x)+f(y) and f(x∘y) = f(x)∘f(y), found by
/// backtracking over images of a generating sequence.
inline std::optional<std::vector<element>>
find_brace_isomorphism(LeftBrace const &A, LeftBrace const &B)
{
  if (A.n != B.n)
    return std::nullopt;
  auto ia = detail::brace_invariants(A), ib = detail::brace_invariants(B);
  {
    auto sa = ia, sb = ib;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
      return std::nullopt;
  }
  auto const unset = static_cast<element>(A.n);

  // Greedy generating sequence of A under both operations.
  std::vector<element> gens;
  {
    std::vector<element> f(A.n, unset), used(A.n, unset);
    f[A.zero] = A.zero;
    used[A.zero] = A.zero;
    for (element x = 0; x < A.n; ++x)
      if (f[x] == unset) {
        gens.push_back(x);
        f[x] = x;
        used[x] = x;
        detail::extend_morphism(A, A, f, used);
      }
  }

  std::optional<std::vector<element>> found;
  auto rec = [&](auto &self, std::size_t i, std::vector<element> f,
                 std::vector<element> used) -> void {
    if (found)
      return;
    if (i == gens.size()) {
      found = std::move(f);
      return;
    }
    auto g = gens[i];
    for (element c = 0; c < B.n && !found; ++c) {
      if (used[c] != unset || ib[c] != ia[g])
        continue;
      auto f2 = f, used2 = used;
      f2[g] = c;
      used2[c] = g;
      if (detail::extend_morphism(A, B, f2, used2))
        self(self, i + 1, std::move(f2), std::move(used2));
    }
  };
  std::vector<element> f(A.n, unset), used(A.n, unset);
  f[A.zero] = B.zero;
  used[B.zero] = A.zero;
  rec(rec, 0, std::move(f), std::move(used));
  return found;
}

inline bool are_isomorphic(LeftBrace const &A, LeftBrace const &B)
{
  return find_brace_isomorphism(A, B).has_value();
}

} // namespace cycloid
