#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stop_token>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "brace.hpp"
#include "canonical.hpp"
#include "congruence.hpp"
#include "cycle_set.hpp"
#include "enumerate.hpp"
#include "number_theory.hpp"
#include "perm_group.hpp"
#include "solution.hpp"

namespace cycloid {

inline constexpr char const *harness_version = "cycloid-verify/1";

using named_values = std::vector<std::pair<std::string, std::int64_t>>;
using named_notes = std::vector<std::pair<std::string, std::string>>;

/// A replayable failure: the offending table, and for rules over several
/// members (uniqueness) the other members needed to reproduce it.
struct Counterexample
{
  CycleSet table;
  std::string reason;
  std::vector<CycleSet> witnesses;
};

/// Per-instance bookkeeping kept by checkers that publish their bound
/// symbols.  `index` is the position inside the census of size n.
struct InstanceRecord
{
  std::size_t n = 0;
  std::size_t index = 0;
  named_values values;
};

struct Verdict
{
  std::string checker;
  std::string scope;
  std::size_t examined = 0; // instances meeting the hypothesis
  std::size_t skipped = 0;  // hypothesis unmet or not applicable
  std::vector<Counterexample> counterexamples;
  double elapsed_seconds = 0;
  named_notes notes;
  std::vector<InstanceRecord> records;

  bool passed() const { return counterexamples.empty(); }
  bool vacuous() const { return examined == 0; }
};

struct VerifyOptions
{
  std::vector<std::uint64_t> cabling_ks{1, 2, 3, 4, 5, 6};
  /// Skip members failing the cycle set axioms as not applicable.  Off by
  /// default: census members come from the enumerator or are injected on
  /// purpose.
  bool validate_members = false;
  std::size_t order_cap = 5000;
  std::stop_token stop;
};

/// Result of one rule on one table.
struct Outcome
{
  enum class Status { consistent, violated, skipped };

  Status status = Status::skipped;
  std::string reason;
  named_values values;
  /// Members reporting the same group must be pairwise isomorphic.
  std::optional<std::string> unique_group;
  /// Free-form remark surfaced in the verdict notes.
  std::optional<std::string> remark;

  static Outcome skip(std::string why)
  {
    Outcome o;
    o.reason = std::move(why);
    return o;
  }
  static Outcome ok(named_values v = {})
  {
    Outcome o;
    o.status = Status::consistent;
    o.values = std::move(v);
    return o;
  }
  static Outcome fail(std::string why, named_values v = {})
  {
    Outcome o;
    o.status = Status::violated;
    o.reason = std::move(why);
    o.values = std::move(v);
    return o;
  }
};

/// What a table must satisfy before a rule can even be evaluated.
enum class Needs {
  entries,       // entries in range
  rows,          // every σ_x a permutation
  rows_diagonal, // and T a permutation
};

struct Checker
{
  std::string id;
  std::string statement;
  Needs needs = Needs::rows_diagonal;
  std::function<Outcome(CycleSet const &, VerifyOptions const &)> rule;
  named_notes notes; // readings applied
  bool keep_records = false;
};

namespace detail {

inline std::string show(prime_set const &s)
{
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it)
    out += (it == s.begin() ? "" : ",") + std::to_string(*it);
  return out + "}";
}

inline std::string at(point x) { return " at x=" + std::to_string(x); }

inline bool rows_bijective(CycleSet const &X)
{
  auto const n = X.size();
  std::vector<bool> seen(n);
  for (point x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), false);
    for (point y = 0; y < n; ++y) {
      if (seen[X(x, y)])
        return false;
      seen[X(x, y)] = true;
    }
  }
  return true;
}

inline bool diagonal_bijective(CycleSet const &X)
{
  std::vector<bool> seen(X.size());
  for (point x = 0; x < X.size(); ++x) {
    if (seen[X(x, x)])
      return false;
    seen[X(x, x)] = true;
  }
  return true;
}

inline bool entries_in_range(CycleSet const &X)
{
  return std::all_of(X.flat().begin(), X.flat().end(),
                     [&](point v) { return v < X.size(); });
}

/// The reason a rule cannot be evaluated on X, if any.
inline std::optional<std::string> not_applicable(CycleSet const &X, Needs needs,
                                                 bool validate)
{
  if (X.flat().size() != X.size() * X.size() || !entries_in_range(X))
    return "not applicable: malformed table";
  if (validate)
    if (auto r = CycleSet::check(X.size(), X.flat()))
      return "not applicable: " + r->message();
  if (needs != Needs::entries && !rows_bijective(X))
    return "not applicable: some σ_x is not a permutation";
  if (needs == Needs::rows_diagonal && !diagonal_bijective(X))
    return "not applicable: squaring map not bijective";
  return std::nullopt;
}

/// p when T moves exactly p points forming one cycle and p is prime.
inline std::optional<std::uint64_t> p_cycle_prime(Permutation const &T)
{
  auto moved = cycles(T);
  if (moved.size() != 1 || !is_prime(moved.front().size()))
    return std::nullopt;
  return moved.front().size();
}

inline std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

inline std::optional<element> brace_index(PermutationBrace const &pb,
                                          Permutation const &p)
{
  auto it = std::find(pb.elements.begin(), pb.elements.end(), p);
  if (it == pb.elements.end())
    return std::nullopt;
  return static_cast<element>(it - pb.elements.begin());
}

// Individual rules.  Each recomputes its own hypotheses.

inline Outcome squarefree_decomposable(CycleSet const &X, VerifyOptions const &)
{
  if (X.size() <= 1)
    return Outcome::skip("size 1");
  if (!squaring_map(X).is_identity())
    return Outcome::skip("T is not the identity");
  if (is_indecomposable(X))
    return Outcome::fail("T = id and |X| > 1, yet G(X) is transitive");
  return Outcome::ok();
}

inline Outcome squaring_gcd(CycleSet const &X, VerifyOptions const &)
{
  if (X.size() <= 1)
    return Outcome::skip("size 1");
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  auto g = std::gcd<std::uint64_t>(X.size(), squaring_map(X).order());
  if (g == 1)
    return Outcome::fail("indecomposable with gcd(|X|, o(T)) = 1");
  return Outcome::ok({{"gcd", as_int(g)}});
}

inline Outcome pitype(CycleSet const &X, VerifyOptions const &o)
{
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  auto G = perm_group(X, o.order_cap);
  if (!is_nilpotent(G))
    return Outcome::skip("G(X) not nilpotent");
  auto pn = prime_support(X.size()), pg = prime_support(G.order());
  if (pn != pg)
    return Outcome::fail("π(|X|) = " + show(pn) + " but π(|G(X)|) = " +
                         show(pg));
  for (point x = 0; x < X.size(); ++x) {
    auto px = prime_support(X.sigma(x).order());
    if (px != pn)
      return Outcome::fail("π(o(σ_x)) = " + show(px) + " differs from π(|X|) = " +
                           show(pn) + at(x));
  }
  return Outcome::ok();
}

/// Searches one congruence per prime of |G(X)| whose quotient has the
/// p-part of |X| as size, jointly separating points, such that X is the
/// direct product of the quotients.
inline Outcome nilp_product(CycleSet const &X, VerifyOptions const &o)
{
  auto const n = X.size();
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  auto G = perm_group(X, o.order_cap);
  if (!is_nilpotent(G))
    return Outcome::skip("G(X) not nilpotent");
  auto const order = G.order();
  if (order <= 1 || prime_power_base(order))
    return Outcome::skip("|G(X)| is a prime power");
  std::vector<std::uint64_t> primes;
  for (auto p : prime_support(order))
    primes.push_back(p);
  for (auto p : primes)
    if (n % p != 0)
      return Outcome::fail("prime " + std::to_string(p) +
                           " divides |G(X)| but not |X|");
  auto all = congruences(X, default_congruence_bound, o.stop);
  std::vector<std::vector<Congruence const *>> candidates(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (auto const &c : all)
      if (c.classes.size() == p_part(n, primes[i]))
        candidates[i].push_back(&c);

  std::vector<Congruence const *> chosen(primes.size());
  std::function<bool(std::size_t)> pick = [&](std::size_t i) -> bool {
    if (i == primes.size()) {
      std::vector<point> map(n, 0);
      CycleSet product;
      for (std::size_t j = 0; j < primes.size(); ++j) {
        auto q = quotient(X, *chosen[j]);
        auto s = q.set.size();
        for (point x = 0; x < n; ++x)
          map[x] = static_cast<point>(map[x] * s + q.projection[x]);
        product = j == 0 ? q.set : direct_product(product, q.set);
      }
      std::vector<bool> hit(n, false);
      for (auto v : map) {
        if (hit[v])
          return false;
        hit[v] = true;
      }
      return is_homomorphism(X, product, map);
    }
    for (auto const *c : candidates[i]) {
      chosen[i] = c;
      if (pick(i + 1))
        return true;
    }
    return false;
  };
  if (!pick(0))
    return Outcome::fail("no factorization into quotients of coprime "
                         "prime-power sizes");
  named_values v;
  for (std::size_t i = 0; i < primes.size(); ++i)
    v.emplace_back("factor_" + std::to_string(primes[i]),
                   as_int(chosen[i]->classes.size()));
  return Outcome::ok(std::move(v));
}

inline Outcome simple_pcycle(CycleSet const &X, VerifyOptions const &o)
{
  auto p = p_cycle_prime(squaring_map(X));
  if (!p)
    return Outcome::skip("T is not a p-cycle");
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  if (!is_simple(X))
    return Outcome::fail("T is a " + std::to_string(*p) +
                         "-cycle but X is not simple");
  if (X.size() > 1 && !is_prime(X.size())) {
    if (!is_irretractable(X))
      return Outcome::fail("composite size and T a p-cycle, but X is "
                           "retractable");
    auto pb = brace_of_cycle_set(X, o.order_cap);
    if (socle(pb.brace).size() != 1)
      return Outcome::fail("composite size and T a p-cycle, but "
                           "Soc(G(X)) is nontrivial");
  }
  return Outcome::ok({{"p", as_int(*p)}});
}

inline Outcome fixedp(CycleSet const &X, VerifyOptions const &o)
{
  if (X.size() <= 1)
    return Outcome::skip("size 1");
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  if (!is_nilpotent(perm_group(X, o.order_cap)))
    return Outcome::skip("G(X) not nilpotent");
  auto const f = fix_set(X).size();
  auto const m = X.size() - f;
  if (f > m * m)
    return Outcome::fail("|Fix(T)| = " + std::to_string(f) +
                         " exceeds (|X|-|Fix(T)|)^2 = " + std::to_string(m * m));
  return Outcome::ok({{"fix", as_int(f)}, {"bound", as_int(m * m)}});
}

inline Outcome classification(CycleSet const &X, VerifyOptions const &o)
{
  auto const n = X.size();
  auto p = p_cycle_prime(squaring_map(X));
  if (!p)
    return Outcome::skip("T is not a p-cycle");
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  if (is_nilpotent(disp_group(X, o.order_cap)) && !prime_power_base(n))
    return Outcome::fail("T a p-cycle and Dis(X) nilpotent, but |X| = " +
                         std::to_string(n) + " is not a prime power");
  auto base = prime_power_base(n);
  auto out = Outcome::ok({{"p", as_int(*p)}});
  if (!base || *base != *p)
    return out;
  bool const admissible = *p == 2 ? (n == 2 || n == 4) : n == *p;
  if (!admissible)
    return Outcome::fail("|X| = " + std::to_string(n) + " is a power of p = " +
                         std::to_string(*p) + " but not an admissible size");
  out.unique_group = "size " + std::to_string(n) + ", T a " +
                     std::to_string(*p) + "-cycle";
  return out;
}

inline Outcome block_bound(CycleSet const &X, VerifyOptions const &o)
{
  auto const n = X.size();
  if (n < 2)
    return Outcome::skip("size 1");
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  auto const q = *prime_support(n).begin();
  auto G = perm_group(X, o.order_cap);
  auto systems = block_systems(G);
  bool const has = std::any_of(systems.begin(), systems.end(), [&](auto const &s) {
    return s.blocks.size() == q;
  });
  if (!has)
    return Outcome::skip("hypothesis unmet: no block system with " +
                         std::to_string(q) + " blocks");
  auto T = squaring_map(X);
  auto const pn = prime_support(n);
  std::uint64_t k1 = 1;
  for (; k1 <= T.order(); ++k1) {
    auto ps = prime_support(T.pow(static_cast<long long>(k1)).order());
    if (std::includes(pn.begin(), pn.end(), ps.begin(), ps.end()))
      break;
  }
  auto fix_of = [&](Permutation const &P) {
    std::size_t f = 0;
    for (point x = 0; x < n; ++x)
      f += P(x) == x;
    return f;
  };
  std::uint64_t const m = n - fix_of(T);
  std::uint64_t const k = n - fix_of(T.pow(static_cast<long long>(k1)));
  named_values v{{"q", as_int(q)}, {"m", as_int(m)}, {"k1", as_int(k1)},
                 {"k", as_int(k)}};
  if (!(m <= n && n <= k * k + k))
    return Outcome::fail("chain m <= |X| <= k^2+k fails", std::move(v));
  if (is_single_cycle_of_length(T, 2) && n != 2 && n != 4)
    return Outcome::fail("T is a transposition but |X| = " + std::to_string(n),
                         std::move(v));
  return Outcome::ok(std::move(v));
}

inline Outcome lemppow(CycleSet const &X, VerifyOptions const &o)
{
  auto const n = X.size();
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  auto fix = fix_set(X);
  if (fix.empty())
    return Outcome::skip("Fix(T) empty");
  auto G = perm_group(X, o.order_cap);
  auto const d = dehornoy_class(X, G.order());
  for (auto x : fix)
    if (X.sigma(x).order() != d)
      return Outcome::fail("o(σ_x) = " + std::to_string(X.sigma(x).order()) +
                           " but d = " + std::to_string(d) + at(x));
  auto pb = brace_of_cycle_set(X, o.order_cap);
  for (auto x : fix) {
    auto const mo = X.sigma(x).order();
    auto idx = brace_index(pb, X.sigma(x));
    if (!idx)
      return Outcome::fail("σ_x missing from the brace" + at(x));
    auto const ao = additive_order(pb.brace, *idx);
    if (mo != ao || ao != d)
      return Outcome::fail("o(σ_x) = " + std::to_string(mo) +
                           ", o(σ_x)_+ = " + std::to_string(ao) +
                           ", d = " + std::to_string(d) + at(x));
  }
  auto out = Outcome::ok({{"d", as_int(d)}, {"fixed", as_int(fix.size())}});
  auto p = p_cycle_prime(squaring_map(X));
  if (!p)
    return out;
  for (auto x : fix) {
    auto g = std::gcd<std::uint64_t>(n, X.sigma(x).order());
    if (g == 1) {
      out.remark = "gcd(|X|, o(σ_x)) = 1 with T a p-cycle" + at(x) +
                   "; p^0 excluded by the reading";
      continue;
    }
    if (prime_power_base(g) != p)
      continue;
    if (*p != 2 || n != 4)
      return Outcome::fail("gcd(|X|, o(σ_x)) is a power of p = " +
                           std::to_string(*p) + " but |X| = " +
                           std::to_string(n) + at(x));
    out.unique_group = "size 4, gcd a power of 2";
  }
  return out;
}

inline Outcome latin(CycleSet const &X, VerifyOptions const &)
{
  auto const n = X.size();
  if (!is_latin(X))
    return Outcome::skip("not latin");
  auto const f = fix_set(X).size();
  if (2 * f >= n + 2)
    return Outcome::fail("latin with |Fix(T)| = " + std::to_string(f) +
                         " >= |X|/2 + 1");
  auto out = Outcome::ok({{"fix", as_int(f)}});
  if (auto p = p_cycle_prime(squaring_map(X))) {
    if (*p != 2 || n != 4)
      return Outcome::fail("latin with T a " + std::to_string(*p) +
                           "-cycle at size " + std::to_string(n));
    out.unique_group = "latin, T a p-cycle";
  }
  return out;
}

inline Outcome cabling_laws(CycleSet const &X, VerifyOptions const &o)
{
  auto const n = X.size();
  auto const T = squaring_map(X);
  bool const indec = is_indecomposable(X);
  std::optional<PermutationBrace> pb;
  for (auto k : o.cabling_ks) {
    auto ks = " for k=" + std::to_string(k);
    auto C = cabling(X, k);
    if (auto r = CycleSet::check(n, C.flat()))
      return Outcome::fail("cabled table invalid" + ks + ": " + r->message());
    if (squaring_map(C) != T.pow(static_cast<long long>(k)))
      return Outcome::fail("squaring map of the cabled set is not T^k" + ks);
    if (indec && std::gcd<std::uint64_t>(k, n) == 1 && !is_indecomposable(C))
      return Outcome::fail("coprime cabling lost indecomposability" + ks);
    if (!pb)
      pb = brace_of_cycle_set(X, o.order_cap);
    std::vector<Permutation> multiple;
    for (auto e : multiple_set(pb->brace, k))
      multiple.push_back(pb->elements[e]);
    std::sort(multiple.begin(), multiple.end());
    auto GC = perm_group(C, o.order_cap).elements();
    std::sort(GC.begin(), GC.end());
    if (GC != multiple)
      return Outcome::fail("G of the cabled set differs from kG(X)" + ks);
  }
  if (!indec)
    return Outcome::ok();
  auto const order = perm_group(X, o.order_cap).order();
  std::uint64_t l = 1;
  for (auto q : prime_support(order))
    if (n % q != 0)
      l *= p_part(order, q);
  auto C = cabling(X, l);
  if (!is_indecomposable(C) || !is_pi_type(C))
    return Outcome::fail("the l-cabled set with l = " + std::to_string(l) +
                         " is not an indecomposable set of π-type");
  if (auto p = p_cycle_prime(T); p && std::gcd(l, *p) == 1) {
    auto Tl = squaring_map(C);
    if (p_cycle_prime(Tl) != p)
      return Outcome::fail("T^l is no longer a p-cycle for l = " +
                           std::to_string(l));
  }
  return Outcome::ok({{"l", as_int(l)}});
}

inline Outcome sysblocks(CycleSet const &X, VerifyOptions const &o)
{
  auto const n = X.size();
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  if (n < 4 || is_prime(n))
    return Outcome::skip("|X| not composite");
  auto G = perm_group(X, o.order_cap);
  if (!is_nilpotent(G))
    return Outcome::skip("G(X) not nilpotent");
  auto const p = *prime_support(G.order()).begin();
  auto fix = fix_set(X);
  for (auto const &sys : block_systems(G)) {
    if (sys.blocks.size() != p)
      continue;
    bool fixed_trivial = std::all_of(fix.begin(), fix.end(), [&](point x) {
      return block_action(X.sigma(x), sys).is_identity();
    });
    if (!fixed_trivial)
      continue;
    for (point z = 0; z < n; ++z)
      if (is_single_cycle_of_length(block_action(X.sigma(z), sys), p))
        return Outcome::ok({{"p", as_int(p)}, {"z", as_int(z)}});
  }
  return Outcome::fail("no system of " + std::to_string(p) +
                       " blocks with some σ_z a p-cycle on it and Fix(T) "
                       "acting trivially");
}

inline Outcome mapbij(CycleSet const &X, VerifyOptions const &)
{
  if (!map_m_is_bijective(X))
    return Outcome::fail("(x,y) -> (x·y, y·x) is not a bijection");
  return Outcome::ok();
}

inline Outcome final_corollary(CycleSet const &X, VerifyOptions const &)
{
  auto const n = X.size();
  auto p = prime_power_base(n);
  if (!p || *p == 2 || n == *p)
    return Outcome::skip("|X| is not p^k with p odd and k > 1");
  std::size_t p_cycles = 0;
  for (auto len : cycle_type(squaring_map(X))) {
    if (len == *p)
      ++p_cycles;
    else if (std::gcd<std::uint64_t>(len, *p) != 1)
      return Outcome::skip("T has a cycle of length divisible by p other "
                           "than a single p-cycle");
  }
  if (p_cycles != 1)
    return Outcome::skip("T does not have exactly one p-cycle");
  if (is_indecomposable(X))
    return Outcome::fail("hypothesis holds but X is indecomposable");
  return Outcome::ok();
}

inline Outcome dehornoy_laws(CycleSet const &X, VerifyOptions const &o)
{
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  auto const n = X.size();
  auto G = perm_group(X, o.order_cap);
  auto const d = dehornoy_class(X, G.order());
  if (d + 1 <= 12) {
    auto tower = [&](std::size_t len, point x, point y) {
      std::vector<point> args(len - 1, x);
      args.push_back(y);
      return omega(X, args);
    };
    for (point x = 0; x < n; ++x)
      for (point y = 0; y < n; ++y)
        if (tower(d + 1, x, y) != y)
          return Outcome::fail("Ω_{d+1}(x,...,x,y) != y for d = " +
                               std::to_string(d));
    if (d > 1) {
      bool witness = false;
      for (point x = 0; x < n && !witness; ++x)
        for (point y = 0; y < n && !witness; ++y)
          witness = tower(d, x, y) != y;
      if (!witness)
        return Outcome::fail("class " + std::to_string(d) + " is not minimal");
    }
  }
  if (prime_support(d) != prime_support(G.order()))
    return Outcome::fail("π(d) = " + show(prime_support(d)) +
                         " but π(|G(X)|) = " + show(prime_support(G.order())));
  if (d % squaring_map(X).order() != 0)
    return Outcome::fail("o(T) does not divide d = " + std::to_string(d));
  auto pb = brace_of_cycle_set(X, o.order_cap);
  if (additive_exponent(pb.brace) != d)
    return Outcome::fail("additive exponent " +
                         std::to_string(additive_exponent(pb.brace)) +
                         " differs from d = " + std::to_string(d));
  for (point x = 0; x < n; ++x)
    if (additive_order(pb.brace, pb.generator[x]) != d)
      return Outcome::fail("additive order of σ_x⁻¹ differs from d" + at(x));
  return Outcome::ok({{"d", as_int(d)}});
}

inline Outcome correspondence(CycleSet const &X, VerifyOptions const &)
{
  auto s = to_solution(X);
  if (!is_involutive(s))
    return Outcome::fail("associated solution is not involutive");
  if (!satisfies_braid_relation(s))
    return Outcome::fail("associated solution fails the braid relation");
  if (!is_nondegenerate(s))
    return Outcome::fail("associated solution is degenerate");
  if (from_solution(s) != X)
    return Outcome::fail("solution does not map back to the cycle set");
  return Outcome::ok();
}

inline Outcome quotient_fibers(CycleSet const &X, VerifyOptions const &o)
{
  if (!is_indecomposable(X))
    return Outcome::skip("decomposable");
  auto all = congruences(X, default_congruence_bound, o.stop);
  for (auto const &c : all) {
    auto const s = c.classes.front().size();
    for (auto const &cls : c.classes)
      if (cls.size() != s)
        return Outcome::fail("congruence with fibers of sizes " +
                             std::to_string(s) + " and " +
                             std::to_string(cls.size()));
    auto q = quotient(X, c);
    if (auto r = CycleSet::check(q.set.size(), q.set.flat()))
      return Outcome::fail("quotient is not a cycle set: " + r->message());
  }
  return Outcome::ok({{"congruences", as_int(all.size())}});
}

inline Outcome simple_consequences(CycleSet const &X, VerifyOptions const &)
{
  auto const n = X.size();
  if (!is_simple(X))
    return Outcome::skip("not simple");
  if (n > 2 && !is_indecomposable(X))
    return Outcome::fail("simple of size > 2 but decomposable");
  if (n > 1 && !is_prime(n) && !is_irretractable(X))
    return Outcome::fail("simple of non-prime size but retractable");
  return Outcome::ok();
}

} // namespace detail

/// Every checker, in the order the suite runs and reports them.
inline std::vector<Checker> const &checkers()
{
  using N = Needs;
  static std::vector<Checker> const all = [] {
    std::vector<Checker> c;
    auto add = [&](std::string id, std::string statement, Needs needs,
                   auto rule, named_notes notes = {}, bool records = false) {
      c.push_back({std::move(id), std::move(statement), needs, rule,
                   std::move(notes), records});
    };
    add("squarefree_decomposable",
        "T = id and |X| > 1 implies decomposable", N::rows_diagonal,
        detail::squarefree_decomposable);
    add("squaring_gcd",
        "indecomposable implies gcd(|X|, o(T)) > 1", N::rows_diagonal,
        detail::squaring_gcd);
    add("pitype",
        "indecomposable with nilpotent G(X): π(o(σ_x)) = π(|X|) = π(|G(X)|)",
        N::rows, detail::pitype);
    add("nilp_product",
        "indecomposable with nilpotent G(X) of non-prime-power order is a "
        "direct product of quotients of prime-power size",
        N::rows, detail::nilp_product);
    add("simple_pcycle",
        "indecomposable with T a p-cycle is simple; composite size adds "
        "irretractable and trivial socle",
        N::rows_diagonal, detail::simple_pcycle,
        {{"reading", "p-cycle means cycle type {p,1,...,1} with p prime"}});
    add("fixedp",
        "indecomposable with nilpotent G(X): |Fix(T)| <= (|X|-|Fix(T)|)^2",
        N::rows, detail::fixedp,
        {{"reading", "the one-point set is excluded; there |Fix(T)| = 1 > 0"}});
    add("classification",
        "indecomposable, T a p-cycle, |X| a power of p: |X| = p (p odd) or "
        "|X| in {2,4}, one class per size; Dis(X) nilpotent forces a prime "
        "power size",
        N::rows_diagonal, detail::classification,
        {{"reading", "p-cycle means cycle type {p,1,...,1} with p prime"}});
    add("block_bound",
        "indecomposable with a block system of q blocks (q least prime of "
        "|X|): m <= |X| <= k^2+k; T a transposition gives |X| in {2,4}",
        N::rows_diagonal, detail::block_bound,
        {{"reading.k1", "pi(o(T^k1)) contained in pi(|X|) read as non-strict "
                        "inclusion"},
         {"reading.blocks", "block system of size q read as q blocks, each "
                            "of size |X|/q > 1"},
         {"reading.transposition", "transposition clause evaluated under the "
                                   "block hypothesis"}},
        true);
    add("lemppow",
        "indecomposable, x in Fix(T): o(σ_x) = o(σ_x)_+ = d; gcd(|X|, o(σ_x)) "
        "a power of p with T a p-cycle forces p = 2, |X| = 4, unique",
        N::rows_diagonal, detail::lemppow,
        {{"reading", "gcd(|X|, o(σ_x)) = p^s read with s >= 1 and p the "
                     "prime of the p-cycle T"}});
    add("latin",
        "latin: |Fix(T)| < |X|/2 + 1; T a p-cycle forces |X| = 4, unique",
        N::rows_diagonal, detail::latin);
    add("cabling_laws",
        "k-cabled set is a cycle set with squaring map T^k, indecomposable "
        "for gcd(k,|X|) = 1, with G equal to kG(X); some l-cabling is of "
        "π-type and keeps a p-cycle T",
        N::rows_diagonal, detail::cabling_laws);
    add("sysblocks",
        "indecomposable with nilpotent G(X), composite size: a system of p "
        "blocks with some σ_z a p-cycle on it and Fix(T) acting trivially",
        N::rows, detail::sysblocks,
        {{"reading", "system of blocks of size p read as p blocks"}});
    add("mapbij", "(x,y) -> (x·y, y·x) is a bijection of X×X", N::entries,
        detail::mapbij);
    add("final_corollary",
        "|X| = p^k, p odd, k > 1, T one p-cycle plus cycles of length prime "
        "to p: decomposable",
        N::rows_diagonal, detail::final_corollary,
        {{"reading", "other cycles of T may be fixed points"}});
    add("dehornoy_laws",
        "indecomposable: Ω tower closes at d, π(d) = π(|G(X)|), o(T) | d, d "
        "is the additive exponent and the additive order of every σ_x⁻¹",
        N::rows_diagonal, detail::dehornoy_laws,
        {{"reading", "fourth law read as: additive order of σ_x⁻¹ equals d"},
         {"cap", "Dehornoy search capped at |G(X)|"}});
    add("correspondence",
        "the associated solution is involutive, braided, non-degenerate and "
        "maps back to X",
        N::rows, detail::correspondence);
    add("quotient_fibers",
        "indecomposable: every congruence has equal fibers and a cycle set "
        "quotient",
        N::rows_diagonal, detail::quotient_fibers);
    add("simple_consequences",
        "simple: |X| > 2 gives indecomposable, non-prime |X| gives "
        "irretractable",
        N::rows, detail::simple_consequences,
        {{"reading", "size 1 counts as simple"}});
    return c;
  }();
  return all;
}

inline Checker const &find_checker(std::string_view id)
{
  for (auto const &c : checkers())
    if (c.id == id)
      return c;
  throw PreconditionFailed("unknown checker: " + std::string(id));
}

inline std::string hex(std::uint64_t v)
{
  std::ostringstream s;
  s << std::hex << v;
  return s.str();
}

/// e.g. "n=1..5 [all]" or "n=4 [latin], n=6 [latin]".
inline std::string describe_scope(std::span<Census const> scope)
{
  if (scope.empty())
    return "empty";
  bool contiguous = true;
  for (std::size_t i = 1; i < scope.size(); ++i)
    contiguous &= scope[i].n == scope[i - 1].n + 1 &&
                  scope[i].filter == scope[0].filter;
  if (contiguous && scope.size() > 1)
    return "n=" + std::to_string(scope.front().n) + ".." +
           std::to_string(scope.back().n) + " [" + scope[0].filter + "]";
  std::string out;
  for (std::size_t i = 0; i < scope.size(); ++i)
    out += (i ? ", " : "") + std::string("n=") + std::to_string(scope[i].n) +
           " [" + scope[i].filter + "]";
  return out;
}

/// Applies one checker to every member of every census.
inline Verdict run_checker(Checker const &c, std::span<Census const> scope,
                           VerifyOptions const &options = {})
{
  auto const start = std::chrono::steady_clock::now();
  Verdict v;
  v.checker = c.id;
  v.scope = describe_scope(scope);
  v.notes.emplace_back("statement", c.statement);
  v.notes.insert(v.notes.end(), c.notes.begin(), c.notes.end());
  v.notes.emplace_back("harness", harness_version);
  for (auto const &census : scope) {
    v.notes.emplace_back("engine", census.engine);
    v.notes.emplace_back("census.n=" + std::to_string(census.n) + "." +
                             census.filter,
                         hex(census.hash()));
  }
  std::map<std::string, std::vector<CycleSet>> groups;
  for (auto const &census : scope)
    for (std::size_t i = 0; i < census.representatives.size(); ++i) {
      if (options.stop.stop_requested())
        throw Cancelled();
      auto const &X = census.representatives[i];
      Outcome out;
      if (auto why = detail::not_applicable(X, c.needs, options.validate_members))
        out = Outcome::skip(*why);
      else
        try {
          out = c.rule(X, options);
        } catch (CapExceeded const &e) {
          out = Outcome::skip(std::string("cap exceeded: ") + e.what());
        } catch (Cancelled const &) {
          throw;
        } catch (Error const &e) {
          out = Outcome::fail(std::string("evaluation failed: ") + e.what());
        }
      using S = Outcome::Status;
      if (out.status == S::skipped) {
        ++v.skipped;
        continue;
      }
      ++v.examined;
      if (out.remark)
        v.notes.emplace_back("remark", "n=" + std::to_string(census.n) +
                                           " #" + std::to_string(i) + ": " +
                                           *out.remark);
      if (c.keep_records)
        v.records.push_back({census.n, i, out.values});
      if (out.status == S::violated) {
        v.counterexamples.push_back({X, out.reason, {}});
        continue;
      }
      if (out.unique_group) {
        auto &members = groups[*out.unique_group];
        bool duplicate = false;
        for (auto const &W : members)
          duplicate |= W.size() == X.size() && is_isomorphic(W, X);
        if (!members.empty() && !duplicate)
          v.counterexamples.push_back(
              {X, "second isomorphism class for " + *out.unique_group,
               {members.front()}});
        if (!duplicate)
          members.push_back(X);
      }
    }
  v.elapsed_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return v;
}

inline Verdict run_checker(std::string_view id, std::span<Census const> scope,
                           VerifyOptions const &options = {})
{
  return run_checker(find_checker(id), scope, options);
}

/// Runs the named checkers concurrently; verdicts come back in the order
/// given.
inline std::vector<Verdict> run_suite(std::vector<std::string> const &ids,
                                      std::span<Census const> scope,
                                      VerifyOptions const &options = {},
                                      unsigned jobs = 1)
{
  std::vector<Checker const *> selected;
  for (auto const &id : ids)
    selected.push_back(&find_checker(id));
  std::vector<Verdict> out(selected.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      auto i = next.fetch_add(1);
      if (i >= selected.size())
        return;
      try {
        out[i] = run_checker(*selected[i], scope, options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
  }
  if (failure)
    std::rethrow_exception(failure);
  return out;
}

inline std::vector<std::string> all_checker_ids()
{
  std::vector<std::string> ids;
  for (auto const &c : checkers())
    ids.push_back(c.id);
  return ids;
}

/// Re-evaluates a counterexample from its embedded tables alone.
inline bool replays(std::string_view id, Counterexample const &ce,
                    VerifyOptions const &options = {})
{
  Census c;
  c.n = ce.table.size();
  c.filter = "replay";
  c.representatives = ce.witnesses;
  c.representatives.push_back(ce.table);
  auto v = run_checker(id, std::span<Census const>(&c, 1), options);
  return std::any_of(v.counterexamples.begin(), v.counterexamples.end(),
                     [&](auto const &e) { return e.table == ce.table; });
}

/// A deliberately broken table that the named checker must flag, with the
/// other members that make it a violation.
struct Injection
{
  std::string checker;
  CycleSet table;
  std::vector<CycleSet> context;
};

namespace detail {

inline CycleSet rows_table(table_rows const &rows)
{
  return CycleSet::from_rows_unchecked(rows);
}

inline CycleSet from_sigmas(std::size_t n,
                            std::vector<std::pair<point, char const *>> const &special,
                            char const *rest)
{
  table_rows rows(n);
  for (point x = 0; x < n; ++x) {
    char const *text = rest;
    for (auto const &[y, t] : special)
      if (y == x)
        text = t;
    auto p = parse_cycles(text, n, 0);
    rows[x].assign(p.images().begin(), p.images().end());
  }
  return CycleSet::from_rows_unchecked(rows);
}

} // namespace detail

/// One synthetic violation per checker that admits one.  None of these is a
/// cycle set.  sysblocks has no entry: for any table with bijective rows its
/// conclusion already follows from its hypotheses (a transitive nilpotent
/// group always has such a block system, and σ_x fixes the block of x).
inline std::vector<Injection> injected_violations()
{
  using detail::from_sigmas;
  using detail::rows_table;
  // σ_0 = (1 2), σ_1 = (0 2), σ_2 = (0 1): T = id on a transitive group
  auto const s3 = from_sigmas(3, {{0, "(1 2)"}, {1, "(0 2)"}, {2, "(0 1)"}}, "()");
  auto const cyclic3 = trivial_from(parse_cycles("(0 1 2)", 3, 0));
  std::vector<Injection> out;
  out.push_back({"squarefree_decomposable", s3, {}});
  out.push_back({"squaring_gcd", s3, {}});
  out.push_back({"pitype", rows_table({{0, 1}, {1, 0}}), {}});
  out.push_back({"nilp_product", from_sigmas(6, {{0, "(0 1 2 3 4 5)"}}, "()"), {}});
  out.push_back({"simple_pcycle",
                 from_sigmas(4,
                             {{0, "(1 2 3)"},
                              {1, "(0 3 1 2)"},
                              {2, "(1 2 3)"},
                              {3, "(0 2)(1 3)"}},
                             "()"),
                 {}});
  out.push_back({"fixedp", from_sigmas(3, {{2, "(0 1 2)"}}, "()"), {}});
  out.push_back({"classification",
                 from_sigmas(3, {{2, "(0 2)"}}, "(0 1 2)"),
                 {cyclic3}});
  out.push_back({"block_bound",
                 from_sigmas(4, {{0, "(0 2)(1 3)"}, {2, "(0 2 3 1)"}}, "(0 3)"),
                 {}});
  out.push_back({"lemppow",
                 from_sigmas(4, {{1, "(0 2 3)"}, {3, "(0 2 3)"}}, "(0 3 1)"), {}});
  out.push_back({"latin",
                 rows_table({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}), {}});
  out.push_back({"cabling_laws", s3, {}});
  out.push_back({"mapbij", rows_table({{1, 0}, {0, 1}}), {}});
  out.push_back({"final_corollary",
                 from_sigmas(9,
                             {{0, "(0 1 2 3 4 5 6 7 8)"},
                              {1, "(0 1 2 3 4 5 6 7 8)"},
                              {2, "(0 2)"}},
                             "()"),
                 {}});
  out.push_back({"dehornoy_laws", s3, {}});
  out.push_back({"correspondence", s3, {}});
  auto const retractable4 = from_sigmas(
      4, {{1, "(0 2 1 3)"}, {2, "(0 2)"}}, "(0 1)(2 3)");
  out.push_back({"quotient_fibers", retractable4, {}});
  out.push_back({"simple_consequences", retractable4, {}});
  return out;
}

struct SelfTestResult
{
  std::string checker;
  bool detected = false;
  std::string reason;
};

/// Runs every checker on its injected violation with validation off.  A
/// checker without an injection is reported as not detected.
inline std::vector<SelfTestResult> self_test(VerifyOptions options = {})
{
  options.validate_members = false;
  auto const injections = injected_violations();
  std::vector<SelfTestResult> out;
  for (auto const &c : checkers()) {
    SelfTestResult r{c.id, false, "no injected violation"};
    for (auto const &inj : injections) {
      if (inj.checker != c.id)
        continue;
      Census census;
      census.n = inj.table.size();
      census.filter = "injected";
      census.representatives = inj.context;
      census.representatives.push_back(inj.table);
      auto v = run_checker(c, std::span<Census const>(&census, 1), options);
      r.reason = "not flagged";
      for (auto const &e : v.counterexamples)
        if (e.table == inj.table) {
          r.detected = replays(c.id, e, options);
          r.reason = e.reason;
        }
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// Squaring types of size n meeting the final corollary's hypothesis.
inline std::vector<std::vector<std::size_t>> final_corollary_types(std::size_t n)
{
  auto p = prime_power_base(n);
  std::vector<std::vector<std::size_t>> out;
  if (!p || *p == 2 || n == *p)
    return out;
  // partitions of n - p into parts prime to p, descending
  std::vector<std::size_t> parts;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left,
                                                          std::size_t max) {
    if (left == 0) {
      std::vector<std::size_t> type{*p};
      type.insert(type.end(), parts.begin(), parts.end());
      out.push_back(padded_type(type, n));
      return;
    }
    for (std::size_t part = std::min(left, max); part >= 1; --part) {
      if (std::gcd<std::size_t>(part, *p) != 1)
        continue;
      parts.push_back(part);
      rec(left - part, part);
      parts.pop_back();
    }
  };
  rec(n - *p, n - *p);
  return out;
}

/// The final corollary on the T-constrained slice of size n: every
/// indecomposable set whose squaring type meets the hypothesis is a
/// counterexample.
inline Verdict check_final_corollary_constrained(std::size_t n,
                                                 EnumerationOptions eo = {})
{
  auto const start = std::chrono::steady_clock::now();
  Verdict v;
  v.checker = "final_corollary";
  v.scope = "n=" + std::to_string(n) + " [indecomposable, T-constrained]";
  v.notes.emplace_back("statement", find_checker("final_corollary").statement);
  v.notes.emplace_back("engine", engine_version);
  if (!eo.max_size || *eo.max_size < n)
    eo.max_size = n;
  for (auto const &type : final_corollary_types(n)) {
    EnumerationFilter f;
    f.indecomposable = true;
    f.squaring_type = type;
    auto census = enumerate(n, f, eo);
    ++v.examined;
    v.notes.emplace_back("census.n=" + std::to_string(n) + "." + census.filter,
                         hex(census.hash()));
    for (auto const &X : census.representatives)
      v.counterexamples.push_back(
          {X, "hypothesis holds but X is indecomposable", {}});
  }
  v.elapsed_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return v;
}

} // namespace cycloid
