#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "canonical.hpp"
#include "congruence.hpp"
#include "cycle_set.hpp"
#include "errors.hpp"
#include "permutation.hpp"

namespace cycloid {

inline constexpr char const *engine_version = "cycloid-enum/1";
inline constexpr std::size_t default_max_enumeration_size = 8;

/// The enumeration size cap: CYCLOID_MAX_SIZE if set, else 8.
inline std::size_t max_enumeration_size()
{
  if (char const *env = std::getenv("CYCLOID_MAX_SIZE")) {
    char *end = nullptr;
    auto v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return v;
  }
  return default_max_enumeration_size;
}

/// Cycle type with 1s padded to n, descending.
inline std::vector<std::size_t> padded_type(std::vector<std::size_t> type,
                                            std::size_t n)
{
  std::size_t total = std::accumulate(type.begin(), type.end(), std::size_t{0});
  for (; total < n; ++total)
    type.push_back(1);
  std::sort(type.rbegin(), type.rend());
  return type;
}

/// Conjunction of optional isomorphism-invariant conditions; the default
/// filter accepts everything.
struct EnumerationFilter
{
  bool indecomposable = false;
  bool latin = false;
  bool simple = false;
  bool irretractable = false;
  bool nilpotent = false; // G(X) nilpotent
  std::optional<std::vector<std::size_t>> squaring_type; // descending
  std::function<bool(std::uint64_t)> group_order;        // on |G(X)|
  std::string group_order_label = "custom";

  bool empty() const
  {
    return !indecomposable && !latin && !simple && !irretractable &&
           !nilpotent && !squaring_type && !group_order;
  }

  /// Conditions that cost at most a few passes over the table.
  bool accepts_cheap(CycleSet const &X) const
  {
    if (squaring_type &&
        cycle_type(squaring_map(X)) != padded_type(*squaring_type, X.size()))
      return false;
    if (latin && !is_latin(X))
      return false;
    if (indecomposable && !is_indecomposable(X))
      return false;
    if (irretractable && !is_irretractable(X))
      return false;
    return true;
  }

  bool accepts_expensive(CycleSet const &X) const
  {
    if (simple && !is_simple(X))
      return false;
    if (nilpotent || group_order) {
      auto G = perm_group(X);
      if (nilpotent && !is_nilpotent(G))
        return false;
      if (group_order && !group_order(G.order()))
        return false;
    }
    return true;
  }

  bool accepts(CycleSet const &X) const
  {
    return accepts_cheap(X) && accepts_expensive(X);
  }

  /// Stable textual form, e.g. "indecomposable,squaring=2.1.1" or "all".
  std::string describe() const
  {
    std::vector<std::string> parts;
    if (indecomposable)
      parts.push_back("indecomposable");
    if (latin)
      parts.push_back("latin");
    if (simple)
      parts.push_back("simple");
    if (irretractable)
      parts.push_back("irretractable");
    if (nilpotent)
      parts.push_back("nilpotent");
    if (squaring_type) {
      std::string s = "squaring=";
      for (std::size_t i = 0; i < squaring_type->size(); ++i)
        s += (i ? "." : "") + std::to_string((*squaring_type)[i]);
      parts.push_back(s);
    }
    if (group_order)
      parts.push_back("group_order=" + group_order_label);
    if (parts.empty())
      return "all";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
      out += "," + parts[i];
    return out;
  }
};

/// Standard representative of a cycle type: cycles in the given order on
/// consecutive points.
inline Permutation type_representative(std::vector<std::size_t> const &type,
                                       std::size_t n)
{
  std::vector<point> img(n);
  std::iota(img.begin(), img.end(), point{0});
  point start = 0;
  for (auto len : type) {
    if (start + len > n)
      throw PreconditionFailed("cycle type does not fit the degree");
    for (point i = 0; i < len; ++i)
      img[start + i] = static_cast<point>(start + (i + 1) % len);
    start += static_cast<point>(len);
  }
  return Permutation(std::move(img));
}

/// Conjugacy invariant of a row together with its own index: the cycle type
/// of σ_x and the length of the σ_x-cycle through x.  Ordered so that long
/// cycles come first and the identity comes last.
struct RowKey
{
  std::vector<std::size_t> type;
  std::size_t own = 1;

  friend bool operator==(RowKey const &, RowKey const &) = default;
  friend bool operator<(RowKey const &a, RowKey const &b)
  {
    if (a.type != b.type)
      return a.type > b.type;
    return a.own > b.own;
  }
};

inline RowKey row_key(std::span<point const> row, point x)
{
  auto const n = row.size();
  RowKey k;
  std::vector<bool> seen(n, false);
  for (point s = 0; s < n; ++s) {
    if (seen[s])
      continue;
    std::size_t len = 0;
    bool has_x = false;
    for (point c = s; !seen[c]; c = row[c]) {
      seen[c] = true;
      has_x |= c == x;
      ++len;
    }
    k.type.push_back(len);
    if (has_x)
      k.own = len;
  }
  std::sort(k.type.rbegin(), k.type.rend());
  return k;
}

/// Every row key for degree n, in increasing order.
inline std::vector<RowKey> all_row_keys(std::size_t n)
{
  std::vector<RowKey> keys;
  std::vector<std::size_t> part;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left,
                                                          std::size_t max) {
    if (left == 0) {
      std::set<std::size_t> own(part.begin(), part.end());
      for (auto l : own)
        keys.push_back({part, l});
      return;
    }
    for (std::size_t p = std::min(left, max); p >= 1; --p) {
      part.push_back(p);
      rec(left - p, p);
      part.pop_back();
    }
  };
  rec(n, n);
  std::sort(keys.begin(), keys.end());
  return keys;
}

/// The fixed σ_0 used for a key: the cycle through 0 first, then the rest
/// in descending length.
inline Permutation key_representative(RowKey const &k, std::size_t n)
{
  std::vector<std::size_t> order{k.own};
  bool skipped = false;
  for (auto l : k.type) {
    if (l == k.own && !skipped) {
      skipped = true;
      continue;
    }
    order.push_back(l);
  }
  return type_representative(order, n);
}

enum class SymmetryBreaking {
  none,     // every labelled table is visited
  first_row // σ_0 is the representative of the least row key present
};

/// Search space selector.  With a prescribed squaring map the diagonal is
/// fixed and no row symmetry is broken.
struct SearchMode
{
  SymmetryBreaking symmetry = SymmetryBreaking::first_row;
  std::optional<Permutation> squaring;
};

/// One independent piece of the search: every table whose first rows equal
/// `prefix`.  An empty prefix is the whole space.
struct WorkItem
{
  table_rows prefix;
};

namespace detail {

/// Cell-wise backtracking over the table in row-major order with
/// propagation of the cycloid equation.  When all six cells of a triple
/// but one are known the last is forced; a contradiction prunes.
class TableSearch
{
public:
  TableSearch(std::size_t n, SearchMode mode, std::stop_token stop = {})
    : n_(n), mode_(std::move(mode)), stop_(std::move(stop)),
      t_(n * n, unset), inv_(n * n, unset), diag_used_(n, false),
      row_fill_(n, 0)
  {
    if (mode_.squaring)
      mode_.symmetry = SymmetryBreaking::none;
  }

  /// Calls leaf(*this) for each consistent state whose first `depth` rows
  /// are complete (depth = n: each complete table).
  template <class Leaf>
  void run(table_rows const &prefix, std::size_t depth, Leaf &&leaf)
  {
    depth_cells_ = depth * n_;
    if (mode_.squaring)
      for (point x = 0; x < n_; ++x)
        if (!assign(x * n_ + x, (*mode_.squaring)(x)) || !propagate())
          return;
    bool const break_rows = mode_.symmetry == SymmetryBreaking::first_row;
    if (break_rows && !prefix.empty())
      key0_ = row_key(prefix[0], 0);
    for (point r = 0; r < prefix.size(); ++r)
      for (point c = 0; c < n_; ++c)
        if (!assign(r * n_ + c, prefix[r][c]) || !propagate())
          return;
    if (depth_cells_ == 0 || !break_rows || !prefix.empty()) {
      descend(0, leaf);
      return;
    }
    for (auto const &k : all_row_keys(n_)) {
      auto rep = key_representative(k, n_);
      key0_ = k;
      auto mark = trail_.size();
      bool ok = true;
      for (point c = 0; c < n_ && ok; ++c)
        ok = assign(c, rep(c)) && propagate();
      if (ok)
        descend(0, leaf);
      undo(mark);
    }
  }

  std::size_t size() const { return n_; }
  std::vector<point> const &table() const { return t_; }

  table_rows rows(std::size_t count) const
  {
    table_rows r(count);
    for (std::size_t x = 0; x < count; ++x)
      r[x].assign(t_.begin() + x * n_, t_.begin() + (x + 1) * n_);
    return r;
  }

  std::uint64_t nodes() const { return nodes_; }

private:
  static constexpr point unset = static_cast<point>(-1);

  template <class Leaf> void descend(std::size_t pos, Leaf &leaf)
  {
    if ((++nodes_ & 1023) == 0 && stop_.stop_requested())
      throw Cancelled();
    while (pos < n_ * n_ && t_[pos] != unset)
      ++pos;
    if (pos >= depth_cells_) {
      leaf(*this);
      return;
    }
    auto const r = static_cast<point>(pos / n_), c = static_cast<point>(pos % n_);
    for (point v = 0; v < n_; ++v) {
      if (inv_[r * n_ + v] != unset || (r == c && diag_used_[v]))
        continue;
      auto mark = trail_.size();
      if (assign(pos, v) && propagate())
        descend(pos + 1, leaf);
      undo(mark);
    }
  }

  point at(point x, point y) const { return t_[x * n_ + y]; }

  bool assign(std::size_t cell, point v)
  {
    if (t_[cell] != unset)
      return t_[cell] == v;
    auto const r = static_cast<point>(cell / n_), c = static_cast<point>(cell % n_);
    if (inv_[r * n_ + v] != unset || (r == c && diag_used_[v]))
      return false;
    t_[cell] = v;
    inv_[r * n_ + v] = c;
    if (r == c)
      diag_used_[v] = true;
    trail_.push_back(static_cast<std::uint32_t>(cell));
    queue_.push_back(static_cast<std::uint32_t>(cell));
    if (++row_fill_[r] == n_ && key0_ && r != 0 &&
        row_key(std::span<point const>(t_.data() + r * n_, n_), r) < *key0_)
      return false;
    return true;
  }

  void undo(std::size_t mark)
  {
    while (trail_.size() > mark) {
      auto cell = trail_.back();
      trail_.pop_back();
      auto const r = cell / n_, c = cell % n_;
      auto v = t_[cell];
      inv_[r * n_ + v] = unset;
      if (r == c)
        diag_used_[v] = false;
      --row_fill_[r];
      t_[cell] = unset;
    }
    queue_.clear();
  }

  /// The triple (x, y, z): σ_{x·y}(x·z) = σ_{y·x}(y·z).
  bool check(point x, point y, point z)
  {
    if (x == y)
      return true;
    auto p = at(x, y), q = at(y, x), u = at(x, z), v = at(y, z);
    if (p == unset || q == unset || u == unset || v == unset)
      return true;
    auto l = at(p, u), r = at(q, v);
    if (l != unset && r != unset)
      return l == r;
    if (l != unset)
      return assign(q * n_ + v, l);
    if (r != unset)
      return assign(p * n_ + u, r);
    return true;
  }

  bool propagate()
  {
    while (!queue_.empty()) {
      auto cell = queue_.back();
      queue_.pop_back();
      auto const a = static_cast<point>(cell / n_),
                 b = static_cast<point>(cell % n_);
      for (point w = 0; w < n_; ++w) {
        // (a, b) as x·y, as x·z, and as the outer cell (x·y)·(x·z).
        if (!check(a, b, w) || !check(a, w, b))
          return false;
        auto y = inv_[w * n_ + a], z = inv_[w * n_ + b];
        if (y != unset && z != unset && !check(w, y, z))
          return false;
      }
    }
    return true;
  }

  std::size_t n_;
  SearchMode mode_;
  std::stop_token stop_;
  std::vector<point> t_, inv_;
  std::vector<bool> diag_used_;
  std::vector<std::size_t> row_fill_;
  std::vector<std::uint32_t> trail_, queue_;
  std::optional<RowKey> key0_;
  std::size_t depth_cells_ = 0;
  std::uint64_t nodes_ = 0;
};

inline void require_size(std::size_t n, std::optional<std::size_t> cap)
{
  auto const limit = cap ? *cap : max_enumeration_size();
  if (n == 0)
    throw PreconditionFailed("enumeration size must be positive");
  if (n > limit)
    throw CapExceeded("size " + std::to_string(n) + " exceeds the cap of " +
                      std::to_string(limit));
}

/// nullopt when the requested squaring type cannot occur at size n.
inline std::optional<SearchMode> mode_for(EnumerationFilter const &f, std::size_t n,
                           SymmetryBreaking symmetry, bool use_squaring)
{
  SearchMode mode{symmetry, std::nullopt};
  if (f.squaring_type && use_squaring) {
    auto type = padded_type(*f.squaring_type, n);
    if (std::accumulate(type.begin(), type.end(), std::size_t{0}) != n)
      return std::nullopt;
    mode.squaring = type_representative(type, n);
  }
  return mode;
}

} // namespace detail

/// Partitions the search by the first `prefix_depth` rows.  Distinct items
/// cover disjoint sets of tables and together cover all of them.
inline std::vector<WorkItem> split_work(std::size_t n, std::size_t prefix_depth,
                                        SearchMode mode = {})
{
  if (prefix_depth >= n && n > 0)
    throw PreconditionFailed("prefix depth must be below n");
  std::vector<WorkItem> items;
  detail::TableSearch search(n, std::move(mode));
  search.run({}, prefix_depth, [&](detail::TableSearch const &s) {
    items.push_back({s.rows(prefix_depth)});
  });
  return items;
}

struct Census
{
  std::size_t n = 0;
  std::string filter = "all";
  std::vector<CycleSet> representatives; // canonical forms, ascending
  std::string engine = engine_version;
  double wall_clock_seconds = 0;

  std::size_t count() const { return representatives.size(); }

  /// FNV-1a over n and the representative tables.
  std::uint64_t hash() const
  {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    };
    mix(n);
    for (auto const &X : representatives)
      for (auto v : X.flat())
        mix(v);
    return h;
  }

  /// Same size, filter and representatives; timing is ignored.
  bool same_content(Census const &o) const
  {
    return n == o.n && filter == o.filter &&
           representatives == o.representatives;
  }
};

struct EnumerationOptions
{
  unsigned jobs = 1;
  std::size_t prefix_depth = 2;
  SymmetryBreaking symmetry = SymmetryBreaking::first_row;
  bool use_squaring_constraint = true;
  std::optional<std::size_t> max_size;
  std::stop_token stop;
  /// Called with (finished, total) work items; serialized by the caller.
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Every non-degenerate cycle set of size n passing `filter`, up to
/// isomorphism, as sorted canonical forms.  Output does not depend on the
/// number of jobs.
inline Census enumerate(std::size_t n, EnumerationFilter const &filter = {},
                        EnumerationOptions const &options = {})
{
  auto const start = std::chrono::steady_clock::now();
  detail::require_size(n, options.max_size);
  auto mode = detail::mode_for(filter, n, options.symmetry,
                               options.use_squaring_constraint);
  auto depth = std::min(options.prefix_depth, n - 1);
  auto items = mode ? split_work(n, depth, *mode) : std::vector<WorkItem>{};

  std::vector<std::set<std::vector<point>>> found(items.size());
  std::atomic<std::size_t> next{0}, done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::stop_source abort;

  auto worker = [&] {
    try {
      while (true) {
        auto i = next.fetch_add(1);
        if (i >= items.size() || abort.stop_requested())
          return;
        detail::TableSearch search(n, *mode, options.stop);
        search.run(items[i].prefix, n, [&](detail::TableSearch const &s) {
          if (auto r = CycleSet::check(n, s.table()))
            throw Error("enumerator produced an invalid table: " +
                        r->message());
          auto X = CycleSet::from_table_unchecked(n, s.table());
          if (filter.accepts_cheap(X))
            found[i].insert(canonical_form(X, options.stop).flat());
        });
        auto d = ++done;
        if (options.progress) {
          std::lock_guard lock(progress_mutex);
          options.progress(d, items.size());
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure)
        failure = std::current_exception();
      abort.request_stop();
    }
  };

  auto jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
  }
  if (failure)
    std::rethrow_exception(failure);

  std::set<std::vector<point>> all;
  for (auto &s : found)
    all.merge(s);
  Census census;
  census.n = n;
  census.filter = filter.describe();
  for (auto const &t : all) {
    auto X = CycleSet::from_table_unchecked(n, t);
    if (filter.accepts_expensive(X))
      census.representatives.push_back(std::move(X));
  }
  census.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return census;
}

namespace detail {

/// Isomorphism invariant used to bucket candidates in the oracle.
inline std::vector<std::vector<std::size_t>> oracle_invariant(CycleSet const &X)
{
  std::vector<std::vector<std::size_t>> inv;
  for (point x = 0; x < X.size(); ++x)
    inv.push_back(cycle_type(X.sigma(x)));
  std::sort(inv.begin(), inv.end());
  inv.push_back(cycle_type(squaring_map(X)));
  return inv;
}

} // namespace detail

/// Independent reference enumeration: loops over all tuples of row
/// permutations (n ≤ 4) or over rows with a partial cycloid check (n = 5),
/// validates each full table, and removes duplicates with the exhaustive
/// isomorphism test.  Shares no search code with enumerate().
inline Census brute_oracle(std::size_t n, EnumerationFilter const &filter = {})
{
  auto const start = std::chrono::steady_clock::now();
  if (n == 0)
    throw PreconditionFailed("oracle size must be positive");
  if (n > 5)
    throw CapExceeded("brute_oracle supports n <= 5");

  std::vector<std::vector<point>> perms;
  std::vector<point> p(n);
  std::iota(p.begin(), p.end(), point{0});
  do
    perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<std::vector<std::size_t>>, std::vector<CycleSet>> buckets;
  auto consider = [&](std::vector<point> const &t) {
    if (CycleSet::check(n, t))
      return;
    auto X = CycleSet::from_table_unchecked(n, t);
    auto &bucket = buckets[detail::oracle_invariant(X)];
    for (auto const &rep : bucket)
      if (find_isomorphism_naive(X, rep))
        return;
    bucket.push_back(std::move(X));
  };

  std::vector<point> t(n * n);
  // Rows 0..k placed: every triple whose six cells lie in those rows holds.
  auto partial_ok = [&](std::size_t k) {
    std::vector<bool> diag(n, false);
    for (std::size_t x = 0; x <= k; ++x) {
      if (diag[t[x * n + x]])
        return false;
      diag[t[x * n + x]] = true;
    }
    for (std::size_t x = 0; x <= k; ++x)
      for (std::size_t y = 0; y <= k; ++y) {
        auto a = t[x * n + y], b = t[y * n + x];
        if (a > k || b > k)
          continue;
        for (std::size_t z = 0; z < n; ++z)
          if (t[a * n + t[x * n + z]] != t[b * n + t[y * n + z]])
            return false;
      }
    return true;
  };
  std::function<void(std::size_t)> place = [&](std::size_t row) {
    if (row == n) {
      consider(t);
      return;
    }
    for (auto const &perm : perms) {
      std::copy(perm.begin(), perm.end(), t.begin() + row * n);
      if (n <= 4 || partial_ok(row))
        place(row + 1);
    }
  };
  place(0);

  Census census;
  census.n = n;
  census.filter = filter.describe();
  census.engine = "brute-oracle";
  for (auto const &[key, bucket] : buckets)
    for (auto const &X : bucket)
      if (filter.accepts(X))
        census.representatives.push_back(canonical_form(X));
  std::sort(census.representatives.begin(), census.representatives.end());
  census.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return census;
}

} // namespace cycloid
