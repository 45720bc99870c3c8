#pragma once

#include <optional>
#include <stop_token>
#include <vector>

#include "cycle_set.hpp"

namespace cycloid {

struct CanonicalLabeling
{
  CycleSet form;
  Permutation relabeling; // old point -> canonical label
};

namespace detail {

/// Branch and bound for the lexicographically least row-major table over
/// all relabelings.  New labels are handed out in increasing order: a value
/// whose preimage is still unlabeled can only be minimal by taking the next
/// free label, so it is forced.  Only entries in row 0 ever need a branch.
class CanonicalSearch
{
public:
  CanonicalSearch(CycleSet const &X, std::stop_token stop)
    : X_(X), n_(X.size()), stop_(std::move(stop)), new_of_(n_, unset),
      old_of_(n_, unset), cur_(n_ * n_), best_(n_ * n_), swap_class_(n_)
  {
    // Points u, v with (u v) ∈ Aut(X) give identical subtrees whenever both
    // are still unlabeled; such transpositions form an equivalence.
    for (point u = 0; u < n_; ++u) {
      swap_class_[u] = u;
      for (point v = 0; v < u; ++v)
        if (swap_class_[v] == v && transposition_is_automorphism(v, u)) {
          swap_class_[u] = v;
          break;
        }
    }
  }

  CanonicalLabeling run()
  {
    if (n_ == 0)
      return {X_, Permutation::identity(0)};
    for (point v = 0; v < n_; ++v) {
      if (swap_class_[v] != v)
        continue;
      assign(v);
      descend(0, have_best_ ? order::equal : order::better);
      unassign();
    }
    return {CycleSet::from_table_unchecked(n_, best_),
            Permutation::from_images_unchecked(best_relabeling_)};
  }

private:
  static constexpr point unset = ~point{0};
  enum class order { equal, better };

  void assign(point old)
  {
    new_of_[old] = next_;
    old_of_[next_] = old;
    ++next_;
  }

  void unassign()
  {
    --next_;
    new_of_[old_of_[next_]] = unset;
    old_of_[next_] = unset;
  }

  void descend(std::size_t pos, order state)
  {
    if ((pos & 63) == 0 && stop_.stop_requested())
      throw Cancelled();
    std::size_t const start_next = next_;
    auto restore = [&] {
      while (next_ > start_next)
        unassign();
    };

    for (; pos < n_ * n_; ++pos) {
      point const i = static_cast<point>(pos / n_);
      point const j = static_cast<point>(pos % n_);
      if (old_of_[j] == unset) {
        // Only reachable in row 0 with j == next_.  Once a child has
        // improved the best table, its prefix equals ours again.
        auto const version = best_version_;
        std::vector<bool> tried(n_, false);
        for (point v = 0; v < n_; ++v) {
          if (new_of_[v] != unset || tried[swap_class_[v]])
            continue;
          tried[swap_class_[v]] = true;
          assign(v);
          bool const tied = state == order::equal || best_version_ != version;
          descend(pos, tied ? order::equal : order::better);
          unassign();
        }
        restore();
        return;
      }
      point const w = X_(old_of_[i], old_of_[j]);
      if (new_of_[w] == unset)
        assign(w);
      point const val = new_of_[w];
      cur_[pos] = val;
      if (state == order::equal && have_best_) {
        if (val > best_[pos]) {
          restore();
          return;
        }
        if (val < best_[pos])
          state = order::better;
      }
    }

    if (!have_best_ || state == order::better) {
      best_ = cur_;
      best_relabeling_ = new_of_;
      have_best_ = true;
      ++best_version_;
    }
    restore();
  }

  bool transposition_is_automorphism(point a, point b) const
  {
    auto tau = [&](point x) { return x == a ? b : x == b ? a : x; };
    for (point x = 0; x < n_; ++x)
      for (point y = 0; y < n_; ++y)
        if (tau(X_(x, y)) != X_(tau(x), tau(y)))
          return false;
    return true;
  }

  CycleSet const &X_;
  std::size_t n_;
  std::stop_token stop_;
  std::vector<point> new_of_, old_of_;
  std::size_t next_ = 0;
  std::vector<point> cur_, best_;
  std::vector<point> best_relabeling_;
  bool have_best_ = false;
  std::size_t best_version_ = 0;
  std::vector<point> swap_class_;
};

} // namespace detail

inline CanonicalLabeling canonical_labeling(CycleSet const &X,
                                            std::stop_token stop = {})
{
  return detail::CanonicalSearch(X, std::move(stop)).run();
}

/// Lexicographically least row-major table among all relabelings of X.
inline CycleSet canonical_form(CycleSet const &X, std::stop_token stop = {})
{
  return canonical_labeling(X, std::move(stop)).form;
}

/// An isomorphism a -> b, if one exists.
inline std::optional<Permutation> find_isomorphism(CycleSet const &a,
                                                   CycleSet const &b)
{
  if (a.size() != b.size())
    return std::nullopt;
  auto ca = canonical_labeling(a);
  auto cb = canonical_labeling(b);
  if (ca.form != cb.form)
    return std::nullopt;
  return cb.relabeling.inverse() * ca.relabeling;
}

inline bool is_isomorphic(CycleSet const &a, CycleSet const &b)
{
  return find_isomorphism(a, b).has_value();
}

/// Exhaustive isomorphism test over all n! bijections; independent of the
/// canonical form machinery and only meant for small n.
inline std::optional<Permutation> find_isomorphism_naive(CycleSet const &a,
                                                         CycleSet const &b)
{
  auto const n = a.size();
  if (n != b.size())
    return std::nullopt;
  std::vector<point> map(n);
  std::iota(map.begin(), map.end(), point{0});
  do {
    if (is_homomorphism(a, b, map))
      return Permutation::from_images_unchecked(map);
  } while (std::next_permutation(map.begin(), map.end()));
  return std::nullopt;
}

} // namespace cycloid
