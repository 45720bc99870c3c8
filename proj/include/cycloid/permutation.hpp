#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace cycloid {

using point = std::uint32_t;

/// A bijection of {0, ..., n-1}, stored as its image array.
///
/// Composition convention: (a * b)(i) = a(b(i)), i.e. the right factor is
/// applied first.  Every formula in the library is written against this
/// convention.
class Permutation
{
public:
  Permutation() = default;

  /// Throws PreconditionFailed unless images is a bijection.
  explicit Permutation(std::vector<point> images) : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size(), false);
    for (point v : images_) {
      if (v >= images_.size() || seen[v])
        throw PreconditionFailed("image array is not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n)
  {
    std::vector<point> images(n);
    std::iota(images.begin(), images.end(), point{0});
    return Permutation(std::move(images), unchecked_tag{});
  }

  /// Trusted construction for hot paths that already guarantee bijectivity.
  static Permutation from_images_unchecked(std::vector<point> images)
  {
    return Permutation(std::move(images), unchecked_tag{});
  }

  std::size_t degree() const { return images_.size(); }

  point operator()(point i) const { return images_[i]; }
  point operator[](point i) const { return images_[i]; }

  std::span<point const> images() const { return images_; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Permutation inverse() const
  {
    std::vector<point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      inv[images_[i]] = static_cast<point>(i);
    return Permutation(std::move(inv), unchecked_tag{});
  }

  /// Integer power; negative exponents use the inverse.
  Permutation pow(long long k) const;

  /// Order in Sym(n): lcm of the cycle lengths.
  std::uint64_t order() const;

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &, Permutation const &) = default;

private:
  struct unchecked_tag {};
  Permutation(std::vector<point> images, unchecked_tag)
    : images_(std::move(images))
  {}

  std::vector<point> images_;
};

/// a * b: apply b, then a.
inline Permutation compose(Permutation const &a, Permutation const &b)
{
  if (a.degree() != b.degree())
    throw DegreeMismatch(a.degree(), b.degree());
  std::vector<point> images(a.degree());
  for (point i = 0; i < a.degree(); ++i)
    images[i] = a(b(i));
  return Permutation::from_images_unchecked(std::move(images));
}

inline Permutation operator*(Permutation const &a, Permutation const &b)
{
  return compose(a, b);
}

/// Disjoint cycles in order of their smallest point.  Fixed points are
/// included as 1-cycles when include_fixed is set.
inline std::vector<std::vector<point>> cycles(Permutation const &p,
                                              bool include_fixed = false)
{
  std::vector<std::vector<point>> result;
  std::vector<bool> seen(p.degree(), false);
  for (point start = 0; start < p.degree(); ++start) {
    if (seen[start])
      continue;
    std::vector<point> cycle;
    for (point i = start; !seen[i]; i = p(i)) {
      seen[i] = true;
      cycle.push_back(i);
    }
    if (cycle.size() > 1 || include_fixed)
      result.push_back(std::move(cycle));
  }
  return result;
}

/// Multiset of cycle lengths including fixed points, sorted descending.
inline std::vector<std::size_t> cycle_type(Permutation const &p)
{
  std::vector<std::size_t> lengths;
  for (auto const &c : cycles(p, true))
    lengths.push_back(c.size());
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

inline std::uint64_t Permutation::order() const
{
  std::uint64_t result = 1;
  for (auto len : cycle_type(*this))
    result = std::lcm(result, static_cast<std::uint64_t>(len));
  return result;
}

inline Permutation Permutation::pow(long long k) const
{
  Permutation base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k)
                               : static_cast<unsigned long long>(k);
  auto const ord = order();
  e %= ord;
  Permutation result = identity(degree());
  while (e > 0) {
    if (e & 1)
      result = compose(base, result);
    base = compose(base, base);
    e >>= 1;
  }
  return result;
}

/// True iff p moves exactly `length` points forming a single cycle.
inline bool is_single_cycle_of_length(Permutation const &p, std::size_t length)
{
  auto moved = cycles(p);
  return moved.size() == 1 && moved.front().size() == length;
}

/// Cycle notation, e.g. "(0 1)(2 3 4)"; "()" for the identity.  Points are
/// printed shifted by `base` (use 1 for the 1-based convention).
inline std::string to_cycle_string(Permutation const &p, point base = 0)
{
  std::string out;
  for (auto const &c : cycles(p)) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i)
        out += ' ';
      out += std::to_string(c[i] + base);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

/// Parses cycle notation such as "(1 2)(3,4,5)" on n points.  Points in the
/// text are offset by `base` (1 for the 1-based convention).
inline Permutation parse_cycles(std::string_view text, std::size_t n,
                                point base = 0)
{
  std::vector<point> images(n);
  std::iota(images.begin(), images.end(), point{0});
  std::vector<bool> used(n, false);

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == ',' || text[pos] == '\t'))
      ++pos;
  };

  while (true) {
    skip_space();
    if (pos == text.size())
      break;
    if (text[pos] != '(')
      throw ParseError("cycle notation: expected '(' at offset " +
                       std::to_string(pos));
    ++pos;
    std::vector<point> cycle;
    while (true) {
      skip_space();
      if (pos == text.size())
        throw ParseError("cycle notation: unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] < '0' || text[pos] > '9')
        throw ParseError("cycle notation: unexpected character '" +
                         std::string(1, text[pos]) + "'");
      std::uint64_t value = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
        value = value * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
      if (value < base || value - base >= n)
        throw ParseError("cycle notation: point " + std::to_string(value) +
                         " out of range");
      auto pt = static_cast<point>(value - base);
      if (used[pt])
        throw ParseError("cycle notation: point " + std::to_string(value) +
                         " repeated");
      used[pt] = true;
      cycle.push_back(pt);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
  }
  return Permutation::from_images_unchecked(std::move(images));
}

struct PermutationHash
{
  std::size_t operator()(Permutation const &p) const noexcept
  {
    std::uint64_t h = 1469598103934665603ull;
    for (point v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

} // namespace cycloid
