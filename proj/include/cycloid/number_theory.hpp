#pragma once

#include <cstdint>
#include <optional>
#include <set>

#include "errors.hpp"

namespace cycloid {

using prime_set = std::set<std::uint64_t>;

/// The set of primes dividing n.  prime_support(1) is empty.
inline prime_set prime_support(std::uint64_t n)
{
  if (n == 0)
    throw PreconditionFailed("prime_support: n must be positive");

  prime_set primes;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.insert(p);
      while (n % p == 0)
        n /= p;
    }
  }
  if (n > 1)
    primes.insert(n);
  return primes;
}

inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0)
      return false;
  return true;
}

/// If n = p^k with k >= 1, returns p.
inline std::optional<std::uint64_t> prime_power_base(std::uint64_t n)
{
  if (n < 2)
    return std::nullopt;
  auto primes = prime_support(n);
  if (primes.size() != 1)
    return std::nullopt;
  return *primes.begin();
}

/// Largest divisor of n that is a power of p.
inline std::uint64_t p_part(std::uint64_t n, std::uint64_t p)
{
  std::uint64_t part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  return part;
}

} // namespace cycloid
