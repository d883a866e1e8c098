#pragma once

#include <cstdint>
#include <vector>

#include "modapprox/error.hpp"

namespace modapprox {

// Smallest-prime-factor sieve over [0, limit]; spf[0] = 0, spf[1] = 1.
inline std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  if (limit >= 1) spf[1] = 1;
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = i;
      primes.push_back(i);
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t ip = static_cast<std::uint64_t>(i) * p;
      if (p > spf[i] || ip > limit) break;
      spf[ip] = p;
    }
  }
  return spf;
}

inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  const auto spf = smallest_prime_factors(limit);
  for (std::uint32_t i = 2; i <= limit; ++i)
    if (spf[i] == i) out.push_back(i);
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % p == 0) return n == p;
  }
  for (std::uint64_t d = 17; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Number of positive divisors of n, from a smallest-prime-factor table
/// covering n.
inline std::uint32_t divisor_function(std::uint64_t n, const std::vector<std::uint32_t>& spf) {
  if (n == 0) throw PreconditionError("divisor_function: n must be >= 1");
  if (n >= spf.size()) throw PreconditionError("divisor_function: n exceeds sieve range");
  std::uint32_t d = 1;
  while (n > 1) {
    const std::uint32_t p = spf[n];
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    d *= e + 1;
  }
  return d;
}

inline std::uint32_t divisor_function(std::uint64_t n) {
  if (n == 0) throw PreconditionError("divisor_function: n must be >= 1");
  std::uint32_t d = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    d *= e + 1;
  }
  if (n > 1) d *= 2;
  return d;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace modapprox
