#pragma once

// Exact truncated multiplication of integer power series by multi-modular
// number-theoretic transforms and Garner reconstruction. The number of primes
// is chosen from a rigorous coefficient bound, so the result is exact.

#include <gmpxx.h>

#include <array>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "modapprox/error.hpp"

namespace modapprox::ntt {

namespace detail {

constexpr std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

constexpr std::uint32_t primitive_root(std::uint32_t p) {
  std::uint32_t factors[32] = {};
  int nf = 0;
  std::uint32_t n = p - 1;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      factors[nf++] = d;
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors[nf++] = n;
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (int i = 0; i < nf && ok; ++i) ok = pow_mod(g, (p - 1) / factors[i], p) != 1;
    if (ok) return g;
  }
  return 0;
}

}  // namespace detail

// All primes are < 2^31 and admit transforms of length at least 2^22.
inline constexpr std::array<std::uint32_t, 8> kPrimes = {
    998244353u,   // 119 * 2^23 + 1
    167772161u,   // 5 * 2^25 + 1
    469762049u,   // 7 * 2^26 + 1
    754974721u,   // 45 * 2^24 + 1
    2013265921u,  // 15 * 2^27 + 1
    1811939329u,  // 27 * 2^26 + 1
    2113929217u,  // 63 * 2^25 + 1
    1224736769u,  // 73 * 2^24 + 1
};

inline constexpr int kMaxLog2Length = 23;

template <std::uint32_t Mod>
struct Field {
  static constexpr std::uint32_t root = detail::primitive_root(Mod);
  static constexpr int two_adicity = std::countr_zero(Mod - 1);
  static_assert(root != 0);
  static_assert(two_adicity >= kMaxLog2Length);
};

template <std::uint32_t Mod>
void transform(std::vector<std::uint32_t>& a, bool invert) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (!std::has_single_bit(n) || std::countr_zero(n) > kMaxLog2Length)
    throw PreconditionError("ntt: length must be a power of two <= 2^23");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // roots[half + j] = w_len^j for each stage length len = 2 * half.
  std::vector<std::uint32_t> roots(n);
  for (std::size_t half = 1; half < n; half <<= 1) {
    std::uint32_t w = detail::pow_mod(Field<Mod>::root, (Mod - 1) / (2 * half), Mod);
    if (invert) w = detail::pow_mod(w, Mod - 2, Mod);
    std::uint64_t cur = 1;
    for (std::size_t j = 0; j < half; ++j) {
      roots[half + j] = static_cast<std::uint32_t>(cur);
      cur = cur * w % Mod;
    }
  }

  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * half) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::uint32_t u = a[i + j];
        const std::uint32_t v =
            static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[i + j + half]) * roots[half + j] % Mod);
        std::uint32_t s = u + v;
        if (s >= Mod) s -= Mod;
        a[i + j] = s;
        a[i + j + half] = u >= v ? u - v : u + Mod - v;
      }
    }
  }

  if (invert) {
    const std::uint64_t inv_n = detail::pow_mod(n, Mod - 2, Mod);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * inv_n % Mod);
  }
}

namespace detail {

// Coefficients prepared for fast residue extraction.
struct Prepared {
  bool small = true;
  std::vector<std::int64_t> small_values;
  const std::vector<mpz_class>* big = nullptr;
  std::size_t len = 0;
};

inline Prepared prepare(const std::vector<mpz_class>& a, std::size_t len) {
  Prepared p;
  p.len = len;
  p.big = &a;
  for (std::size_t i = 0; i < len && p.small; ++i) p.small = a[i].fits_slong_p();
  if (p.small) {
    p.small_values.resize(len);
    for (std::size_t i = 0; i < len; ++i) p.small_values[i] = a[i].get_si();
  }
  return p;
}

template <std::uint32_t Mod>
void residues(const Prepared& in, std::vector<std::uint32_t>& out) {
  if (in.small) {
    for (std::size_t i = 0; i < in.len; ++i) {
      std::int64_t r = in.small_values[i] % static_cast<std::int64_t>(Mod);
      if (r < 0) r += Mod;
      out[i] = static_cast<std::uint32_t>(r);
    }
  } else {
    for (std::size_t i = 0; i < in.len; ++i)
      out[i] = static_cast<std::uint32_t>(mpz_fdiv_ui((*in.big)[i].get_mpz_t(), Mod));
  }
}

template <std::uint32_t Mod>
std::vector<std::uint32_t> convolve_mod(const Prepared& a, const Prepared& b, bool same, std::size_t size,
                                        std::size_t out_len) {
  std::vector<std::uint32_t> fa(size, 0);
  residues<Mod>(a, fa);
  transform<Mod>(fa, false);
  if (same) {
    for (auto& x : fa) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * x % Mod);
  } else {
    std::vector<std::uint32_t> fb(size, 0);
    residues<Mod>(b, fb);
    transform<Mod>(fb, false);
    for (std::size_t i = 0; i < size; ++i)
      fa[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(fa[i]) * fb[i] % Mod);
  }
  transform<Mod>(fa, true);
  fa.resize(out_len);
  return fa;
}

using ConvolveFn = std::vector<std::uint32_t> (*)(const Prepared&, const Prepared&, bool, std::size_t, std::size_t);

template <std::size_t... I>
constexpr std::array<ConvolveFn, sizeof...(I)> make_table(std::index_sequence<I...>) {
  return {&convolve_mod<kPrimes[I]>...};
}

inline constexpr auto kConvolve = make_table(std::make_index_sequence<kPrimes.size()>{});

inline mpz_class max_abs(const std::vector<mpz_class>& a, std::size_t len) {
  mpz_class m = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (mpz_cmpabs(a[i].get_mpz_t(), m.get_mpz_t()) > 0) m = abs(a[i]);
  }
  return m;
}

}  // namespace detail

/// Coefficients 0..out_len-1 of the product a*b, computed exactly.
inline std::vector<mpz_class> multiply_truncated(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                                 std::size_t out_len) {
  std::vector<mpz_class> out(out_len, 0);
  const std::size_t la = std::min(a.size(), out_len);
  const std::size_t lb = std::min(b.size(), out_len);
  if (la == 0 || lb == 0) return out;

  const bool same = (&a == &b);
  const std::size_t full = la + lb - 1;
  const std::size_t size = std::bit_ceil(full);
  if (std::countr_zero(size) > kMaxLog2Length) throw PreconditionError("ntt: product too long");

  // |c_n| <= min(la, lb) * max|a| * max|b|; need prod(primes) > 2 * bound.
  const mpz_class bound = mpz_class(std::min(la, lb)) * detail::max_abs(a, la) * detail::max_abs(b, lb);
  const mpz_class need = 2 * bound + 1;
  std::size_t k = 0;
  mpz_class modulus = 1;
  while (modulus <= need) {
    if (k == kPrimes.size()) throw ComputationError("ntt: coefficient bound exceeds CRT capacity");
    modulus *= kPrimes[k++];
  }

  const detail::Prepared pa = detail::prepare(a, la);
  const detail::Prepared pb = same ? pa : detail::prepare(b, lb);
  const std::size_t keep = std::min(out_len, full);
  std::vector<std::vector<std::uint32_t>> res(k);
  for (std::size_t i = 0; i < k; ++i) res[i] = detail::kConvolve[i](pa, pb, same, size, keep);

  // Garner: inv[i][j] = p_j^{-1} mod p_i for j < i.
  std::array<std::array<std::uint32_t, kPrimes.size()>, kPrimes.size()> inv{};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j)
      inv[i][j] = detail::pow_mod(kPrimes[j] % kPrimes[i], kPrimes[i] - 2, kPrimes[i]);

  const mpz_class half = modulus / 2;
  const bool fits128 = mpz_sizeinbase(modulus.get_mpz_t(), 2) <= 126;
  unsigned __int128 modulus128 = 1;
  if (fits128) {
    for (std::size_t i = 0; i < k; ++i) modulus128 *= kPrimes[i];
  }

  std::array<std::uint64_t, kPrimes.size()> v{};
  mpz_class x;
  for (std::size_t n = 0; n < keep; ++n) {
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t t = res[i][n];
      const std::uint64_t p = kPrimes[i];
      for (std::size_t j = 0; j < i; ++j) {
        t = (t + p - v[j] % p) % p;
        t = t * inv[i][j] % p;
      }
      v[i] = t;
    }
    if (fits128) {
      unsigned __int128 acc = v[k - 1];
      for (std::size_t i = k - 1; i-- > 0;) acc = acc * kPrimes[i] + v[i];
      const bool negative = acc > modulus128 / 2;
      const unsigned __int128 mag = negative ? modulus128 - acc : acc;
      const auto hi = static_cast<std::uint64_t>(mag >> 64);
      const auto lo = static_cast<std::uint64_t>(mag);
      x = static_cast<unsigned long>(hi);
      x <<= 64;
      x += static_cast<unsigned long>(lo);
      if (negative) x = -x;
    } else {
      x = static_cast<unsigned long>(v[k - 1]);
      for (std::size_t i = k - 1; i-- > 0;) {
        x *= static_cast<unsigned long>(kPrimes[i]);
        x += static_cast<unsigned long>(v[i]);
      }
      if (x > half) x -= modulus;
    }
    out[n] = x;
  }
  return out;
}

inline std::vector<mpz_class> square_truncated(const std::vector<mpz_class>& a, std::size_t out_len) {
  return multiply_truncated(a, a, out_len);
}

}  // namespace modapprox::ntt
