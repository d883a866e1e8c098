#pragma once

// Inhomogeneous approximation: Minkowski witnesses for ||m theta + x|| < 3/m,
// block sums of min(phi(n), ||q_r theta||) over convergent blocks, and finite
// horizon infima of m ||m theta - x||.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "modapprox/bigfloat.hpp"
#include "modapprox/contfrac.hpp"
#include "modapprox/error.hpp"
#include "modapprox/rate.hpp"

namespace modapprox::inhomog {

/// A point of R/Z as an unsigned 128-bit fixed-point fraction of a turn.
using Turn = unsigned __int128;

inline constexpr std::uint64_t kReanchorInterval = std::uint64_t{1} << 16;
inline constexpr int kDriftBits = 100;       // tolerated drift at each re-anchor, 2^-100
inline constexpr int kRationalBits = 100;    // theta within 2^-100 / q of a rational a/q counts as rational

inline Turn to_turn(const mp::Float& x) {
  mp::Float f(x.precision() + 8);
  mpfr_frac(f.get(), x.get(), MPFR_RNDN);
  if (f.sign() < 0) mpfr_add_ui(f.get(), f.get(), 1, MPFR_RNDN);
  mpfr_mul_2ui(f.get(), f.get(), 128, MPFR_RNDN);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), f.get(), MPFR_RNDN);
  const mpz_class lo = z & mpz_class("18446744073709551615");
  const mpz_class hi = (z >> 64) & mpz_class("18446744073709551615");  // 2^128 wraps to 0
  return (static_cast<Turn>(hi.get_ui()) << 64) | static_cast<Turn>(lo.get_ui());
}

inline double turn_to_double(Turn t) { return std::ldexp(static_cast<double>(t), -128); }

/// ||t|| for a turn, in [0, 1/2].
inline double turn_distance(Turn t) {
  const Turn neg = Turn{0} - t;
  return turn_to_double(t < neg ? t : neg);
}

/// Fractional part of m * theta + shift, evaluated directly.
inline Turn direct_turn(const mp::Float& theta, const mp::Float& shift, std::uint64_t m) {
  const mpfr_prec_t prec = std::max(theta.precision(), shift.precision()) + 136;
  mp::Float v(prec);
  mpfr_mul_ui(v.get(), theta.get(), static_cast<unsigned long>(m), MPFR_RNDN);
  mpfr_add(v.get(), v.get(), shift.get(), MPFR_RNDN);
  return to_turn(v);
}

/// Walks m -> m theta + shift (mod 1) by wrapping 128-bit additions, with a
/// fresh high-precision evaluation every kReanchorInterval steps.
class PhaseWalk {
 public:
  PhaseWalk(const mp::Float& theta, const mp::Float& shift, std::uint64_t first_m = 1)
      : theta_(theta), shift_(shift), step_(to_turn(theta)), m_(first_m), phase_(direct_turn(theta, shift, first_m)) {}

  std::uint64_t m() const { return m_; }
  Turn phase() const { return phase_; }
  double distance() const { return turn_distance(phase_); }

  void advance() {
    ++m_;
    phase_ += step_;
    if (m_ % kReanchorInterval == 0) {
      const Turn exact = direct_turn(theta_, shift_, m_);
      const double drift = turn_distance(phase_ - exact);
      if (drift > max_drift_) max_drift_ = drift;
      if (drift > std::ldexp(1.0, -kDriftBits))
        throw ComputationError("phase walk drifted beyond 2^-100 at m = " + std::to_string(m_));
      phase_ = exact;
      ++anchors_;
    }
  }

  double max_drift() const { return max_drift_; }
  std::uint64_t anchors() const { return anchors_; }

 private:
  mp::Float theta_;
  mp::Float shift_;
  Turn step_;
  std::uint64_t m_;
  Turn phase_;
  double max_drift_ = 0.0;
  std::uint64_t anchors_ = 0;
};

/// Calls visit(m, ||m theta + shift||) for m_first <= m <= m_last.
inline void scan(const mp::Float& theta, const mp::Float& shift, std::uint64_t m_first, std::uint64_t m_last,
                 const std::function<void(std::uint64_t, double)>& visit) {
  if (m_first > m_last) return;
  PhaseWalk walk(theta, shift, m_first);
  for (;;) {
    visit(walk.m(), walk.distance());
    if (walk.m() == m_last) break;
    walk.advance();
  }
}

/// Whether theta lies within 2^-100 / q of a rational with denominator q <= q_max.
inline bool rational_within_precision(const mp::Float& theta, std::uint64_t q_max) {
  const contfrac::ContinuedFraction cf = contfrac::expand(mp::to_rational(theta));
  const mpz_class limit(static_cast<unsigned long>(q_max));
  mp::Float threshold(1.0, 64);
  mpfr_mul_2si(threshold.get(), threshold.get(), -kRationalBits, MPFR_RNDN);
  for (std::size_t r = 0; r < cf.denominators.size(); ++r) {
    const mpz_class& q = cf.denominators[r];
    if (q > limit) break;
    mp::Float err(theta.precision() + static_cast<mpfr_prec_t>(mpz_sizeinbase(q.get_mpz_t(), 2)) + 8);
    mpfr_mul_z(err.get(), theta.get(), q.get_mpz_t(), MPFR_RNDN);
    mpfr_sub_z(err.get(), err.get(), cf.numerators[r].get_mpz_t(), MPFR_RNDN);
    mpfr_abs(err.get(), err.get(), MPFR_RNDN);
    if (err < threshold) return true;
  }
  return false;
}

struct ApproxWitness {
  std::uint64_t m = 0;
  double distance = 0.0;
  double scaled = 0.0;
};

/// All m <= m_max with ||m theta + x|| < 3/m; scaled = m * distance.
inline std::vector<ApproxWitness> minkowski_witnesses(const mp::Float& theta, const mp::Float& x,
                                                      std::uint64_t m_max) {
  if (m_max < 1) throw PreconditionError("minkowski_witnesses: m_max must be >= 1");
  if (rational_within_precision(theta, m_max))
    throw PreconditionError("minkowski_witnesses: theta is rational to working precision");
  std::vector<ApproxWitness> out;
  scan(theta, x, 1, m_max, [&](std::uint64_t m, double d) {
    const double md = static_cast<double>(m);
    if (d * md < 3.0) out.push_back({m, d, md * d});
  });
  return out;
}

inline std::vector<ApproxWitness> minkowski_witnesses(const mp::Float& theta, double x, std::uint64_t m_max) {
  return minkowski_witnesses(theta, mp::Float(x, 64), m_max);
}

struct TwistedInf {
  double value = 0.0;
  std::uint64_t argmin = 0;
};

/// min over 1 <= m <= m_max of m ||m theta - x||; first minimiser wins ties.
inline TwistedInf twisted_bad_inf(const mp::Float& theta, const mp::Float& x, std::uint64_t m_max) {
  if (m_max < 1) throw PreconditionError("twisted_bad_inf: m_max must be >= 1");
  TwistedInf best{INFINITY, 0};
  scan(theta, -x, 1, m_max, [&](std::uint64_t m, double d) {
    const double v = static_cast<double>(m) * d;
    if (v < best.value) best = {v, m};
  });
  return best;
}

inline TwistedInf twisted_bad_inf(const mp::Float& theta, double x, std::uint64_t m_max) {
  return twisted_bad_inf(theta, mp::Float(x, 64), m_max);
}

struct BlockSum {
  std::size_t r = 0;
  mpz_class begin;         // q_r
  mpz_class end;           // q_{r+1} - 1
  double distance = 0.0;   // ||q_r theta||
  mpz_class crossing;      // first n in the block with phi(n) < distance (end + 1 if none)
  double block_sum = 0.0;
  double cumulative = 0.0;
};

struct FkOptions {
  SumOptions sum;
};

/// Block sums of min(phi(n), ||q_r theta||) for r = 0 .. R-1, with the
/// distance fixed at the block's own convergent denominator.
inline std::vector<BlockSum> fuchs_kim_partial_sum(const contfrac::ContinuedFraction& cf, const RateFunction& phi,
                                                   std::size_t R, const FkOptions& opt = {}) {
  if (cf.certified_depth() == 0 || R > cf.certified_depth() - 1)
    throw PreconditionError("fuchs_kim_partial_sum: R must be <= certified_depth - 1");
  if (!phi.is_nonincreasing()) throw PreconditionError("fuchs_kim_partial_sum: phi must be positive and nonincreasing");

  std::vector<BlockSum> out;
  double total = 0.0;
  for (std::size_t r = 0; r < R; ++r) {
    BlockSum b;
    b.r = r;
    b.begin = cf.denominators[r];
    b.end = cf.denominators[r + 1] - 1;
    b.distance = contfrac::scaled_distance(cf, b.begin).to_double();
    if (b.end < b.begin) {
      // q_0 = q_1 = 1 when a_1 = 1; the block is empty.
      b.crossing = b.begin;
    } else {
      // phi is nonincreasing: binary search the first n with phi(n) < d.
      mpz_class lo = b.begin, hi = b.end + 1;
      while (lo < hi) {
        mpz_class mid = (lo + hi) / 2;
        if (phi(mid) < b.distance) hi = mid;
        else lo = mid + 1;
      }
      b.crossing = lo;
      const mpz_class flat = b.crossing - b.begin;
      b.block_sum = flat.get_d() * b.distance + range_sum(phi, b.crossing, b.end, opt.sum);
    }
    total += b.block_sum;
    b.cumulative = total;
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace modapprox::inhomog
