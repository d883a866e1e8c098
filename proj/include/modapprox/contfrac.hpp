#pragma once

// Certified continued fractions of reals known only through an enclosing
// interval. A partial quotient is emitted only when both endpoints agree on it.

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "modapprox/bigfloat.hpp"
#include "modapprox/error.hpp"

namespace modapprox::contfrac {

struct ContinuedFraction {
  mp::Interval value;
  mpz_class a0;                         // integer part
  std::vector<mpz_class> quotients;     // a_1 .. a_R
  std::vector<mpz_class> numerators;    // s_0 .. s_R
  std::vector<mpz_class> denominators;  // q_0 .. q_R, q_0 = 1
  bool terminated = false;              // exact rational, fully expanded

  std::size_t certified_depth() const { return quotients.size(); }
};

namespace detail {

inline void fill_convergents(ContinuedFraction& cf) {
  cf.numerators.clear();
  cf.denominators.clear();
  mpz_class s_prev2 = 0, s_prev = 1;  // s_{-2}, s_{-1}
  mpz_class q_prev2 = 1, q_prev = 0;  // q_{-2}, q_{-1}
  auto push = [&](const mpz_class& a) {
    mpz_class s = a * s_prev + s_prev2;
    mpz_class q = a * q_prev + q_prev2;
    s_prev2 = s_prev;
    s_prev = s;
    q_prev2 = q_prev;
    q_prev = q;
    cf.numerators.push_back(s);
    cf.denominators.push_back(q);
  };
  push(cf.a0);
  for (const auto& a : cf.quotients) push(a);
}

}  // namespace detail

/// Expand the real enclosed by `value` by the Gauss map in interval
/// arithmetic, stopping at `max_depth` quotients or at the first quotient the
/// endpoints disagree on.
inline ContinuedFraction expand(const mp::Interval& value, std::size_t max_depth) {
  ContinuedFraction cf;
  cf.value = value;
  const mpz_class lo0 = mp::floor_to_mpz(value.lo());
  const mpz_class hi0 = mp::floor_to_mpz(value.hi());
  if (lo0 != hi0) throw ComputationError("contfrac: integer part is not certified (input too imprecise)");
  cf.a0 = lo0;

  mp::Interval frac = mp::sub_integer(value, cf.a0);
  while (cf.quotients.size() < max_depth) {
    if (frac.lo().is_zero()) {
      if (frac.hi().is_zero()) cf.terminated = true;
      break;
    }
    const mp::Interval y = mp::reciprocal(frac);
    const mpz_class qlo = mp::floor_to_mpz(y.lo());
    const mpz_class qhi = mp::floor_to_mpz(y.hi());
    if (qlo != qhi) break;
    cf.quotients.push_back(qlo);
    frac = mp::sub_integer(y, qlo);
  }
  if (cf.quotients.empty() && !cf.terminated && max_depth > 0)
    throw ComputationError("contfrac: no partial quotient could be certified (input too imprecise)");
  detail::fill_convergents(cf);
  return cf;
}

/// Exact expansion of a rational by Euclid's algorithm; canonical form (the
/// last quotient is at least 2 whenever there is more than one term).
inline ContinuedFraction expand(const mpq_class& value, std::size_t max_depth = std::numeric_limits<std::size_t>::max(),
                                mpfr_prec_t prec = mp::kDefaultPrecision) {
  ContinuedFraction cf;
  cf.value = mp::Interval::from_rational(value, prec);
  mpz_class num = value.get_num();
  mpz_class den = value.get_den();
  mpz_class a;
  mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  cf.a0 = a;
  num -= a * den;
  while (num != 0 && cf.quotients.size() < max_depth) {
    std::swap(num, den);
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    cf.quotients.push_back(a);
    num -= a * den;
  }
  cf.terminated = (num == 0);
  detail::fill_convergents(cf);
  return cf;
}

/// ||t||: distance from t to the nearest integer, in [0, 1/2]. Exact halves
/// give 1/2.
inline double nearest_int_distance(double t) {
  const double f = t - std::floor(t);
  return std::min(f, 1.0 - f);
}

struct BoundedQuotients {
  bool bounded = false;
  mpz_class max_quotient;
  bool terminating = false;  // rational input; the expansion ended
};

/// Finite-depth proxy for bad approximability: the largest of a_1..a_depth and
/// whether it stays within `bound`. Never a proof.
inline BoundedQuotients is_badly_approximable_up_to(const ContinuedFraction& cf, std::size_t depth,
                                                    const mpz_class& bound = 10) {
  if (depth > cf.certified_depth())
    throw PreconditionError("is_badly_approximable_up_to: depth exceeds the certified depth");
  BoundedQuotients r;
  r.max_quotient = 0;
  for (std::size_t i = 0; i < depth; ++i)
    if (cf.quotients[i] > r.max_quotient) r.max_quotient = cf.quotients[i];
  r.bounded = r.max_quotient <= bound;
  r.terminating = cf.terminated;
  return r;
}

/// ||q * x|| for an integer q and the midpoint of the enclosing interval.
inline mp::Float scaled_distance(const ContinuedFraction& cf, const mpz_class& q) {
  const mp::Float mid = cf.value.mid();
  mp::Float prod(mid.precision() + static_cast<mpfr_prec_t>(mpz_sizeinbase(q.get_mpz_t(), 2)) + 8);
  mpfr_mul_z(prod.get(), mid.get(), q.get_mpz_t(), MPFR_RNDN);
  return mp::nearest_int_distance(prod);
}

namespace constants {

inline mp::Interval golden_ratio(mpfr_prec_t prec) {
  const mp::Interval five = mp::Interval::from_mpz(5, prec);
  return mp::div_2exp(mp::Interval::from_mpz(1, prec) + mp::sqrt(five), 1);
}
inline mp::Interval sqrt2(mpfr_prec_t prec) { return mp::sqrt(mp::Interval::from_mpz(2, prec)); }
inline mp::Interval e(mpfr_prec_t prec) { return mp::Interval::e(prec); }
inline mp::Interval pi(mpfr_prec_t prec) { return mp::Interval::pi(prec); }

}  // namespace constants

}  // namespace modapprox::contfrac
