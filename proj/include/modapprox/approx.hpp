#pragma once

// Scans for approximation of a target x by a(n) and by a(p^m),
// finite-horizon Bad(p, phi) infima, and the sin(2 pi delta) / sin(theta_p)
// construction together with its screening minima.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "modapprox/bigfloat.hpp"
#include "modapprox/coefficients.hpp"
#include "modapprox/error.hpp"
#include "modapprox/inhomog.hpp"
#include "modapprox/rate.hpp"

namespace modapprox::approx {

using inhomog::ApproxWitness;

struct ScanReport {
  double x = 0.0;
  std::string form_id;
  std::string rate;
  std::vector<ApproxWitness> witnesses;  // sorted by m
  double best_constant = INFINITY;       // min of witnesses' scaled values
  std::uint64_t horizon = 0;
  double threshold = 0.0;                // afz: user constant; thm2: 6 pi / sin theta_p
  std::uint64_t hits = 0;                // afz: indices with scaled <= threshold
  bool bound_holds = true;               // thm2: every witness scaled <= threshold
};

/// Running minima of |a(n) - x| over 2 <= n <= n_max, skipping flagged
/// indices; scaled = log(n) |a(n) - x|.
inline ScanReport afz_scan(const CoefficientTable& table, double x, std::uint64_t n_max, double constant = 1.0) {
  if (n_max > table.limit()) throw PreconditionError("afz_scan: n_max exceeds the table limit");
  ScanReport r;
  r.x = x;
  r.form_id = table.spec().id();
  r.rate = "log";
  r.horizon = n_max;
  r.threshold = constant;
  double best = INFINITY;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    if (table.flagged(n)) continue;
    const double d = std::fabs(table.normalized(n) - x);
    const double scaled = std::log(static_cast<double>(n)) * d;
    if (scaled <= constant) ++r.hits;
    if (d < best) {
      best = d;
      r.witnesses.push_back({n, d, scaled});
      r.best_constant = std::min(r.best_constant, scaled);
    }
  }
  return r;
}

namespace detail {

inline AngleRecord checked_angle(const CoefficientTable& table, std::uint64_t p, int bits) {
  AngleRecord rec = angle(table, p, bits);
  if (rec.classification == AngleClass::RationalAngle)
    throw PreconditionError("theta_p is a rational angle for p = " + std::to_string(p));
  return rec;
}

// m |a(p^m) - x| via the closed form.
inline double distance_to(PrimePowerEvaluator& ev, const mp::Float& x, std::uint64_t m) {
  const mp::Float& a = ev.value(m);
  mp::Float d(ev.precision());
  mpfr_sub(d.get(), a.get(), x.get(), MPFR_RNDN);
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  return d.to_double();
}

}  // namespace detail

/// Witnesses m <= m_max for |a(p^m) - x| <= C / m, found through Minkowski's
/// theorem on (theta_p / 2 pi, -delta / 2 pi) with sin(delta) = x sin(theta_p).
/// Both solutions delta and pi - delta are scanned and merged by m.
inline ScanReport theorem2_search(const CoefficientTable& table, double x, std::uint64_t p, std::uint64_t m_max,
                                  int bits = 256) {
  if (m_max < 1) throw PreconditionError("theorem2_search: m_max must be >= 1");
  const AngleRecord rec = detail::checked_angle(table, p, bits);
  PrimePowerEvaluator ev(rec);
  const mpfr_prec_t prec = ev.precision();
  const mp::Float& sin_theta = ev.sin_theta();

  const mp::Float xf(x, prec);
  mp::Float s = mp::mul(xf, sin_theta);
  if (mpfr_cmpabs(s.get(), mp::Float(1.0, prec).get()) >= 0)
    throw PreconditionError("theorem2_search: |x| must be < 1 / sin(theta_p)");

  const mp::Float pi = mp::Float::pi(prec);
  mp::Float two_pi = mp::mul_si(pi, 2);
  const mp::Float delta1 = mp::asin(s);
  const mp::Float delta2 = mp::sub(pi, delta1);
  const mp::Float frac = mp::div(rec.theta_mid(), two_pi);

  ScanReport r;
  r.x = x;
  r.form_id = table.spec().id();
  r.rate = "m";
  r.horizon = m_max;
  r.threshold = 6.0 * std::numbers::pi / sin_theta.to_double();

  std::map<std::uint64_t, ApproxWitness> merged;
  for (const mp::Float* delta : {&delta1, &delta2}) {
    const mp::Float shift = -mp::div(*delta, two_pi);
    for (const auto& w : inhomog::minkowski_witnesses(frac, shift, m_max + 1)) {
      const std::uint64_t m = w.m - 1;  // (m + 1) theta_p is the phase of a(p^m)
      if (m < 1 || merged.count(m)) continue;
      const double d = detail::distance_to(ev, xf, m);
      merged[m] = {m, d, static_cast<double>(m) * d};
    }
  }
  for (const auto& [m, w] : merged) {
    r.witnesses.push_back(w);
    r.best_constant = std::min(r.best_constant, w.scaled);
    if (w.scaled > r.threshold) r.bound_holds = false;
  }
  r.hits = r.witnesses.size();
  return r;
}

struct BadResult {
  double value = INFINITY;
  std::uint64_t argmin = 0;
};

/// min over 1 <= m <= m_max of rate(m) |a(p^m) - x|.
inline BadResult bad_test(const CoefficientTable& table, std::uint64_t p, double x, const RateFunction& rate,
                          std::uint64_t m_max, int bits = 256) {
  if (m_max < 1) throw PreconditionError("bad_test: m_max must be >= 1");
  const AngleRecord rec = angle(table, p, bits);
  PrimePowerEvaluator ev(rec);
  const mp::Float xf(x, ev.precision());
  BadResult best;
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    const double v = rate(static_cast<double>(m)) * detail::distance_to(ev, xf, m);
    if (v < best.value) best = {v, m};
  }
  return best;
}

/// Per-m values rate(m) |a(p^m) - x| for 1 <= m <= m_max.
inline std::vector<double> bad_profile(const CoefficientTable& table, std::uint64_t p, double x,
                                       const RateFunction& rate, std::uint64_t m_max, int bits = 256) {
  const AngleRecord rec = angle(table, p, bits);
  PrimePowerEvaluator ev(rec);
  const mp::Float xf(x, ev.precision());
  std::vector<double> out;
  out.reserve(m_max);
  for (std::uint64_t m = 1; m <= m_max; ++m)
    out.push_back(rate(static_cast<double>(m)) * detail::distance_to(ev, xf, m));
  return out;
}

inline constexpr double kGammaCap = 0.25;
inline constexpr double kGammaScreen = 1e-3;

struct BadConstruction {
  double delta = 0.0;
  double x = 0.0;
  double sin_theta = 0.0;
  std::uint64_t horizon = 0;
  // min over 1 <= m <= horizon of (m+1) ||(m+1) theta_p / 2 pi - y| for
  // y = delta, 1/2 - delta, -1/2 - delta.
  std::array<double, 3> minima{};
  std::array<std::uint64_t, 3> argmin{};
  double gamma = 0.0;  // min of the minima, held below the 1/4 cap
  bool screened = false;

  /// Lower bound on m^2 |a(p^m) - x| implied by the three conditions with gamma.
  double lower_bound(std::uint64_t m) const {
    const double md = static_cast<double>(m), m1 = md + 1.0;
    const double gp = gamma * std::numbers::pi;
    const double tail = 1.0 - gp * gp / (6.0 * m1 * m1);
    return 2.0 * gp * gp / sin_theta * (md / m1) * (md / m1) * tail * tail;
  }
};

/// x = sin(2 pi delta) / sin(theta_p) and the three screening minima at the given horizon.
inline BadConstruction construct_bad_x(const CoefficientTable& table, std::uint64_t p, double delta,
                                       std::uint64_t horizon = 10000, int bits = 256,
                                       double screen = kGammaScreen) {
  if (!(delta > 0.0 && delta < 0.125)) throw PreconditionError("construct_bad_x: delta must lie in (0, 1/8)");
  if (horizon < 1) throw PreconditionError("construct_bad_x: horizon must be >= 1");
  const AngleRecord rec = detail::checked_angle(table, p, bits);
  const mpfr_prec_t prec = rec.precision_bits + 64;
  const mp::Float pi = mp::Float::pi(prec);
  const mp::Float two_pi = mp::mul_si(pi, 2);
  mp::Float theta(prec);
  mpfr_set(theta.get(), rec.theta_mid().get(), MPFR_RNDN);
  const mp::Float sin_theta = mp::sin(theta);
  const mp::Float frac = mp::div(theta, two_pi);

  BadConstruction c;
  c.delta = delta;
  c.horizon = horizon;
  c.sin_theta = sin_theta.to_double();
  const mp::Float d(delta, prec);
  c.x = mp::div(mp::sin(mp::mul(two_pi, d)), sin_theta).to_double();

  const mp::Float half(0.5, prec);
  const std::array<mp::Float, 3> targets = {d, mp::sub(half, d), mp::sub(-half, d)};
  for (std::size_t i = 0; i < 3; ++i) {
    double best = INFINITY;
    std::uint64_t arg = 0;
    inhomog::scan(frac, -targets[i], 2, horizon + 1, [&](std::uint64_t m1, double dist) {
      const double v = static_cast<double>(m1) * dist;
      if (v < best) {
        best = v;
        arg = m1 - 1;
      }
    });
    c.minima[i] = best;
    c.argmin[i] = arg;
  }
  const double gamma = *std::min_element(c.minima.begin(), c.minima.end());
  c.gamma = std::min(gamma, std::nextafter(kGammaCap, 0.0));
  c.screened = gamma >= screen;
  return c;
}

}  // namespace modapprox::approx
