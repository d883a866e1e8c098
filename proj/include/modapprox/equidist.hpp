#pragma once

// Limiting measures for normalized prime coefficients and the empirical
// distributions they are compared against.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "modapprox/coefficients.hpp"
#include "modapprox/error.hpp"

namespace modapprox::equidist {

enum class MeasureKind {
  SatoTate,    // (2/pi) sqrt(1 - t^2) dt
  CM,          // (1/2) delta_0 + dt / (2 pi sqrt(1 - t^2))
  ArcSine,     // continuous part of CM, renormalized: dt / (pi sqrt(1 - t^2))
  Plancherel,  // p-adic Plancherel, a density in theta on [0, pi]
};

struct MeasureSpec {
  MeasureKind kind = MeasureKind::SatoTate;
  std::uint64_t p = 0;  // Plancherel only

  static MeasureSpec sato_tate() { return {MeasureKind::SatoTate, 0}; }
  static MeasureSpec cm() { return {MeasureKind::CM, 0}; }
  static MeasureSpec arcsine() { return {MeasureKind::ArcSine, 0}; }
  static MeasureSpec plancherel(std::uint64_t p) {
    if (p < 2) throw PreconditionError("plancherel: p must be >= 2");
    return {MeasureKind::Plancherel, p};
  }

  /// Support in the measure's own variable.
  double support_lo() const { return kind == MeasureKind::Plancherel ? 0.0 : -1.0; }
  double support_hi() const { return kind == MeasureKind::Plancherel ? std::numbers::pi : 1.0; }

  std::string name() const {
    switch (kind) {
      case MeasureKind::SatoTate: return "sato-tate";
      case MeasureKind::CM: return "cm";
      case MeasureKind::ArcSine: return "arcsine";
      case MeasureKind::Plancherel: return "plancherel-" + std::to_string(p);
    }
    return "";
  }
};

inline MeasureSpec parse_measure(const std::string& name, std::uint64_t p = 0) {
  if (name == "sato-tate" || name == "st") return MeasureSpec::sato_tate();
  if (name == "cm") return MeasureSpec::cm();
  if (name == "arcsine") return MeasureSpec::arcsine();
  if (name == "plancherel") return MeasureSpec::plancherel(p);
  throw PreconditionError("unknown measure '" + name + "'");
}

inline double clamp_unit(double t) { return std::clamp(t, -1.0, 1.0); }

/// p-adic Plancherel density in theta. Integrates to 1 over [0, pi] and tends
/// to (2/pi) sin^2 theta as p grows.
inline double plancherel_density(std::uint64_t p, double theta) {
  const double ip = 1.0 / static_cast<double>(p);
  const double s = std::sin(theta), c = std::cos(theta);
  const double a = 1.0 + ip;
  return (2.0 / std::numbers::pi) * a * s * s / (a * a - 4.0 * ip * c * c);
}

inline double sato_tate_theta_density(double theta) {
  const double s = std::sin(theta);
  return (2.0 / std::numbers::pi) * s * s;
}

inline double plancherel_cdf_theta(std::uint64_t p, double theta) {
  theta = std::clamp(theta, 0.0, std::numbers::pi);
  if (theta == 0.0) return 0.0;
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [p](double t) { return plancherel_density(p, t); }, 0.0, theta, 15, 1e-14, &err);
  return std::clamp(v, 0.0, 1.0);
}

/// Right-continuous CDF in the measure's own variable (t for SatoTate, CM and
/// ArcSine, theta for Plancherel). Arguments are clamped to the support.
inline double cdf(const MeasureSpec& m, double x) {
  switch (m.kind) {
    case MeasureKind::SatoTate: {
      const double t = clamp_unit(x);
      return std::clamp((t * std::sqrt(1.0 - t * t) + std::asin(t)) / std::numbers::pi + 0.5, 0.0, 1.0);
    }
    case MeasureKind::CM: {
      const double t = clamp_unit(x);
      return std::clamp((std::asin(t) + std::numbers::pi / 2) / (2.0 * std::numbers::pi) + (t >= 0.0 ? 0.5 : 0.0),
                        0.0, 1.0);
    }
    case MeasureKind::ArcSine: {
      const double t = clamp_unit(x);
      return std::clamp(std::asin(t) / std::numbers::pi + 0.5, 0.0, 1.0);
    }
    case MeasureKind::Plancherel: return plancherel_cdf_theta(m.p, x);
  }
  return 0.0;
}

/// Left limit of the CDF; differs from cdf() only at atoms.
inline double cdf_left(const MeasureSpec& m, double x) {
  if (m.kind == MeasureKind::CM && x == 0.0) return 0.25;
  return cdf(m, x);
}

/// Points carrying positive mass.
inline std::vector<double> atoms(const MeasureSpec& m) {
  if (m.kind == MeasureKind::CM) return {0.0};
  return {};
}

/// CDF in t = cos theta for any measure; Plancherel is pushed forward from theta.
inline double cdf_t(const MeasureSpec& m, double t) {
  if (m.kind != MeasureKind::Plancherel) return cdf(m, t);
  t = clamp_unit(t);
  return std::clamp(1.0 - plancherel_cdf_theta(m.p, std::acos(t)), 0.0, 1.0);
}

/// Density in t = cos theta of the Plancherel measure.
inline double plancherel_density_t(std::uint64_t p, double t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return plancherel_density(p, std::acos(t)) / std::sqrt(1.0 - t * t);
}

/// Sorted a(p)/2 over good primes p <= x_limit.
inline std::vector<double> empirical_distribution(const CoefficientTable& table, std::uint64_t x_limit) {
  if (x_limit > table.limit()) throw PreconditionError("empirical_distribution: x_limit exceeds the table limit");
  std::vector<double> out;
  for (std::uint64_t p = 2; p <= x_limit; ++p) {
    if (table.smallest_prime_factor(p) != p || !table.is_good_prime(p)) continue;
    out.push_back(clamp_unit(table.normalized(p) / 2.0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// sup |F_emp - F| over the line, for sorted samples in the measure's variable.
inline double ks_statistic(const std::vector<double>& samples, const MeasureSpec& m) {
  if (samples.empty()) throw PreconditionError("ks_statistic: no samples");
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  auto check = [&](double v) {
    const auto lt = std::lower_bound(samples.begin(), samples.end(), v) - samples.begin();
    const auto le = std::upper_bound(samples.begin(), samples.end(), v) - samples.begin();
    d = std::max(d, std::fabs(static_cast<double>(le) / n - cdf(m, v)));
    d = std::max(d, std::fabs(static_cast<double>(lt) / n - cdf_left(m, v)));
  };
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (i == 0 || samples[i] != samples[i - 1]) check(samples[i]);
  for (double a : atoms(m)) check(a);
  return d;
}

struct IntervalCount {
  std::uint64_t observed = 0;
  double predicted = 0.0;
  std::uint64_t total = 0;
};

/// Samples in the closed interval [alpha, beta] against the measure's prediction.
inline IntervalCount interval_count(const std::vector<double>& samples, double alpha, double beta,
                                    const MeasureSpec& m = MeasureSpec::sato_tate()) {
  if (!(-1.0 <= alpha && alpha <= beta && beta <= 1.0))
    throw PreconditionError("interval_count: need -1 <= alpha <= beta <= 1");
  IntervalCount r;
  r.total = samples.size();
  r.observed = static_cast<std::uint64_t>(std::upper_bound(samples.begin(), samples.end(), beta) -
                                          std::lower_bound(samples.begin(), samples.end(), alpha));
  r.predicted = (cdf_t(m, beta) - (m.kind == MeasureKind::CM ? cdf_left(m, alpha) : cdf_t(m, alpha))) *
                static_cast<double>(r.total);
  return r;
}

inline IntervalCount interval_count_ratio(const CoefficientTable& table, std::uint64_t x_limit, double alpha,
                                          double beta, const MeasureSpec& m = MeasureSpec::sato_tate()) {
  return interval_count(empirical_distribution(table, x_limit), alpha, beta, m);
}

struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  std::uint64_t count = 0;
  double predicted = 0.0;
};

/// Equal-width bins over [-1, 1]; bins are [left, right) except the last,
/// which is closed.
inline std::vector<HistogramBin> histogram(const std::vector<double>& samples, std::size_t bins,
                                           const MeasureSpec& m) {
  if (bins == 0) throw PreconditionError("histogram: bins must be >= 1");
  std::vector<HistogramBin> out(bins);
  const double n = static_cast<double>(samples.size());
  auto left_mass = [&](double x) { return m.kind == MeasureKind::CM ? cdf_left(m, x) : cdf_t(m, x); };
  for (std::size_t i = 0; i < bins; ++i) {
    out[i].left = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(bins);
    out[i].right = i + 1 == bins ? 1.0 : -1.0 + 2.0 * static_cast<double>(i + 1) / static_cast<double>(bins);
    const double hi = i + 1 == bins ? 1.0 : left_mass(out[i].right);
    out[i].predicted = n * (hi - left_mass(out[i].left));
  }
  for (double s : samples) {
    auto i = static_cast<std::size_t>((s + 1.0) / 2.0 * static_cast<double>(bins));
    out[std::min(i, bins - 1)].count++;
  }
  return out;
}

}  // namespace modapprox::equidist
