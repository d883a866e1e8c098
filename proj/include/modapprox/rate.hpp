#pragma once

// Rate functions phi(n) used by the approximation criteria, together with
// range sums sum_{n=a}^{b} phi(n) that stay exact-to-rounding for ranges far
// too long to enumerate.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "modapprox/error.hpp"

namespace modapprox {

enum class RateKind {
  Constant,    // c
  Power,       // c * n^s
  LogPower,    // c / (n * L(n)^s)
  InverseLog,  // c / L(n)
};

/// L(n) = log(max(n, 2)) keeps the logarithmic rates finite at n = 1.
inline double log_floor2(double n) { return std::log(n < 2.0 ? 2.0 : n); }

struct RateFunction {
  RateKind kind = RateKind::Power;
  double c = 1.0;
  double s = -1.0;

  static RateFunction constant(double c) { return {RateKind::Constant, c, 0.0}; }
  static RateFunction power(double c, double s) { return {RateKind::Power, c, s}; }
  static RateFunction inverse(double c = 1.0) { return power(c, -1.0); }
  static RateFunction inverse_square(double c = 1.0) { return power(c, -2.0); }
  static RateFunction square(double c = 1.0) { return power(c, 2.0); }
  static RateFunction n_log(double c, double a) { return {RateKind::LogPower, c, a}; }
  static RateFunction inverse_log(double c = 1.0) { return {RateKind::InverseLog, c, 0.0}; }

  double operator()(double n) const {
    switch (kind) {
      case RateKind::Constant: return c;
      case RateKind::Power: return c * std::pow(n, s);
      case RateKind::LogPower: return c / (n * std::pow(log_floor2(n), s));
      case RateKind::InverseLog: return c / log_floor2(n);
    }
    return 0.0;
  }
  double operator()(const mpz_class& n) const { return (*this)(n.get_d()); }

  bool is_nonincreasing() const {
    if (c <= 0.0) return false;
    switch (kind) {
      case RateKind::Constant: return true;
      case RateKind::Power: return s <= 0.0;
      case RateKind::LogPower: return s >= 0.0;
      case RateKind::InverseLog: return true;
    }
    return false;
  }

  bool has_closed_form_sum() const {
    return kind == RateKind::Constant || kind == RateKind::LogPower ||
           (kind == RateKind::Power && (s == -1.0 || s == -2.0));
  }

  std::string to_string() const {
    std::ostringstream o;
    o.precision(17);
    switch (kind) {
      case RateKind::Constant: o << "const:" << c; break;
      case RateKind::Power: o << "pow:" << c << ":" << s; break;
      case RateKind::LogPower: o << "nlog:" << c << ":" << s; break;
      case RateKind::InverseLog: o << "invlog:" << c; break;
    }
    return o.str();
  }
};

/// Parses `const:c`, `pow:c:s`, `nlog:c:a`, `invlog:c` and the shorthands
/// `1/n`, `1/n^2`, `n^2`, `m^2`, `1/log`.
inline RateFunction parse_rate(const std::string& text) {
  if (text == "1/n") return RateFunction::inverse();
  if (text == "1/n^2") return RateFunction::inverse_square();
  if (text == "n^2" || text == "m^2") return RateFunction::square();
  if (text == "n" || text == "m") return RateFunction::power(1.0, 1.0);
  if (text == "1/log") return RateFunction::inverse_log();
  std::istringstream in(text);
  std::string kind, c_str, p_str;
  std::getline(in, kind, ':');
  std::getline(in, c_str, ':');
  std::getline(in, p_str, ':');
  try {
    if (kind == "const" && !c_str.empty()) return RateFunction::constant(std::stod(c_str));
    if (kind == "pow" && !p_str.empty()) return RateFunction::power(std::stod(c_str), std::stod(p_str));
    if (kind == "nlog" && !p_str.empty()) return RateFunction::n_log(std::stod(c_str), std::stod(p_str));
    if (kind == "invlog" && !c_str.empty()) return RateFunction::inverse_log(std::stod(c_str));
  } catch (const std::exception&) {
  }
  throw PreconditionError("cannot parse rate function '" + text + "'");
}

namespace detail {

inline constexpr std::uint64_t kDirectSumThreshold = 100000;
inline constexpr double kAsymptoticStart = 1000.0;

inline double direct_sum(const RateFunction& phi, std::uint64_t a, std::uint64_t b) {
  long double acc = 0.0L;
  for (std::uint64_t n = b + 1; n-- > a;) acc += phi(static_cast<double>(n));  // small terms first
  return static_cast<double>(acc);
}

// psi(x) - log(x) for x >= 1000, asymptotic series.
inline double digamma_remainder(double x) {
  const double x2 = x * x;
  return -1.0 / (2.0 * x) - 1.0 / (12.0 * x2) + 1.0 / (120.0 * x2 * x2) - 1.0 / (252.0 * x2 * x2 * x2);
}

// sum_{n >= x} 1 / n^2 for x >= 1000.
inline double trigamma(double x) {
  const double x2 = x * x;
  return 1.0 / x + 1.0 / (2.0 * x2) + 1.0 / (6.0 * x2 * x) - 1.0 / (30.0 * x2 * x2 * x) +
         1.0 / (42.0 * x2 * x2 * x2 * x);
}

// Closed-form sum over [a, b] with a >= kAsymptoticStart.
inline double asymptotic_sum(const RateFunction& phi, const mpz_class& a, const mpz_class& b) {
  const double ad = a.get_d();
  const double b1 = mpz_class(b + 1).get_d();
  const double span = mpz_class(b + 1 - a).get_d();
  switch (phi.kind) {
    case RateKind::Constant: return phi.c * span;
    case RateKind::Power:
      if (phi.s == -1.0)
        return phi.c * (std::log1p(span / ad) + digamma_remainder(b1) - digamma_remainder(ad));
      return phi.c * (trigamma(ad) - trigamma(b1));
    case RateKind::LogPower: {
      // Euler-Maclaurin with the first derivative correction.
      const double bd = b.get_d();
      const double la = std::log(ad), lb = std::log(bd);
      const double k = phi.s;
      double integral;
      if (k == 1.0) {
        integral = std::log(lb / la);
      } else {
        integral = (std::pow(lb, 1.0 - k) - std::pow(la, 1.0 - k)) / (1.0 - k);
      }
      auto f = [&](double x, double lx) { return 1.0 / (x * std::pow(lx, k)); };
      auto df = [&](double x, double lx) { return -(1.0 + k / lx) / (x * x * std::pow(lx, k)); };
      return phi.c * (integral + 0.5 * (f(ad, la) + f(bd, lb)) + (df(bd, lb) - df(ad, la)) / 12.0);
    }
    case RateKind::InverseLog: break;
  }
  throw ComputationError("no closed form for this rate function");
}

}  // namespace detail

struct SumOptions {
  std::uint64_t cap = 100000000;  // maximum directly summed terms per range
};

/// sum_{n=a}^{b} phi(n), with a >= 1. Uses closed forms when phi admits one;
/// otherwise sums directly and signals if the range exceeds the cap.
inline double range_sum(const RateFunction& phi, const mpz_class& a, const mpz_class& b,
                        const SumOptions& opt = {}) {
  if (a < 1) throw PreconditionError("range_sum: a must be >= 1");
  if (a > b) return 0.0;
  const mpz_class count = b - a + 1;
  if (phi.kind == RateKind::Constant) return phi.c * count.get_d();
  if (phi.has_closed_form_sum() && count > detail::kDirectSumThreshold) {
    const mpz_class start = 1000;
    if (a >= start) return detail::asymptotic_sum(phi, a, b);
    return detail::direct_sum(phi, a.get_ui(), 999) + detail::asymptotic_sum(phi, start, b);
  }
  if (count > opt.cap)
    throw ComputationError("range_sum: " + count.get_str() + " terms exceed the summation cap of " +
                           std::to_string(opt.cap) + " for " + phi.to_string());
  return detail::direct_sum(phi, a.get_ui(), b.get_ui());
}

}  // namespace modapprox
