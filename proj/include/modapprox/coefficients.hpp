#pragma once

// Fourier coefficients of concrete newforms: the weight-12 level-1 cusp form
// (Ramanujan tau) and weight-2 forms attached to elliptic curves over Q.

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "modapprox/arith.hpp"
#include "modapprox/bigfloat.hpp"
#include "modapprox/error.hpp"
#include "modapprox/ntt.hpp"

namespace modapprox {

enum class FormKind { DeltaForm, EllipticCurve };

/// Identifies a concrete newform. For elliptic curves the Weierstrass model
/// is [a1, a2, a3, a4, a6] and the conductor is supplied by the caller; it is
/// used only to exclude bad primes.
struct NewformSpec {
  FormKind kind = FormKind::DeltaForm;
  std::array<long, 5> a{};
  int weight = 12;
  std::uint64_t level = 1;

  static NewformSpec delta() { return NewformSpec{}; }

  static NewformSpec elliptic_curve(const std::array<long, 5>& coeffs, std::uint64_t conductor) {
    NewformSpec s;
    s.kind = FormKind::EllipticCurve;
    s.a = coeffs;
    s.weight = 2;
    s.level = conductor;
    if (conductor == 0) throw PreconditionError("conductor must be positive");
    if (s.discriminant() == 0) throw PreconditionError("singular Weierstrass model (zero discriminant)");
    return s;
  }

  bool is_bad_prime(std::uint64_t p) const { return level % p == 0; }

  // Invariants b2, b4, b6, b8, c4, c6 and the discriminant of the model.
  struct Invariants {
    mpz_class b2, b4, b6, b8, c4, c6, disc;
  };

  Invariants invariants() const {
    const mpz_class a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
    Invariants v;
    v.b2 = a1 * a1 + 4 * a2;
    v.b4 = 2 * a4 + a1 * a3;
    v.b6 = a3 * a3 + 4 * a6;
    v.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    v.c4 = v.b2 * v.b2 - 24 * v.b4;
    v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
    v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 + 9 * v.b2 * v.b4 * v.b6;
    return v;
  }

  mpz_class discriminant() const {
    if (kind == FormKind::DeltaForm) return 1;
    return invariants().disc;
  }

  /// Stable identifier used for cache file names and reports.
  std::string id() const {
    if (kind == FormKind::DeltaForm) return "delta";
    std::string s = "ec";
    for (long c : a) s += "_" + (c < 0 ? "m" + std::to_string(-c) : std::to_string(c));
    s += "_N" + std::to_string(level);
    return s;
  }

  friend bool operator==(const NewformSpec&, const NewformSpec&) = default;
};

namespace forms {
// y^2 + y = x^3 - x^2 - 10x - 20, conductor 11 (no CM).
inline NewformSpec curve_11a1() { return NewformSpec::elliptic_curve({0, -1, 1, -10, -20}, 11); }
// y^2 = x^3 - x, conductor 32 (CM by Z[i]).
inline NewformSpec curve_32a2() { return NewformSpec::elliptic_curve({0, 0, 0, -1, 0}, 32); }
// y^2 + y = x^3 - x, conductor 37 (no CM).
inline NewformSpec curve_37a1() { return NewformSpec::elliptic_curve({0, 0, 1, -1, 0}, 37); }

inline NewformSpec by_name(const std::string& name) {
  if (name == "delta") return NewformSpec::delta();
  if (name == "11a1") return curve_11a1();
  if (name == "32a2") return curve_32a2();
  if (name == "37a1") return curve_37a1();
  throw PreconditionError("unknown form '" + name + "' (expected delta, 11a1, 32a2 or 37a1)");
}
}  // namespace forms

/// tau(n) for 1 <= n <= limit (index 0 holds 0), from the q-expansion of
/// q * prod (1 - q^j)^24. The cube of the eta product is written down from
/// Jacobi's identity and squared three times with exact NTT arithmetic.
inline std::vector<mpz_class> tau_table(std::uint64_t limit) {
  if (limit == 0) throw PreconditionError("tau_table: limit must be >= 1");
  if (limit > (std::uint64_t{1} << (ntt::kMaxLog2Length - 1)))
    throw PreconditionError("tau_table: limit exceeds transform capacity");
  const std::size_t len = static_cast<std::size_t>(limit);

  // prod (1 - q^j)^3 = sum_k (-1)^k (2k + 1) q^{k(k+1)/2}
  std::vector<mpz_class> series(len, 0);
  for (std::uint64_t k = 0;; ++k) {
    const std::uint64_t deg = k * (k + 1) / 2;
    if (deg >= len) break;
    series[deg] = (k % 2 == 0 ? 1 : -1) * static_cast<long>(2 * k + 1);
  }
  for (int i = 0; i < 3; ++i) series = ntt::square_truncated(series, len);

  std::vector<mpz_class> tau(len + 1, 0);
  for (std::size_t n = 1; n <= len; ++n) tau[n] = std::move(series[n - 1]);
  return tau;
}

namespace detail {

inline std::uint64_t mod_of(const mpz_class& z, std::uint64_t p) {
  return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
}

// Points on the long Weierstrass model over F_p, including infinity.
inline std::uint64_t count_points_enumerate(const NewformSpec& s, std::uint64_t p) {
  std::array<std::uint64_t, 5> c{};
  for (int i = 0; i < 5; ++i) c[i] = mod_of(mpz_class(s.a[i]), p);
  std::uint64_t count = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t rhs = (x * x % p * x + c[1] * x % p * x + c[3] * x + c[4]) % p;
    for (std::uint64_t y = 0; y < p; ++y) {
      const std::uint64_t lhs = (y * y + c[0] * x % p * y + c[2] * y) % p;
      if (lhs == rhs) ++count;
    }
  }
  return count;
}

}  // namespace detail

/// a_p = p + 1 - #E(F_p) at a good prime p.
inline long ec_ap(const NewformSpec& spec, std::uint64_t p) {
  if (spec.kind != FormKind::EllipticCurve) throw PreconditionError("ec_ap: spec is not an elliptic curve");
  if (!is_prime(p)) throw PreconditionError("ec_ap: " + std::to_string(p) + " is not prime");
  if (spec.is_bad_prime(p)) throw PreconditionError("ec_ap: p = " + std::to_string(p) + " divides the conductor");
  const auto inv = spec.invariants();
  if (detail::mod_of(inv.disc, p) == 0)
    throw ComputationError("ec_ap: model is singular mod " + std::to_string(p) + " but p does not divide the conductor");

  if (p <= 3) return static_cast<long>(p + 1) - static_cast<long>(detail::count_points_enumerate(spec, p));

  // Short model y^2 = x^3 + A x + B with A = -27 c4, B = -54 c6.
  const std::uint64_t A = detail::mod_of(-27 * inv.c4, p);
  const std::uint64_t B = detail::mod_of(-54 * inv.c6, p);

  std::vector<std::uint8_t> square(p, 0);
  for (std::uint64_t y = 1, y2 = 1; y <= (p - 1) / 2; ++y) {
    square[y2] = 1;
    y2 += 2 * y + 1;  // (y+1)^2 = y^2 + 2y + 1
    while (y2 >= p) y2 -= p;
  }

  // f(x) = x^3 + A x + B stepped by forward differences.
  std::uint64_t f = B;
  std::uint64_t d1 = (1 + A) % p;
  std::uint64_t d2 = 6 % p;
  const std::uint64_t d3 = 6 % p;
  long chi_sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    if (f != 0) chi_sum += square[f] ? 1 : -1;
    f += d1;
    if (f >= p) f -= p;
    d1 += d2;
    if (d1 >= p) d1 -= p;
    d2 += d3;
    if (d2 >= p) d2 -= p;
  }
  return -chi_sum;
}

struct TableOptions {
  std::uint64_t max_limit = std::uint64_t{1} << 22;
};

/// Integral and normalized coefficients for 1 <= n <= limit. Read-only after
/// construction.
class CoefficientTable {
 public:
  const NewformSpec& spec() const { return spec_; }
  std::uint64_t limit() const { return limit_; }

  const mpz_class& raw(std::uint64_t n) const { return raw_.at(n); }
  double normalized(std::uint64_t n) const { return normalized_.at(n); }
  /// True when n is divisible by a bad prime; the stored coefficient is 0.
  bool flagged(std::uint64_t n) const { return flagged_.at(n) != 0; }
  bool is_good_prime(std::uint64_t p) const {
    return p >= 2 && p <= limit_ && spf_[p] == p && !spec_.is_bad_prime(p);
  }
  std::uint32_t smallest_prime_factor(std::uint64_t n) const { return spf_.at(n); }
  std::uint32_t divisor_count(std::uint64_t n) const { return divisor_function(n, spf_); }

  const std::vector<mpz_class>& raw_values() const { return raw_; }
  const std::vector<double>& normalized_values() const { return normalized_; }

  /// p^{k-1} as an exact integer.
  mpz_class prime_weight_power(std::uint64_t p) const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(spec_.weight - 1));
    return r;
  }

  /// a_f(p^m) by the integral recursion; works past the table limit as long
  /// as p itself is covered.
  mpz_class prime_power_raw(std::uint64_t p, std::uint64_t m) const {
    if (p > limit_ || spf_[p] != p) throw PreconditionError("prime_power_raw: p is not a prime within the table");
    if (m == 0) return 1;
    if (spec_.is_bad_prime(p)) return 0;
    const mpz_class pk = prime_weight_power(p);
    mpz_class prev = 1, cur = raw_[p];
    for (std::uint64_t j = 2; j <= m; ++j) {
      mpz_class next = raw_[p] * cur - pk * prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  }

  /// a(p^m) = a_f(p^m) / sqrt(p^{m(k-1)}) in high precision.
  mp::Float normalized_prime_power(std::uint64_t p, std::uint64_t m, mpfr_prec_t prec = mp::kDefaultPrecision) const {
    const mpz_class num = prime_power_raw(p, m);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m * (spec_.weight - 1)));
    mp::Float d(den, prec + 64);
    return mp::div(mp::Float(num, prec + 64), mp::sqrt(d));
  }

  friend CoefficientTable table_from_raw(const NewformSpec& spec, std::vector<mpz_class> raw);
  friend CoefficientTable build_table(const NewformSpec& spec, std::uint64_t limit, const TableOptions& options);

 private:
  NewformSpec spec_;
  std::uint64_t limit_ = 0;
  std::vector<mpz_class> raw_;
  std::vector<double> normalized_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint8_t> flagged_;

  void finish_normalization() {
    normalized_.assign(limit_ + 1, 0.0);
    const int half_even = (spec_.weight - 2) / 2;
    for (std::uint64_t n = 1; n <= limit_; ++n) {
      const double nd = static_cast<double>(n);
      const double scale = std::pow(nd, half_even) * std::sqrt(nd);
      normalized_[n] = raw_[n].get_d() / scale;
    }
  }

  void flag_bad_indices() {
    flagged_.assign(limit_ + 1, 0);
    for (std::uint64_t p = 2; p <= limit_; ++p) {
      if (spf_[p] != p || !spec_.is_bad_prime(p)) continue;
      for (std::uint64_t n = p; n <= limit_; n += p) flagged_[n] = 1;
    }
  }
};

/// Rebuild a table from previously computed integral coefficients (cache path).
inline CoefficientTable table_from_raw(const NewformSpec& spec, std::vector<mpz_class> raw) {
  if (raw.size() < 2) throw PreconditionError("table_from_raw: need at least a_f(1)");
  if (raw[1] != 1) throw ComputationError("table_from_raw: a_f(1) must be 1");
  CoefficientTable t;
  t.spec_ = spec;
  t.limit_ = raw.size() - 1;
  t.raw_ = std::move(raw);
  t.spf_ = smallest_prime_factors(static_cast<std::uint32_t>(t.limit_));
  t.flag_bad_indices();
  t.finish_normalization();
  return t;
}

/// Fill a_f at primes, extend to prime powers by the integral Hecke recursion
/// and to all n by multiplicativity, then normalize by n^{(k-1)/2}.
inline CoefficientTable build_table(const NewformSpec& spec, std::uint64_t limit, const TableOptions& options = {}) {
  if (limit == 0) throw PreconditionError("build_table: limit must be >= 1");
  if (limit > options.max_limit)
    throw PreconditionError("build_table: limit " + std::to_string(limit) + " exceeds the memory budget of " +
                            std::to_string(options.max_limit));

  CoefficientTable t;
  t.spec_ = spec;
  t.limit_ = limit;
  t.spf_ = smallest_prime_factors(static_cast<std::uint32_t>(limit));
  t.raw_.assign(limit + 1, 0);
  t.raw_[1] = 1;

  std::vector<mpz_class> tau;
  if (spec.kind == FormKind::DeltaForm) tau = tau_table(limit);

  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (t.spf_[p] != p) continue;
    if (spec.is_bad_prime(p)) continue;  // stays 0, flagged below
    const mpz_class ap = spec.kind == FormKind::DeltaForm ? tau[p] : mpz_class(ec_ap(spec, p));
    const mpz_class pk = t.prime_weight_power(p);
    t.raw_[p] = ap;
    std::uint64_t prev_index = 1, index = p;
    while (index <= limit / p) {
      const std::uint64_t next = index * p;
      t.raw_[next] = ap * t.raw_[index] - pk * t.raw_[prev_index];
      prev_index = index;
      index = next;
    }
  }

  for (std::uint64_t n = 2; n <= limit; ++n) {
    const std::uint64_t p = t.spf_[n];
    std::uint64_t pe = 1, rest = n;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
    }
    if (rest == 1) continue;
    t.raw_[n] = t.raw_[pe] * t.raw_[rest];
  }

  t.flag_bad_indices();
  t.finish_normalization();
  return t;
}

enum class AngleClass { RationalAngle, IrrationalCertifiedHeuristic };

inline const char* to_string(AngleClass c) {
  return c == AngleClass::RationalAngle ? "RationalAngle" : "IrrationalCertifiedHeuristic";
}

/// The Sato-Tate angle at p: a(p) = 2 cos(theta), 0 <= theta <= pi.
struct AngleRecord {
  std::uint64_t p = 0;
  int weight = 0;
  mpz_class ap;
  mp::Interval theta;
  mp::Interval fraction;  // theta / (2 pi)
  double cos_theta = 0.0;
  double sin_theta = 0.0;
  AngleClass classification = AngleClass::IrrationalCertifiedHeuristic;
  int precision_bits = 0;

  bool endpoint = false;  // theta in {0, pi}: a(p) = +-2

  mp::Float theta_mid() const { return theta.mid(); }
  mp::Float fraction_mid() const { return fraction.mid(); }
};

/// Angle from the exact integral coefficient a_f(p) of a weight-k form.
inline AngleRecord angle_from_coefficient(const mpz_class& ap, std::uint64_t p, int weight, int precision_bits = 256) {
  if (precision_bits < 64) throw PreconditionError("angle: precision_bits must be >= 64");
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(weight - 1));
  const mpz_class ap2 = ap * ap;
  if (ap2 > 4 * pk)
    throw ComputationError("angle: |a(p)| > 2 at p = " + std::to_string(p) + " (coefficient bug)");

  AngleRecord r;
  r.p = p;
  r.weight = weight;
  r.ap = ap;
  r.precision_bits = precision_bits;
  r.classification = AngleClass::IrrationalCertifiedHeuristic;
  int j_exact = -1;
  for (int j = 0; j <= 4; ++j) {
    if (ap2 == j * pk) {
      r.classification = AngleClass::RationalAngle;
      j_exact = j;
    }
  }

  // Target width 2^{1 - bits}; widen the working precision until it holds.
  mpfr_prec_t work = precision_bits + 32;
  mp::Float target(1.0, precision_bits + 8);
  mpfr_mul_2si(target.get(), target.get(), 1 - precision_bits, MPFR_RNDN);
  for (int attempt = 0;; ++attempt) {
    if (j_exact == 0) {
      r.theta = mp::div_2exp(mp::Interval::pi(work), 1);
    } else if (j_exact == 4) {
      r.theta = ap > 0 ? mp::Interval::from_double(0.0, work) : mp::Interval::pi(work);
    } else {
      const mp::Interval num = mp::Interval::from_mpz(ap, work);
      const mp::Interval den = mp::Interval::from_mpz(2, work) * mp::sqrt(mp::Interval::from_mpz(pk, work));
      r.theta = mp::acos(num / den);
    }
    if (r.theta.width() <= target) break;
    if (attempt > 8) throw ComputationError("angle: could not certify the requested precision");
    work *= 2;
  }

  const mp::Interval two_pi = mp::Interval::pi(work) * mp::Interval::from_mpz(2, work);
  r.fraction = mp::Interval(mp::div(r.theta.lo(), two_pi.hi(), MPFR_RNDD), mp::div(r.theta.hi(), two_pi.lo(), MPFR_RNDU));
  const mp::Float mid = r.theta.mid();
  r.cos_theta = mp::cos(mid).to_double();
  r.sin_theta = mp::sin(mid).to_double();
  if (j_exact == 4) {
    r.sin_theta = 0.0;
    r.endpoint = true;
  }
  return r;
}

inline AngleRecord angle(const CoefficientTable& table, std::uint64_t p, int precision_bits = 256) {
  if (!table.is_good_prime(p))
    throw PreconditionError("angle: p = " + std::to_string(p) + " is not a good prime within the table");
  return angle_from_coefficient(table.raw(p), p, table.spec().weight, precision_bits);
}

/// Evaluates a(p^m) = sin((m+1) theta) / sin(theta) repeatedly at one prime.
class PrimePowerEvaluator {
 public:
  explicit PrimePowerEvaluator(const AngleRecord& rec)
      : prec_(rec.precision_bits + 64), theta_(rec.theta_mid()), sin_theta_(prec_), arg_(prec_), val_(prec_) {
    mp::Float t(prec_);
    mpfr_set(t.get(), theta_.get(), MPFR_RNDN);
    theta_ = std::move(t);
    degenerate_ = rec.endpoint;
    negative_ = rec.ap < 0;
    mpfr_sin(sin_theta_.get(), theta_.get(), MPFR_RNDN);
  }

  const mp::Float& value(std::uint64_t m) {
    if (degenerate_) {
      mpfr_set_ui(val_.get(), static_cast<unsigned long>(m + 1), MPFR_RNDN);
      if (negative_ && (m % 2 == 1)) mpfr_neg(val_.get(), val_.get(), MPFR_RNDN);
      return val_;
    }
    mpfr_mul_ui(arg_.get(), theta_.get(), static_cast<unsigned long>(m + 1), MPFR_RNDN);
    mpfr_sin(val_.get(), arg_.get(), MPFR_RNDN);
    mpfr_div(val_.get(), val_.get(), sin_theta_.get(), MPFR_RNDN);
    return val_;
  }

  mpfr_prec_t precision() const { return prec_; }
  const mp::Float& sin_theta() const { return sin_theta_; }

 private:
  mpfr_prec_t prec_;
  mp::Float theta_;
  mp::Float sin_theta_;
  mp::Float arg_;
  mp::Float val_;
  bool degenerate_ = false;
  bool negative_ = false;
};

/// a(p^m) from the closed form, in high precision.
inline mp::Float prime_power_coeff_hp(const AngleRecord& rec, std::uint64_t m) {
  PrimePowerEvaluator ev(rec);
  return ev.value(m);
}

inline double prime_power_coeff(const AngleRecord& rec, std::uint64_t m) {
  return prime_power_coeff_hp(rec, m).to_double();
}

inline double prime_power_coeff(const CoefficientTable& table, std::uint64_t p, std::uint64_t m,
                                int precision_bits = 256) {
  return prime_power_coeff(angle(table, p, precision_bits), m);
}

}  // namespace modapprox
