#pragma once

// Thin RAII layer over MPFR: a value type `Float` and a directed-rounding
// `Interval` whose endpoints always enclose the true value.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "modapprox/error.hpp"

namespace modapprox::mp {

inline constexpr mpfr_prec_t kDefaultPrecision = 256;

class Float {
 public:
  explicit Float(mpfr_prec_t prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Float(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Float(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), rnd);
  }
  Float(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
  }
  Float(const Float& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Float(Float&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Float& operator=(const Float& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Float& operator=(Float&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Float() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Decimal rendering with `digits` significant digits.
  std::string to_string(int digits = 40) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  static Float pi(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Float r(prec);
    mpfr_const_pi(r.v_, rnd);
    return r;
  }

 private:
  mpfr_t v_;
};

inline mpfr_prec_t max_prec(const Float& a, const Float& b) {
  return std::max(a.precision(), b.precision());
}

inline Float add(const Float& a, const Float& b, mpfr_rnd_t rnd = MPFR_RNDN) {
  Float r(max_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), rnd);
  return r;
}
inline Float sub(const Float& a, const Float& b, mpfr_rnd_t rnd = MPFR_RNDN) {
  Float r(max_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), rnd);
  return r;
}
inline Float mul(const Float& a, const Float& b, mpfr_rnd_t rnd = MPFR_RNDN) {
  Float r(max_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), rnd);
  return r;
}
inline Float div(const Float& a, const Float& b, mpfr_rnd_t rnd = MPFR_RNDN) {
  Float r(max_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), rnd);
  return r;
}

inline Float operator+(const Float& a, const Float& b) { return add(a, b); }
inline Float operator-(const Float& a, const Float& b) { return sub(a, b); }
inline Float operator*(const Float& a, const Float& b) { return mul(a, b); }
inline Float operator/(const Float& a, const Float& b) { return div(a, b); }
inline Float operator-(const Float& a) {
  Float r(a.precision());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

inline bool operator<(const Float& a, const Float& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
inline bool operator>(const Float& a, const Float& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
inline bool operator<=(const Float& a, const Float& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
inline bool operator>=(const Float& a, const Float& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }
inline bool operator==(const Float& a, const Float& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

inline Float mul_si(const Float& a, long k, mpfr_rnd_t rnd = MPFR_RNDN) {
  Float r(a.precision());
  mpfr_mul_si(r.get(), a.get(), k, rnd);
  return r;
}

#define MODAPPROX_MP_UNARY(name, fn)                                  \
  inline Float name(const Float& a, mpfr_rnd_t rnd = MPFR_RNDN) {     \
    Float r(a.precision());                                           \
    fn(r.get(), a.get(), rnd);                                        \
    return r;                                                         \
  }
MODAPPROX_MP_UNARY(sqrt, mpfr_sqrt)
MODAPPROX_MP_UNARY(sin, mpfr_sin)
MODAPPROX_MP_UNARY(cos, mpfr_cos)
MODAPPROX_MP_UNARY(asin, mpfr_asin)
MODAPPROX_MP_UNARY(acos, mpfr_acos)
MODAPPROX_MP_UNARY(abs, mpfr_abs)
MODAPPROX_MP_UNARY(log, mpfr_log)
MODAPPROX_MP_UNARY(exp, mpfr_exp)
#undef MODAPPROX_MP_UNARY

inline Float floor(const Float& a) {
  Float r(a.precision());
  mpfr_floor(r.get(), a.get());
  return r;
}

// Fractional part in [0, 1); exact.
inline Float frac_positive(const Float& a) {
  Float r(a.precision());
  mpfr_sub(r.get(), a.get(), floor(a).get(), MPFR_RNDN);
  return r;
}

// Distance to the nearest integer, in [0, 1/2].
inline Float nearest_int_distance(const Float& a) {
  Float f = frac_positive(a);
  Float g(f.precision());
  mpfr_ui_sub(g.get(), 1, f.get(), MPFR_RNDN);
  return f <= g ? f : g;
}

inline mpz_class floor_to_mpz(const Float& a) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), a.get(), MPFR_RNDD);
  return z;
}

// Exact rational value of a finite float.
inline mpq_class to_rational(const Float& a) {
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), a.get());
  mpq_class q(m);
  if (e >= 0) {
    mpz_class s = m;
    mpz_mul_2exp(s.get_mpz_t(), s.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    q = mpq_class(s);
  } else {
    mpz_class den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    q = mpq_class(m, den);
    q.canonicalize();
  }
  return q;
}

// Closed interval [lo, hi] with outward-rounded endpoints.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kDefaultPrecision) : lo_(prec), hi_(prec) {}
  Interval(Float lo, Float hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw PreconditionError("interval endpoints out of order");
  }

  static Interval point(const Float& x) { return Interval(x, x); }
  static Interval from_double(double x, mpfr_prec_t prec) { return point(Float(x, prec)); }
  static Interval from_mpz(const mpz_class& z, mpfr_prec_t prec) {
    return Interval(Float(z, prec, MPFR_RNDD), Float(z, prec, MPFR_RNDU));
  }
  static Interval from_rational(const mpq_class& q, mpfr_prec_t prec) {
    return Interval(Float(q, prec, MPFR_RNDD), Float(q, prec, MPFR_RNDU));
  }
  static Interval pi(mpfr_prec_t prec) {
    return Interval(Float::pi(prec, MPFR_RNDD), Float::pi(prec, MPFR_RNDU));
  }
  static Interval e(mpfr_prec_t prec) {
    Float one(1.0, prec);
    return Interval(exp(one, MPFR_RNDD), exp(one, MPFR_RNDU));
  }

  const Float& lo() const { return lo_; }
  const Float& hi() const { return hi_; }
  mpfr_prec_t precision() const { return std::max(lo_.precision(), hi_.precision()); }

  Float width() const { return sub(hi_, lo_, MPFR_RNDU); }
  Float mid() const {
    Float s = add(lo_, hi_);
    mpfr_div_2ui(s.get(), s.get(), 1, MPFR_RNDN);
    return s;
  }
  bool contains(const Float& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool is_point() const { return lo_ == hi_; }

  // Intersect with [a, b]; callers use this when the true value is known to
  // lie there (e.g. clamping a cosine to [-1, 1]).
  Interval clamp(double a, double b) const {
    Interval r = *this;
    Float fa(a, precision()), fb(b, precision());
    if (r.lo_ < fa) r.lo_ = fa;
    if (r.hi_ > fb) r.hi_ = fb;
    if (r.hi_ < r.lo_) throw ComputationError("interval clamp produced an empty set");
    return r;
  }

 private:
  Float lo_;
  Float hi_;
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return Interval(add(a.lo(), b.lo(), MPFR_RNDD), add(a.hi(), b.hi(), MPFR_RNDU));
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return Interval(sub(a.lo(), b.hi(), MPFR_RNDD), sub(a.hi(), b.lo(), MPFR_RNDU));
}
inline Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

inline Interval operator*(const Interval& a, const Interval& b) {
  const Float* pa[2] = {&a.lo(), &a.hi()};
  const Float* pb[2] = {&b.lo(), &b.hi()};
  Float lo = mul(*pa[0], *pb[0], MPFR_RNDD);
  Float hi = mul(*pa[0], *pb[0], MPFR_RNDU);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Float d = mul(*pa[i], *pb[j], MPFR_RNDD);
      Float u = mul(*pa[i], *pb[j], MPFR_RNDU);
      if (d < lo) lo = std::move(d);
      if (u > hi) hi = std::move(u);
    }
  }
  return Interval(std::move(lo), std::move(hi));
}

inline Interval reciprocal(const Interval& a) {
  if (a.contains_zero()) throw ComputationError("interval reciprocal: interval contains zero");
  Float one_lo(1.0, a.precision()), one_hi(1.0, a.precision());
  return Interval(div(one_lo, a.hi(), MPFR_RNDD), div(one_hi, a.lo(), MPFR_RNDU));
}

inline Interval operator/(const Interval& a, const Interval& b) { return a * reciprocal(b); }

inline Interval sqrt(const Interval& a) {
  if (a.lo().sign() < 0) throw ComputationError("interval sqrt of a negative lower endpoint");
  return Interval(sqrt(a.lo(), MPFR_RNDD), sqrt(a.hi(), MPFR_RNDU));
}

// acos is decreasing on [-1, 1].
inline Interval acos(const Interval& a) {
  Interval c = a.clamp(-1.0, 1.0);
  return Interval(acos(c.hi(), MPFR_RNDD), acos(c.lo(), MPFR_RNDU));
}

inline Interval asin(const Interval& a) {
  Interval c = a.clamp(-1.0, 1.0);
  return Interval(asin(c.lo(), MPFR_RNDD), asin(c.hi(), MPFR_RNDU));
}

inline Interval div_2exp(const Interval& a, unsigned long k) {
  Float lo(a.lo()), hi(a.hi());
  mpfr_div_2ui(lo.get(), lo.get(), k, MPFR_RNDD);
  mpfr_div_2ui(hi.get(), hi.get(), k, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

// Interval minus an exact integer.
inline Interval sub_integer(const Interval& a, const mpz_class& n) {
  Float lo(a.lo().precision()), hi(a.hi().precision());
  mpfr_sub_z(lo.get(), a.lo().get(), n.get_mpz_t(), MPFR_RNDD);
  mpfr_sub_z(hi.get(), a.hi().get(), n.get_mpz_t(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

}  // namespace modapprox::mp
