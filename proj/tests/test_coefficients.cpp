#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "modapprox/arith.hpp"
#include "modapprox/coefficients.hpp"
#include "modapprox/ntt.hpp"
#include "oracles.hpp"

using namespace modapprox;

namespace {

const CoefficientTable& delta_table() {
  static const CoefficientTable t = build_table(NewformSpec::delta(), 100000);
  return t;
}

const CoefficientTable& curve_table(const std::string& name) {
  static std::map<std::string, CoefficientTable> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_table(forms::by_name(name), 100000)).first;
  return it->second;
}

}  // namespace

TEST(Ntt, MultiplyMatchesSchoolbook) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t la = 1 + rng() % 70, lb = 1 + rng() % 70;
    std::vector<mpz_class> a(la), b(lb);
    for (auto& v : a) v = mpz_class(static_cast<long>(rng() % 2001) - 1000) * (trial % 3 == 0 ? mpz_class("100000000000000000000") : 1);
    for (auto& v : b) v = static_cast<long>(rng() % 200001) - 100000;
    const std::size_t out = la + lb;
    std::vector<mpz_class> expect(out, 0);
    for (std::size_t i = 0; i < la; ++i)
      for (std::size_t j = 0; j < lb; ++j) expect[i + j] += a[i] * b[j];
    EXPECT_EQ(ntt::multiply_truncated(a, b, out), expect) << "trial " << trial;
  }
}

TEST(Tau, SmallValues) {
  const auto tau = tau_table(12);
  const long expect[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944};
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(tau[n], expect[n - 1]) << n;
  EXPECT_EQ(tau_table(1)[1], 1);
  EXPECT_THROW(tau_table(0), PreconditionError);
}

TEST(Tau, MatchesNaiveProduct) {
  const auto fast = tau_table(500);
  const auto slow = oracle::tau_naive(500);
  for (std::size_t n = 1; n <= 500; ++n) ASSERT_EQ(fast[n], slow[n]) << n;
  EXPECT_EQ(slow[2], -24);
  EXPECT_EQ(slow[6], slow[2] * slow[3]);
}

TEST(EcAp, CmCurveSmallPrimes) {
  const NewformSpec e = forms::curve_32a2();
  EXPECT_EQ(ec_ap(e, 3), 0);
  const long a5 = ec_ap(e, 5);
  EXPECT_LE(a5 * a5, 4 * 5);
  EXPECT_EQ(a5, oracle::ec_ap_enumerate(e.a, 5));
}

TEST(EcAp, MatchesEnumeration) {
  for (const char* name : {"11a1", "37a1", "32a2"}) {
    const NewformSpec e = forms::by_name(name);
    for (std::uint64_t p = 2; p <= 400; ++p) {
      if (!oracle::is_prime(p) || e.is_bad_prime(p)) continue;
      ASSERT_EQ(ec_ap(e, p), oracle::ec_ap_enumerate(e.a, static_cast<long>(p))) << name << " p=" << p;
    }
  }
}

TEST(EcAp, Errors) {
  const NewformSpec e = forms::curve_11a1();
  EXPECT_THROW(ec_ap(e, 11), PreconditionError);
  EXPECT_THROW(ec_ap(e, 9), PreconditionError);
  EXPECT_THROW(ec_ap(NewformSpec::delta(), 5), PreconditionError);
  EXPECT_THROW(NewformSpec::elliptic_curve({0, 0, 0, 0, 0}, 1), PreconditionError);
}

TEST(Table, BasicIdentities) {
  const auto& t = delta_table();
  EXPECT_EQ(t.raw(1), 1);
  EXPECT_DOUBLE_EQ(t.normalized(1), 1.0);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 97, 313}) {
    const double ap = t.normalized(p);
    EXPECT_NEAR(t.normalized(p * p), ap * ap - 1.0, 1e-12) << p;
  }
  EXPECT_THROW(build_table(NewformSpec::delta(), 0), PreconditionError);
  TableOptions small;
  small.max_limit = 1000;
  EXPECT_THROW(build_table(NewformSpec::delta(), 1001, small), PreconditionError);
}

TEST(Table, DeligneBoundDelta) {
  const auto& t = delta_table();
  for (std::uint64_t n = 1; n <= 10000; ++n)
    ASSERT_LE(std::fabs(t.normalized(n)), static_cast<double>(t.divisor_count(n)) * (1 + 1e-12)) << n;
}

TEST(Table, Multiplicativity) {
  std::mt19937_64 rng(11);
  for (const char* name : {"delta", "11a1", "32a2", "37a1"}) {
    const auto& t = std::string(name) == "delta" ? delta_table() : curve_table(name);
    int checked = 0;
    while (checked < 500) {
      const std::uint64_t m = 2 + rng() % 300, n = 2 + rng() % 300;
      if (gcd_u64(m, n) != 1) continue;
      ++checked;
      ASSERT_EQ(t.raw(m * n), t.raw(m) * t.raw(n)) << name << " " << m << "*" << n;
      ASSERT_NEAR(t.normalized(m * n), t.normalized(m) * t.normalized(n), 1e-9) << name;
    }
  }
}

TEST(Table, HasseBoundAndCmZeros) {
  for (const char* name : {"11a1", "32a2", "37a1"}) {
    const auto& t = curve_table(name);
    for (std::uint64_t p = 2; p <= 100000; ++p)
      if (t.is_good_prime(p)) {
        ASSERT_LE(std::fabs(t.normalized(p)), 2.0 + 1e-12) << name << " " << p;
      }
  }
  const auto& cm = curve_table("32a2");
  for (std::uint64_t p = 3; p <= 10000; ++p) {
    if (!cm.is_good_prime(p)) continue;
    EXPECT_EQ(cm.raw(p) == 0, p % 4 == 3) << p;
  }
}

TEST(Table, BadPrimesFlagged) {
  const auto& t = curve_table("11a1");
  EXPECT_TRUE(t.flagged(11));
  EXPECT_TRUE(t.flagged(22));
  EXPECT_FALSE(t.flagged(12));
  EXPECT_EQ(t.raw(11), 0);
  EXPECT_FALSE(t.is_good_prime(11));
}

TEST(DivisorFunction, Values) {
  EXPECT_EQ(divisor_function(1), 1u);
  EXPECT_EQ(divisor_function(12), 6u);
  EXPECT_EQ(divisor_function(97), 2u);
  const auto spf = smallest_prime_factors(5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) ASSERT_EQ(divisor_function(n, spf), oracle::divisors_enumerate(n)) << n;
}

TEST(Angle, ExactCases) {
  const auto& cm = curve_table("32a2");
  const AngleRecord r = angle(cm, 3);
  EXPECT_EQ(r.classification, AngleClass::RationalAngle);
  EXPECT_NEAR(r.theta_mid().to_double(), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(r.fraction_mid().to_double(), 0.25, 1e-15);
  EXPECT_TRUE(r.fraction.contains(mp::Float(0.25, 64)));

  const AngleRecord top = angle_from_coefficient(4, 4, 2);
  EXPECT_EQ(top.classification, AngleClass::RationalAngle);
  EXPECT_EQ(top.theta_mid().to_double(), 0.0);
  const AngleRecord bottom = angle_from_coefficient(-4, 4, 2);
  EXPECT_NEAR(bottom.theta_mid().to_double(), std::numbers::pi, 1e-15);
  EXPECT_TRUE(bottom.endpoint);

  // a(p)^2 = p^{k-1}: theta = pi/3.
  const AngleRecord third = angle_from_coefficient(3, 9, 2);
  EXPECT_EQ(third.classification, AngleClass::RationalAngle);
  EXPECT_NEAR(third.theta_mid().to_double(), std::numbers::pi / 3, 1e-15);
}

TEST(Angle, DeltaAtTwo) {
  const AngleRecord r = angle(delta_table(), 2, 256);
  const double a2 = -24.0 / std::pow(2.0, 5.5);
  EXPECT_NEAR(a2, -0.530330, 1e-6);
  EXPECT_NEAR(r.cos_theta, a2 / 2, 1e-15);
  EXPECT_NEAR(r.theta_mid().to_double(), std::acos(a2 / 2), 1e-15);
  EXPECT_EQ(r.classification, AngleClass::IrrationalCertifiedHeuristic);
  mp::Float limit(1.0, 300);
  mpfr_mul_2si(limit.get(), limit.get(), 1 - 256, MPFR_RNDN);
  EXPECT_LE(r.theta.width(), limit);
  // 2 cos(theta) brackets the exact a(2).
  const mp::Float c_lo = mp::cos(r.theta.hi(), MPFR_RNDD), c_hi = mp::cos(r.theta.lo(), MPFR_RNDU);
  mp::Float exact(-24.0, 300);
  mp::Float s = mp::sqrt(mp::Float(2.0, 300));
  exact = mp::div(exact, mp::mul(mp::Float(64.0, 300), s));  // a(2)/2 = -24 / (2 * 2^{11/2})
  EXPECT_LE(c_lo, exact);
  EXPECT_GE(c_hi, exact);
}

TEST(Angle, Errors) {
  EXPECT_THROW(angle(curve_table("11a1"), 11), PreconditionError);
  EXPECT_THROW(angle_from_coefficient(100, 5, 2), ComputationError);
  EXPECT_THROW(angle_from_coefficient(1, 5, 2, 32), PreconditionError);
}

TEST(PrimePower, ClosedFormMatchesRecursion) {
  const auto& t = delta_table();
  EXPECT_DOUBLE_EQ(prime_power_coeff(t, 2, 0), 1.0);
  EXPECT_NEAR(prime_power_coeff(t, 2, 5), t.normalized(32), 1e-9);
  const auto& cm = curve_table("32a2");
  for (std::uint64_t m = 1; m < 40; m += 2) EXPECT_NEAR(prime_power_coeff(cm, 3, m), 0.0, 1e-12) << m;
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const AngleRecord rec = angle(t, p);
    const auto rec_values = oracle::prime_power_recursion(t.normalized(p), 30);
    for (std::uint64_t m = 0; m <= 30; ++m)
      EXPECT_NEAR(prime_power_coeff(rec, m), static_cast<double>(rec_values[m]), 1e-9) << p << "^" << m;
  }
}

TEST(PrimePower, IntegralRecursionBeyondTable) {
  const auto& t = curve_table("37a1");
  for (std::uint64_t m = 0; m < 30; ++m) {
    const double exact = t.normalized_prime_power(5, m).to_double();
    EXPECT_NEAR(prime_power_coeff(t, 5, m), exact, 1e-9) << m;
  }
}
