#include <gtest/gtest.h>

#include "modapprox/contfrac.hpp"
#include "oracles.hpp"

using namespace modapprox;
using contfrac::ContinuedFraction;

namespace {

void expect_convergent_identities(const ContinuedFraction& cf) {
  ASSERT_EQ(cf.numerators.size(), cf.certified_depth() + 1);
  EXPECT_EQ(cf.denominators[0], 1);
  EXPECT_EQ(cf.numerators[0], cf.a0);
  const mp::Float mid = cf.value.mid();
  for (std::size_t r = 0; r + 1 < cf.denominators.size(); ++r) {
    const mpz_class prev_q = r == 0 ? mpz_class(0) : cf.denominators[r - 1];
    EXPECT_EQ(cf.denominators[r + 1], cf.quotients[r] * cf.denominators[r] + prev_q);
    const mpz_class det = cf.numerators[r + 1] * cf.denominators[r] - cf.numerators[r] * cf.denominators[r + 1];
    EXPECT_EQ(abs(det), 1) << r;
    // ||q_r x|| < 1 / q_{r+1}
    const double d = contfrac::scaled_distance(cf, cf.denominators[r]).to_double();
    EXPECT_LT(d, 1.0 / cf.denominators[r + 1].get_d()) << r;
  }
}

}  // namespace

TEST(ContFrac, GoldenRatio) {
  const auto cf = contfrac::expand(contfrac::constants::golden_ratio(256), 50);
  EXPECT_EQ(cf.a0, 1);
  ASSERT_EQ(cf.certified_depth(), 50u);
  for (const auto& a : cf.quotients) EXPECT_EQ(a, 1);
  expect_convergent_identities(cf);
  const auto proxy = contfrac::is_badly_approximable_up_to(cf, 40);
  EXPECT_TRUE(proxy.bounded);
  EXPECT_EQ(proxy.max_quotient, 1);
  EXPECT_FALSE(proxy.terminating);
}

TEST(ContFrac, Sqrt2) {
  const auto cf = contfrac::expand(contfrac::constants::sqrt2(256), 60);
  EXPECT_EQ(cf.a0, 1);
  EXPECT_EQ(cf.certified_depth(), 60u);
  for (const auto& a : cf.quotients) EXPECT_EQ(a, 2);
  expect_convergent_identities(cf);
}

TEST(ContFrac, EulerNumber) {
  const auto cf = contfrac::expand(contfrac::constants::e(256), 20);
  EXPECT_EQ(cf.a0, 2);
  for (std::size_t i = 0; i < 20; ++i) {
    // 1, 2k, 1 pattern: a_{3k-1} = 2k.
    const long expect = (i % 3 == 1) ? 2 * static_cast<long>(i / 3 + 1) : 1;
    EXPECT_EQ(cf.quotients[i], expect) << i;
  }
  const auto proxy = contfrac::is_badly_approximable_up_to(cf, 20, 5);
  EXPECT_FALSE(proxy.bounded);
  EXPECT_GE(proxy.max_quotient, 6);
}

TEST(ContFrac, ExactRational) {
  const auto cf = contfrac::expand(mpq_class(355, 113));
  EXPECT_TRUE(cf.terminated);
  const auto oracle_cf = oracle::cf_euclid(355, 113);
  ASSERT_EQ(cf.certified_depth() + 1, oracle_cf.size());
  EXPECT_EQ(cf.a0, oracle_cf[0]);
  for (std::size_t i = 0; i < cf.quotients.size(); ++i) EXPECT_EQ(cf.quotients[i], oracle_cf[i + 1]);
  EXPECT_EQ(cf.numerators.back(), 355);
  EXPECT_EQ(cf.denominators.back(), 113);
  EXPECT_GE(cf.quotients.back(), 2);
  const auto proxy = contfrac::is_badly_approximable_up_to(cf, cf.certified_depth());
  EXPECT_TRUE(proxy.terminating);
}

TEST(ContFrac, RationalViaInterval) {
  // An enclosure of 355/113 cannot decide the final quotient; it stops after a certified prefix.
  const auto cf = contfrac::expand(mp::Interval::from_rational(mpq_class(355, 113), 256), 100);
  EXPECT_FALSE(cf.terminated);
  const auto exact = contfrac::expand(mpq_class(355, 113));
  ASSERT_LE(cf.quotients.size(), exact.quotients.size());
  for (std::size_t i = 0; i < cf.quotients.size(); ++i) EXPECT_EQ(cf.quotients[i], exact.quotients[i]);

  // Exact all the way down when every reciprocal is representable.
  const auto dy = contfrac::expand(mp::Interval::from_rational(mpq_class(9, 4), 256), 100);
  EXPECT_TRUE(dy.terminated);
  EXPECT_EQ(dy.quotients, contfrac::expand(mpq_class(9, 4)).quotients);
}

TEST(ContFrac, NegativeRationalFloor) {
  const auto cf = contfrac::expand(mpq_class(-7, 3));
  const auto oracle_cf = oracle::cf_euclid(-7, 3);
  EXPECT_EQ(cf.a0, oracle_cf[0]);
  ASSERT_EQ(cf.quotients.size() + 1, oracle_cf.size());
  for (std::size_t i = 0; i < cf.quotients.size(); ++i) EXPECT_EQ(cf.quotients[i], oracle_cf[i + 1]);
}

TEST(ContFrac, StableUnderRefinement) {
  const auto coarse = contfrac::expand(contfrac::constants::pi(128), 1000);
  const auto fine = contfrac::expand(contfrac::constants::pi(256), 1000);
  ASSERT_LT(coarse.certified_depth(), fine.certified_depth());
  for (std::size_t i = 0; i < coarse.certified_depth(); ++i) EXPECT_EQ(coarse.quotients[i], fine.quotients[i]) << i;
  EXPECT_EQ(fine.quotients[0], 7);
  EXPECT_EQ(fine.quotients[1], 15);
  EXPECT_EQ(fine.quotients[2], 1);
  EXPECT_EQ(fine.quotients[3], 292);
}

TEST(ContFrac, Imprecise) {
  const mp::Interval wide(mp::Float(0.9, 64), mp::Float(1.1, 64));
  EXPECT_THROW(contfrac::expand(wide, 5), ComputationError);
  const mp::Interval tiny(mp::Float(0.31, 64), mp::Float(0.32, 64));  // floor(1/x) is 3 on both ends
  const auto cf = contfrac::expand(tiny, 5);
  EXPECT_EQ(cf.certified_depth(), 1u);
  const mp::Interval none(mp::Float(0.3, 64), mp::Float(0.4, 64));
  EXPECT_THROW(contfrac::expand(none, 5), ComputationError);
  EXPECT_THROW(contfrac::is_badly_approximable_up_to(cf, 2), PreconditionError);
}

TEST(NearestIntDistance, Values) {
  EXPECT_EQ(contfrac::nearest_int_distance(0.5), 0.5);
  EXPECT_EQ(contfrac::nearest_int_distance(-0.5), 0.5);
  EXPECT_EQ(contfrac::nearest_int_distance(3.0), 0.0);
  EXPECT_NEAR(contfrac::nearest_int_distance(2.7), 0.3, 1e-15);
  EXPECT_NEAR(contfrac::nearest_int_distance(-2.7), 0.3, 1e-15);
}
