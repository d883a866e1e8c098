#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "modapprox/coefficients.hpp"
#include "modapprox/equidist.hpp"
#include "oracles.hpp"

using namespace modapprox;
using namespace modapprox::equidist;

namespace {

const CoefficientTable& delta_table() {
  static const CoefficientTable t = build_table(NewformSpec::delta(), 100000);
  return t;
}

double inverse_cdf(const MeasureSpec& m, double u) {
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(m, mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Measure, SatoTateEndpoints) {
  const auto st = MeasureSpec::sato_tate();
  EXPECT_DOUBLE_EQ(cdf(st, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(cdf(st, -1.0), 0.0);
  EXPECT_NEAR(cdf(st, 0.0), 0.5, 1e-16);
  EXPECT_DOUBLE_EQ(cdf(st, 3.0), 1.0);
  // Density check against Simpson on (2/pi) sqrt(1 - t^2).
  const double s = oracle::simpson([](double t) { return 2.0 / std::numbers::pi * std::sqrt(1.0 - t * t); }, -0.3, 0.6, 2000);
  EXPECT_NEAR(cdf(st, 0.6) - cdf(st, -0.3), s, 1e-10);
}

TEST(Measure, CmAtom) {
  const auto cm = MeasureSpec::cm();
  EXPECT_DOUBLE_EQ(cdf(cm, 0.0) - cdf_left(cm, 0.0), 0.5);
  EXPECT_NEAR(cdf(cm, -1e-300), 0.25, 1e-15);
  EXPECT_NEAR(cdf(cm, 0.0), 0.75, 1e-15);
  EXPECT_DOUBLE_EQ(cdf(cm, -1.0), 0.0);
  EXPECT_DOUBLE_EQ(cdf(cm, 1.0), 1.0);
  const auto arc = MeasureSpec::arcsine();
  EXPECT_NEAR(cdf(arc, 0.0), 0.5, 1e-16);
  EXPECT_NEAR(cdf(arc, 0.5), 2.0 / 3.0, 1e-15);  // asin(1/2) = pi/6
}

TEST(Measure, PlancherelMassAndMonotone) {
  for (std::uint64_t p : {2, 3, 5, 100, 10007}) {
    const auto m = MeasureSpec::plancherel(p);
    EXPECT_NEAR(cdf(m, std::numbers::pi), 1.0, 1e-10) << p;
    double prev = 0.0;
    for (int i = 0; i <= 512; ++i) {
      const double th = std::numbers::pi * i / 512;
      const double v = cdf(m, th);
      ASSERT_GE(v, prev - 1e-9) << p << " " << i;
      prev = v;
    }
    for (double th : {0.3, 1.0, 2.0, 2.9}) {
      const double s = oracle::simpson([p](double t) { return plancherel_density(p, t); }, 0.0, th, 20000);
      EXPECT_NEAR(cdf(m, th), s, 1e-10) << p << " " << th;
    }
  }
}

TEST(Measure, PlancherelTendsToSatoTate) {
  double prev = INFINITY;
  for (std::uint64_t p : {100ull, 10000ull, 1000000ull}) {
    double sup = 0.0;
    for (int i = 0; i <= 512; ++i) {
      const double th = std::numbers::pi * i / 512;
      sup = std::max(sup, std::fabs(plancherel_density(p, th) - sato_tate_theta_density(th)));
    }
    EXPECT_LT(sup, prev);
    prev = sup;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(Measure, PlancherelInT) {
  const auto m = MeasureSpec::plancherel(7);
  EXPECT_NEAR(cdf_t(m, -1.0), 0.0, 1e-10);
  EXPECT_NEAR(cdf_t(m, 1.0), 1.0, 1e-10);
  for (double t : {-0.5, 0.0, 0.4}) {
    const double s = oracle::simpson([](double u) { return plancherel_density_t(7, u); }, t, 0.99, 20000);
    EXPECT_NEAR(cdf_t(m, 0.99) - cdf_t(m, t), s, 1e-8) << t;
  }
  const auto big = MeasureSpec::plancherel(1000000);
  for (double t : {-0.8, -0.1, 0.5}) EXPECT_NEAR(cdf_t(big, t), cdf(MeasureSpec::sato_tate(), t), 1e-5);
}

TEST(Empirical, DeltaSmall) {
  const auto s = empirical_distribution(delta_table(), 10);
  EXPECT_EQ(s.size(), 4u);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  const auto all = empirical_distribution(delta_table(), 100000);
  EXPECT_EQ(all.size(), 9592u);
  for (double v : all) {
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_THROW(empirical_distribution(delta_table(), 100001), PreconditionError);
}

TEST(Empirical, CmZeroFraction) {
  const auto t = build_table(forms::curve_32a2(), 10000);
  const auto s = empirical_distribution(t, 10000);
  const double zeros = static_cast<double>(std::count(s.begin(), s.end(), 0.0));
  EXPECT_NEAR(zeros / static_cast<double>(s.size()), 0.5, 0.02);
}

TEST(Ks, Constructions) {
  const auto st = MeasureSpec::sato_tate();
  EXPECT_DOUBLE_EQ(ks_statistic({0.0}, st), 0.5);
  const int n = 199;
  std::vector<double> q;
  for (int i = 1; i <= n; ++i) q.push_back(inverse_cdf(st, static_cast<double>(i) / (n + 1)));
  EXPECT_LE(ks_statistic(q, st), 1.0 / (n + 1) + 1e-9);
  EXPECT_THROW(ks_statistic({}, st), PreconditionError);
  // CM: F(-1/2) = 1/6 and F(1/2) = 5/6, so both samples sit 1/3 away.
  EXPECT_NEAR(ks_statistic({-0.5, 0.5}, MeasureSpec::cm()), 1.0 / 3.0, 1e-15);
}

TEST(Ks, DeltaAgainstSatoTate) {
  const auto s = empirical_distribution(delta_table(), 100000);
  EXPECT_LT(ks_statistic(s, MeasureSpec::sato_tate()), 0.05);
}

TEST(IntervalCount, Predictions) {
  const auto s = empirical_distribution(delta_table(), 100000);
  const auto full = interval_count(s, -1.0, 1.0);
  EXPECT_EQ(full.observed, s.size());
  EXPECT_NEAR(full.predicted, static_cast<double>(s.size()), 1e-9);
  EXPECT_NEAR(interval_count(s, 0.0, 1.0).predicted, s.size() / 2.0, 1e-9);
  const auto mid = interval_count_ratio(delta_table(), 100000, 0.25, 0.75);
  const double ratio = static_cast<double>(mid.observed) / mid.predicted;
  EXPECT_GT(ratio, 0.9);
  EXPECT_LT(ratio, 1.1);
  EXPECT_THROW(interval_count(s, 0.5, 0.2), PreconditionError);
}

TEST(Histogram, Totals) {
  const auto s = empirical_distribution(delta_table(), 20000);
  for (const auto& m : {MeasureSpec::sato_tate(), MeasureSpec::cm()}) {
    const auto h = histogram(s, 16, m);
    std::uint64_t count = 0;
    double predicted = 0.0;
    for (const auto& b : h) {
      count += b.count;
      predicted += b.predicted;
    }
    EXPECT_EQ(count, s.size());
    EXPECT_NEAR(predicted, static_cast<double>(s.size()), 1e-6);
  }
}
