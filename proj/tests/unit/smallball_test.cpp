#include <gtest/gtest.h>

#include <cmath>

#include "omlat/errors.hpp"
#include "omlat/smallball.hpp"

using namespace omlat;

TEST(SmallBallBounds, AlphaOne) {
  const SmallBallBounds b = smallball_bounds(1.0, 0.5);
  EXPECT_DOUBLE_EQ(b.rho, 1.0);
  EXPECT_DOUBLE_EQ(b.rate_up, 0.5);
  EXPECT_DOUBLE_EQ(b.rate_low, 2.0);
  EXPECT_DOUBLE_EQ(b.prefactor_exponent_up, 0.0);
  EXPECT_DOUBLE_EQ(b.prefactor_exponent_low, 2.0);
  EXPECT_DOUBLE_EQ(b.upper, std::exp(-0.5 * 4.0));
  EXPECT_DOUBLE_EQ(b.lower, 0.25 * std::exp(-2.0 * 4.0));
}

TEST(SmallBallBounds, AlphaThreeHalves) {
  const SmallBallBounds b = smallball_bounds(1.5, 0.3);
  EXPECT_DOUBLE_EQ(b.rho, 0.5);
  EXPECT_DOUBLE_EQ(b.rate_up, 1.0);
  EXPECT_DOUBLE_EQ(b.rate_low, 1.5 * std::sqrt(1.5));
}

TEST(SmallBallBounds, UpperRateBelowLowerRate) {
  for (double alpha : {0.51, 0.6, 0.75, 1.0, 2.0, 5.0}) {
    const SmallBallBounds b = smallball_bounds(alpha, 0.5);
    EXPECT_LT(b.rate_up, b.rate_low) << alpha;
    EXPECT_LE(b.lower, b.upper) << alpha;
  }
}

TEST(SmallBallBounds, DomainErrors) {
  EXPECT_THROW(smallball_bounds(0.5, 0.3), DomainError);
  EXPECT_THROW(smallball_bounds(0.2, 0.3), DomainError);
  EXPECT_THROW(smallball_bounds(1.0, 0.0), DomainError);
  EXPECT_THROW(smallball_bounds(1.0, 1.5), DomainError);
}

TEST(Wilson, KnownValues) {
  const Interval i = wilson_interval(50, 100);
  EXPECT_NEAR(i.lo, 0.4038, 1e-4);
  EXPECT_NEAR(i.hi, 0.5962, 1e-4);
  const Interval zero = wilson_interval(0, 1000);
  EXPECT_EQ(zero.lo, 0.0);
  EXPECT_NEAR(zero.hi, 3.84 / 1003.84, 1e-4);
  EXPECT_EQ(wilson_interval(10, 10).hi, 1.0);
}

TEST(SmallBallMC, RequiredIndexFromIntegralBound) {
  const std::size_t unit = required_max_index(1.0, 1.0);
  EXPECT_GE(unit, 1000u);
  EXPECT_LE(unit, 1001u);
  const std::size_t I = required_max_index(1.0, 0.3);
  EXPECT_LT(1.0 / static_cast<double>(I), 1e-3 * 0.09);
  SmallBallOptions o;
  o.eps = {0.3};
  o.max_index = 100;
  try {
    smallball_mc(o);
    FAIL() << "expected a truncation error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(std::to_string(I)), std::string::npos);
  }
}

TEST(SmallBallMC, HugeRadiusHoldsAllMass) {
  SmallBallOptions o;
  o.eps = {100.0};
  o.samples = 2000;
  for (auto est : {SmallBallEstimator::Indicator, SmallBallEstimator::Conditional}) {
    o.estimator = est;
    const auto r = smallball_mc(o);
    EXPECT_NEAR(r[0].estimate, 1.0, 1e-12);
    EXPECT_EQ(r[0].hits, 2000u);
  }
}

TEST(SmallBallMC, MonotoneInRadiusOnSharedSamples) {
  SmallBallOptions o;
  o.eps = {0.8, 0.6, 0.7, 0.5, 1.0};
  o.samples = 20000;
  for (auto est : {SmallBallEstimator::Indicator, SmallBallEstimator::Conditional}) {
    o.estimator = est;
    const auto r = smallball_mc(o);
    auto at = [&](double e) {
      for (const auto& x : r) {
        if (x.eps == e) return x.estimate;
      }
      return -1.0;
    };
    EXPECT_LE(at(0.5), at(0.6));
    EXPECT_LE(at(0.6), at(0.7));
    EXPECT_LE(at(0.7), at(0.8));
    EXPECT_LE(at(0.8), at(1.0));
  }
}

TEST(SmallBallMC, EstimatorsAgree) {
  SmallBallOptions o;
  o.eps = {0.8};
  o.samples = 40000;
  o.estimator = SmallBallEstimator::Indicator;
  const auto a = smallball_mc(o);
  o.estimator = SmallBallEstimator::Conditional;
  const auto b = smallball_mc(o);
  EXPECT_EQ(a[0].hits, b[0].hits);
  EXPECT_GT(b[0].estimate, a[0].ci_lo);
  EXPECT_LT(b[0].estimate, a[0].ci_hi);
  EXPECT_LT(b[0].ci_hi - b[0].ci_lo, a[0].ci_hi - a[0].ci_lo);
}

TEST(SmallBallMC, DeterministicAcrossRuns) {
  SmallBallOptions o;
  o.eps = {0.7, 0.9};
  o.samples = 5000;
  o.seed = 77;
  const auto a = smallball_mc(o);
  const auto b = smallball_mc(o);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_EQ(a[j].estimate, b[j].estimate);
    EXPECT_EQ(a[j].hits, b[j].hits);
  }
}

TEST(SmallBallMC, ChiSquareCaseMatchesClosedForm) {
  // alpha large: the sum is essentially X_1^2, so P = erf(eps / sqrt(2)).
  SmallBallOptions o;
  o.alpha = 8.0;
  o.eps = {0.5};
  o.samples = 50000;
  o.estimator = SmallBallEstimator::Indicator;
  const auto r = smallball_mc(o);
  const double exact = std::erf(0.5 / std::sqrt(2.0));
  EXPECT_GT(exact, r[0].ci_lo - 2e-3);
  EXPECT_LT(exact, r[0].ci_hi + 2e-3);
}
