#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "omlat/errors.hpp"
#include "omlat/tube.hpp"
#include "support/oracles.hpp"

using namespace omlat;

namespace {

Path bump_path(double a, std::size_t steps) {
  StateMatrix s(static_cast<Eigen::Index>(steps + 1), 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double x = std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(steps));
    s(static_cast<Eigen::Index>(k), 0) = a * x * x;
  }
  return Path(0.0, 1.0 / static_cast<double>(steps), std::move(s));
}

Path sampled(std::size_t steps, double (*fn)(double)) {
  StateMatrix s(static_cast<Eigen::Index>(steps + 1), 2);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(steps);
    s(static_cast<Eigen::Index>(k), 0) = fn(t);
    s(static_cast<Eigen::Index>(k), 1) = 2.0 * fn(t);
  }
  return Path(0.0, 1.0 / static_cast<double>(steps), std::move(s));
}

}  // namespace

TEST(PathNorm, IdenticalAndConstantDifference) {
  std::mt19937_64 rng(1);
  const Path a = omlat::testing::random_path(rng, 3, 40, 2.0);
  Weights rho(3);
  rho << 1.0, 2.0, 0.5;
  EXPECT_EQ(l2rho_path_norm(a, a, rho), 0.0);
  Path b = a;
  Vector c(3);
  c << 0.3, -0.1, 2.0;
  for (Eigen::Index k = 0; k < b.states.rows(); ++k) b.states.row(k) += c.transpose();
  EXPECT_NEAR(l2rho_path_norm(a, b, rho), weighted_norm(c, rho) * std::sqrt(2.0), 1e-13);
}

TEST(PathNorm, TrapezoidIsSecondOrder) {
  auto fn = [](double t) { return std::exp(t) * std::sin(3.0 * t); };
  // int_0^1 5 (e^t sin 3t)^2 dt by a fine Simpson oracle.
  const std::size_t M = 20000;
  double exact = 0.0;
  for (std::size_t k = 0; k <= M; ++k) {
    const double t = static_cast<double>(k) / M;
    const double w = (k == 0 || k == M) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    exact += w * 5.0 * std::pow(fn(t), 2);
  }
  exact = std::sqrt(exact / (3.0 * M));
  const Weights rho = Weights::Ones(2);
  const Path zero16(0.0, 1.0 / 16, StateMatrix::Zero(17, 2)), zero32(0.0, 1.0 / 32, StateMatrix::Zero(33, 2));
  const double e16 = std::abs(l2rho_path_norm(sampled(16, fn), zero16, rho) - exact);
  const double e32 = std::abs(l2rho_path_norm(sampled(32, fn), zero32, rho) - exact);
  EXPECT_GT(e16 / e32, 3.5);
  EXPECT_LT(e16 / e32, 4.5);
}

TEST(PathNorm, GridMismatchThrows) {
  const Path a(0.0, 0.1, StateMatrix::Zero(11, 1));
  const Path b(0.0, 0.05, StateMatrix::Zero(21, 1));
  EXPECT_THROW(l2rho_path_norm(a, b, Weights::Ones(1)), ConfigError);
}

TEST(Tube, ZeroActionRatioIsOne) {
  TubeExperiment ex;
  ex.cfg = omlat::testing::scalar_linear(1.0, 1.0, 1.0);
  ex.reference = Path(0.0, 1.0 / 128, StateMatrix::Zero(129, 1));
  ex.eps = {0.3, 0.2};
  ex.samples = 20000;
  const TubeResult r = tube_ratio(ex);
  EXPECT_EQ(r.action.total, 0.0);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.predicted, 1.0);
    EXPECT_LE(row.ci_lo, 1.0);
    EXPECT_GE(row.ci_hi, 1.0);
    EXPECT_EQ(row.num_hits, row.den_hits);
  }
  EXPECT_GE(r.rows[0].num_hits, r.rows[1].num_hits);
}

TEST(Tube, ExactKernelDenominatorIsClose) {
  TubeExperiment ex;
  ex.cfg = omlat::testing::scalar_linear(1.0, 1.0, 1.0);
  ex.reference = Path(0.0, 1.0 / 128, StateMatrix::Zero(129, 1));
  ex.eps = {0.3};
  ex.samples = 20000;
  ex.denominator = ReferenceProcess::ExactConvolution;
  const TubeResult r = tube_ratio(ex);
  EXPECT_NEAR(r.rows[0].ratio, 1.0, 0.1);
  ex.denominator = ReferenceProcess::PlainWQ;
  EXPECT_LT(tube_ratio(ex).rows[0].den_hits, r.rows[0].num_hits);
}

TEST(Tube, TooFewHitsIsAPowerError) {
  TubeExperiment ex;
  ex.cfg = omlat::testing::scalar_linear(1.0, 1.0, 1.0);
  ex.reference = bump_path(0.6, 64);
  ex.eps = {0.05};
  ex.samples = 200;
  EXPECT_THROW(tube_ratio(ex), StatisticalPowerError);
}

TEST(Tube, ReferenceMustMatchConfig) {
  TubeExperiment ex;
  ex.cfg = omlat::testing::scalar_linear(1.0, 1.0, 1.0);
  ex.reference = Path(0.0, 0.1, StateMatrix::Zero(11, 3));
  ex.eps = {0.3};
  EXPECT_THROW(tube_ratio(ex), ConfigError);
  ex.reference = Path(0.0, 0.2, StateMatrix::Zero(11, 1));  // ends at 2 > T
  EXPECT_THROW(tube_ratio(ex), ConfigError);
}

TEST(Tube, DoublingNoiseQuartersPredictedLogRatio) {
  TubeExperiment ex;
  ex.cfg = omlat::testing::scalar_linear(1.0, 1.0, 1.0);
  ex.reference = bump_path(0.6, 128);
  ex.eps = {0.6, 0.45};
  ex.samples = 20000;
  const TubeResult base = tube_ratio(ex);
  ex.cfg.q = ex.cfg.q.scaled(2.0);
  const TubeResult doubled = tube_ratio(ex);
  EXPECT_NEAR(std::log(doubled.rows[0].predicted), std::log(base.rows[0].predicted) / 4.0, 1e-12);
  EXPECT_GT(std::log(doubled.rows[1].ratio), std::log(base.rows[1].ratio));
}

TEST(Tube, Deterministic) {
  TubeExperiment ex;
  ex.cfg = omlat::testing::scalar_linear(1.0, 1.0, 1.0);
  ex.reference = bump_path(0.3, 64);
  ex.eps = {0.4, 0.3};
  ex.samples = 5000;
  const TubeResult a = tube_ratio(ex), b = tube_ratio(ex);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_EQ(a.rows[j].num_hits, b.rows[j].num_hits);
    EXPECT_EQ(a.rows[j].joint_hits, b.rows[j].joint_hits);
  }
}
