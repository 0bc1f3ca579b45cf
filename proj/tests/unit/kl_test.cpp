#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "omlat/errors.hpp"
#include "omlat/kl.hpp"
#include "support/oracles.hpp"

using namespace omlat;

TEST(KL, RootsAgreeWithPoleFreeOracle) {
  const KLSpectrum s = kl_spectrum(0.4, 50);
  for (std::size_t j = 0; j < 50; ++j) {
    EXPECT_NEAR(static_cast<double>(s.roots[j]), static_cast<double>(omlat::testing::kl_root_oracle(0.4, j + 1)), 1e-12);
  }
}

TEST(KL, FirstRootLiesInItsBracket) {
  const KLSpectrum s = kl_spectrum(0.4, 1);
  const double g = static_cast<double>(s.roots[0]);
  EXPECT_GT(g, std::numbers::pi / 2);
  EXPECT_LT(g, 3 * std::numbers::pi / 2);
  EXPECT_NEAR(g, 1.7905791616573945, 1e-12);
}

TEST(KL, SpectrumInvariants) {
  const KLSpectrum s = kl_spectrum(0.4, 50);
  ASSERT_EQ(s.size(), 50u);
  for (std::size_t j = 0; j < 50; ++j) {
    const long double i = static_cast<long double>(j + 1);
    const long double pi = std::numbers::pi_v<long double>;
    EXPECT_GT(s.roots[j], (2 * i - 1) * pi / 2);
    EXPECT_LT(s.roots[j], (2 * i + 1) * pi / 2);
    EXPECT_LE(s.root_residual(j), 1e-10L);
    const double g = static_cast<double>(s.roots[j]);
    EXPECT_NEAR(s.eigenvalues[j] * (0.16 + g * g), 1.0, 1e-15);
    EXPECT_LE(s.normalizations[j], 2.0);
    if (j > 0) {
      EXPECT_GT(s.roots[j], s.roots[j - 1]);
      EXPECT_LT(s.eigenvalues[j], s.eigenvalues[j - 1]);
    }
  }
}

TEST(KL, ExtremeDecayRatesStillBracket) {
  for (double lambda : {1e-6, 1e-3, 10.0, 1e4}) {
    const KLSpectrum s = kl_spectrum(lambda, 5);
    for (std::size_t j = 0; j < 5; ++j) {
      const double g = static_cast<double>(s.roots[j]);
      EXPECT_NEAR(lambda * std::sin(g) + g * std::cos(g), 0.0, 1e-9 * (1 + lambda)) << lambda;
    }
  }
}

TEST(KL, DomainErrors) {
  EXPECT_THROW(kl_spectrum(0.0, 3), DomainError);
  EXPECT_THROW(kl_spectrum(0.4, 0), DomainError);
}

TEST(KL, EigenfunctionsSolveTheKernelEquation) {
  const KLSpectrum s = kl_spectrum(0.4, 5);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_LE(kernel_eigen_check(s, j, 2001), 1e-6);
}

TEST(KL, KernelCheckConvergesAtLeastQuadratically) {
  const KLSpectrum s = kl_spectrum(0.4, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    const double coarse = kernel_eigen_check(s, j, 21);
    const double fine = kernel_eigen_check(s, j, 41);
    EXPECT_GE(coarse / fine, 4.0);
  }
}

TEST(KL, Orthonormality) {
  const KLSpectrum s = kl_spectrum(0.4, 10);
  EXPECT_LE(orthogonality_defect(s, 2001), 1e-8);
}

TEST(KL, MercerSumApproachesDiagonalFromBelow) {
  const KLSpectrum s = kl_spectrum(0.4, 400);
  for (double t : {0.25, 0.5, 0.9}) {
    const double k = ou_kernel(0.4, t, t);
    double previous = 0.0;
    for (std::size_t m : {1u, 5u, 25u, 100u, 400u}) {
      const double partial = mercer_partial_sum(s, t, m);
      EXPECT_LT(partial, k);
      EXPECT_GT(partial, previous);
      previous = partial;
    }
    EXPECT_NEAR(previous, k, 2e-3);
  }
}

TEST(KL, KernelProperties) {
  EXPECT_DOUBLE_EQ(ou_kernel(0.7, 0.2, 0.6), ou_kernel(0.7, 0.6, 0.2));
  EXPECT_EQ(ou_kernel(0.7, 0.0, 0.5), 0.0);
  // Variance of the OU convolution at t: (1 - e^{-2 lambda t}) / (2 lambda).
  EXPECT_NEAR(ou_kernel(0.5, 1.0, 1.0), (1 - std::exp(-1.0)) / 1.0, 1e-15);
}

TEST(KL, PowerLawHelper) {
  EXPECT_EQ(kOuPowerLawAlpha, 1.0);
  EXPECT_DOUBLE_EQ(ou_power_law_eigenvalue(4), 1.0 / 16.0);
  const KLSpectrum s = kl_spectrum(0.4, 200);
  // mu_i i^2 tends to 1/pi^2 (gamma_i ~ i pi).
  EXPECT_NEAR(s.eigenvalues[199] / ou_power_law_eigenvalue(200), 1.0 / (std::numbers::pi * std::numbers::pi), 1e-3);
}

TEST(Simpson, ExactOnCubicsForEvenAndOddCounts) {
  for (std::size_t intervals : {2u, 3u, 4u, 5u, 7u, 10u}) {
    const double h = 1.0 / static_cast<double>(intervals);
    std::vector<double> v;
    for (std::size_t k = 0; k <= intervals; ++k) {
      const double x = static_cast<double>(k) * h;
      v.push_back(x * x * x - 2 * x + 1);
    }
    EXPECT_NEAR(simpson(v, h), 0.25 - 1 + 1, 1e-14) << intervals;
  }
  EXPECT_NEAR(simpson({1.0, 3.0}, 2.0), 4.0, 1e-15);
  EXPECT_EQ(simpson({5.0}, 1.0), 0.0);
}
