#include "omlat/smallball.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "omlat/errors.hpp"
#include "omlat/parallel.hpp"
#include "omlat/rng.hpp"

namespace omlat {

SmallBallBounds smallball_bounds(double alpha, double eps) {
  if (!(alpha > 0.5)) throw DomainError("smallball_bounds: alpha must exceed 1/2 (rho = 1/(2 alpha - 1))");
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("smallball_bounds: eps must lie in (0, 1]");
  SmallBallBounds b;
  b.alpha = alpha;
  b.rho = 1.0 / (2.0 * alpha - 1.0);
  b.rate_up = alpha - 0.5;
  b.rate_low = alpha * std::pow(1.0 + b.rho, b.rho);
  b.prefactor_exponent_up = b.rho * (1.0 - alpha);
  b.prefactor_exponent_low = b.rho * (3.0 - alpha);
  const double scale = std::pow(eps, -2.0 * b.rho);
  b.upper = std::pow(eps, b.prefactor_exponent_up) * std::exp(-b.rate_up * scale);
  b.lower = std::pow(eps, b.prefactor_exponent_low) * std::exp(-b.rate_low * scale);
  return b;
}

Interval wilson_interval(std::size_t hits, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  return {hits == 0 ? 0.0 : std::max(0.0, centre - half), hits == trials ? 1.0 : std::min(1.0, centre + half)};
}

std::size_t required_max_index(double alpha, double eps) {
  if (!(alpha > 0.5)) throw DomainError("required_max_index: alpha must exceed 1/2");
  if (!(eps > 0.0)) throw DomainError("required_max_index: eps must be > 0");
  // sum_{i > I} i^{-2 alpha} <= I^{1 - 2 alpha} / (2 alpha - 1)
  const double k = 2.0 * alpha - 1.0;
  const double bound = std::pow(k * 1e-3 * eps * eps, -1.0 / k);
  return static_cast<std::size_t>(std::floor(bound)) + 1;
}

namespace {

// Sequential normal stream for one sample: splitmix64 counter plus the polar
// Box-Muller method, two draws per accepted pair.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t sample) : state_(derive_seed(seed, sample)) {}

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double a, b, r;
    do {
      a = 2.0 * uniform() - 1.0;
      b = 2.0 * uniform() - 1.0;
      r = a * a + b * b;
    } while (r >= 1.0 || r == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(r) / r);
    spare_ = b * scale;
    has_spare_ = true;
    return a * scale;
  }

 private:
  double uniform() {
    state_ += 0x9e3779b97f4a7c15ull;
    return (static_cast<double>(mix64(state_) >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct BlockTotals {
  std::vector<std::size_t> hits;
  std::vector<double> sum;
  std::vector<double> sum_sq;
};

}  // namespace

std::vector<SmallBallEstimate> smallball_mc(const SmallBallOptions& options) {
  if (options.eps.empty()) throw ConfigError("smallball_mc: empty eps list");
  if (options.samples == 0) throw ConfigError("smallball_mc: samples must be >= 1");
  for (double e : options.eps) {
    if (!(e > 0.0)) throw ConfigError("smallball_mc: eps values must be > 0");
  }
  const double eps_min = *std::min_element(options.eps.begin(), options.eps.end());
  const double eps_max = *std::max_element(options.eps.begin(), options.eps.end());
  const std::size_t required = required_max_index(options.alpha, eps_min);
  std::size_t I = options.max_index == 0 ? required : options.max_index;
  if (I < required) {
    throw ConfigError("smallball_mc: I_max = " + std::to_string(I) + " leaves a truncation tail >= 1e-3 eps^2; need I_max >= " +
                      std::to_string(required));
  }
  std::vector<double> weight(I + 1, 0.0);
  for (std::size_t i = 1; i <= I; ++i) weight[i] = std::pow(static_cast<double>(i), -2.0 * options.alpha);

  const std::size_t m = options.eps.size();
  std::vector<double> eps2(m);
  for (std::size_t j = 0; j < m; ++j) eps2[j] = options.eps[j] * options.eps[j];
  const double cap = eps_max * eps_max;
  const bool conditional = options.estimator == SmallBallEstimator::Conditional;

  const std::size_t blocks = std::min<std::size_t>(64, options.samples);
  std::vector<BlockTotals> totals(blocks);
  parallel_blocks(options.samples, blocks, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    BlockTotals& t = totals[b];
    t.hits.assign(m, 0);
    t.sum.assign(m, 0.0);
    t.sum_sq.assign(m, 0.0);
    for (std::size_t s = lo; s < hi; ++s) {
      SampleStream stream(options.seed, s);
      const double x1 = stream.normal();
      const double head = weight[1] * x1 * x1;
      // Terms are >= 0, so once a partial sum passes the largest eps^2 the
      // sample is outside every ball.
      double rest = 0.0;
      const double limit = conditional ? cap : cap - head;
      if (limit < 0.0 && !conditional) continue;
      bool outside = false;
      for (std::size_t i = 2; i <= I; ++i) {
        const double x = stream.normal();
        rest += weight[i] * x * x;
        if (rest > limit) {
          outside = true;
          break;
        }
      }
      if (outside) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (head + rest <= eps2[j]) ++t.hits[j];
        if (conditional && rest < eps2[j]) {
          const double r = std::sqrt((eps2[j] - rest) / weight[1]);
          const double p = std::erf(r / std::sqrt(2.0));
          t.sum[j] += p;
          t.sum_sq[j] += p * p;
        }
      }
    }
  });

  std::vector<SmallBallEstimate> out(m);
  const double n = static_cast<double>(options.samples);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t hits = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (const BlockTotals& t : totals) {
      hits += t.hits[j];
      sum += t.sum[j];
      sum_sq += t.sum_sq[j];
    }
    SmallBallEstimate& e = out[j];
    e.eps = options.eps[j];
    e.hits = hits;
    if (conditional) {
      e.estimate = sum / n;
      const double var = std::max(0.0, sum_sq / n - e.estimate * e.estimate) / std::max(1.0, n - 1.0);
      const double half = 1.959963984540054 * std::sqrt(var);
      e.ci_lo = std::max(0.0, e.estimate - half);
      e.ci_hi = std::min(1.0, e.estimate + half);
    } else {
      e.estimate = static_cast<double>(hits) / n;
      const Interval ci = wilson_interval(hits, options.samples);
      e.ci_lo = ci.lo;
      e.ci_hi = ci.hi;
    }
    if (options.alpha > 0.5) {
      e.rate_up = options.alpha - 0.5;
      const double rho = 1.0 / (2.0 * options.alpha - 1.0);
      e.rate_low = options.alpha * std::pow(1.0 + rho, rho);
    }
  }
  return out;
}

}  // namespace omlat
