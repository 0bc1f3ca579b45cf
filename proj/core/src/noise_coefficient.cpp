#include "omlat/noise_coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "omlat/errors.hpp"

namespace omlat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string real_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

NoiseCoefficient::NoiseCoefficient(Table t) {
  if (t.times.size() < 1 || static_cast<Eigen::Index>(t.times.size()) != t.values.rows()) {
    throw ConfigError("q table: time column and value rows disagree");
  }
  if (t.values.cols() < 1) throw ConfigError("q table: no site columns");
  for (std::size_t k = 1; k < t.times.size(); ++k) {
    if (!(t.times[k] > t.times[k - 1])) throw ConfigError("q table: times must increase");
  }
  rep_ = std::move(t);
}

double NoiseCoefficient::value(int site, double t) const {
  return std::visit(
      overloaded{
          [](const Constant& c) { return c.value; },
          [&](const SiteProfile& s) {
            return s.c0 * (s.a - t + 1.0 / (std::abs(site) + 1.0));
          },
          [&](const SiteDecay& s) { return s.c0 * std::exp(-s.rate * std::abs(site)); },
          [&](const Table& tab) {
            const auto cols = tab.values.cols();
            const auto col = static_cast<Eigen::Index>(site) + (cols - 1) / 2;
            if (col < 0 || col >= cols) return 0.0;
            const auto& ts = tab.times;
            if (t <= ts.front()) return tab.values(0, col);
            if (t >= ts.back()) return tab.values(static_cast<Eigen::Index>(ts.size() - 1), col);
            const auto hi = static_cast<Eigen::Index>(
                std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
            const auto lo = hi - 1;
            const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
            return (1.0 - w) * tab.values(lo, col) + w * tab.values(hi, col);
          },
      },
      rep_);
}

Vector NoiseCoefficient::values(int n, double t) const {
  Vector q(2 * n + 1);
  for (int i = -n; i <= n; ++i) q[i + n] = value(i, t);
  return q;
}

NoiseCoefficient NoiseCoefficient::scaled(double factor) const {
  return std::visit(
      overloaded{
          [&](const Constant& c) { return NoiseCoefficient(Constant{c.value * factor}); },
          [&](const SiteProfile& s) { return NoiseCoefficient(SiteProfile{s.c0 * factor, s.a}); },
          [&](const SiteDecay& s) { return NoiseCoefficient(SiteDecay{s.c0 * factor, s.rate}); },
          [&](const Table& tab) {
            Table copy = tab;
            copy.values *= factor;
            copy.source += "*" + real_text(factor);
            return NoiseCoefficient(std::move(copy));
          },
      },
      rep_);
}

std::string NoiseCoefficient::describe() const {
  return std::visit(
      overloaded{
          [](const Constant& c) { return "constant:" + real_text(c.value); },
          [](const SiteProfile& s) { return "example5:" + real_text(s.c0) + "," + real_text(s.a); },
          [](const SiteDecay& s) { return "decay:" + real_text(s.c0) + "," + real_text(s.rate); },
          [](const Table& tab) { return "table:" + tab.source; },
      },
      rep_);
}

int NoiseCoefficient::table_sites() const {
  if (const auto* tab = std::get_if<Table>(&rep_)) return static_cast<int>(tab->values.cols());
  return -1;
}

}  // namespace omlat
