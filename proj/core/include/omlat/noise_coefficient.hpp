#pragma once

#include <string>
#include <variant>
#include <vector>

#include "omlat/types.hpp"

namespace omlat {

/// Diagonal, time-varying noise intensities q_i(t), sites i = -n..n.
class NoiseCoefficient {
 public:
  struct Constant {
    double value = 1.0;
  };
  /// c0 * (a - t + 1 / (|i| + 1)).
  struct SiteProfile {
    double c0 = 0.01;
    double a = 31.0;
  };
  /// c0 * exp(-rate * |i|), constant in time.
  struct SiteDecay {
    double c0 = 1.0;
    double rate = 0.5;
  };
  /// Piecewise-linear in t between rows; clamped outside the table.
  struct Table {
    std::vector<double> times;
    StateMatrix values;  // rows match `times`, one column per site
    std::string source;
  };

  NoiseCoefficient() = default;
  explicit NoiseCoefficient(Constant c) : rep_(c) {}
  explicit NoiseCoefficient(SiteProfile s) : rep_(s) {}
  explicit NoiseCoefficient(SiteDecay s) : rep_(s) {}
  explicit NoiseCoefficient(Table t);

  static NoiseCoefficient constant(double v) { return NoiseCoefficient(Constant{v}); }
  static NoiseCoefficient site_profile(double c0, double a) {
    return NoiseCoefficient(SiteProfile{c0, a});
  }
  static NoiseCoefficient site_decay(double c0, double rate) {
    return NoiseCoefficient(SiteDecay{c0, rate});
  }

  /// q_i(t) for the signed site index i.
  double value(int site, double t) const;

  /// (q_{-n}(t), ..., q_n(t)).
  Vector values(int n, double t) const;

  /// Returns a copy whose every value is multiplied by `factor`.
  NoiseCoefficient scaled(double factor) const;

  /// Canonical `q_spec` text; tables carry a digest of their values.
  std::string describe() const;

  /// Number of sites a table covers, or -1 for analytic families.
  int table_sites() const;

  const auto& representation() const noexcept { return rep_; }

 private:
  std::variant<Constant, SiteProfile, SiteDecay, Table> rep_ = Constant{};
};

}  // namespace omlat
