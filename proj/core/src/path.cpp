#include "omlat/path.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "omlat/errors.hpp"

namespace omlat {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_path_csv(std::ostream& out, const Path& path) {
  const int d = path.dim();
  const int n = (d - 1) / 2;
  out << "t";
  for (int c = 0; c < d; ++c) out << ",u_" << (c - n);
  out << "\n";
  for (std::size_t k = 0; k <= path.steps(); ++k) {
    out << format_real(path.time(k));
    for (int c = 0; c < d; ++c) out << ',' << format_real(path.states(static_cast<Eigen::Index>(k), c));
    out << '\n';
  }
}

void write_path_csv(const std::string& file, const Path& path) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + file + "'");
  write_path_csv(out, path);
}

Path read_path_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,", 0) != 0) {
    throw ConfigError("path CSV: missing 't,u_...' header");
  }
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw ConfigError("path CSV: bad number '" + cell + "'");
      }
    }
    if (row.size() < 2) throw ConfigError("path CSV: row with no state columns");
    if (!rows.empty() && row.size() != rows.front().size() + 1) {
      throw ConfigError("path CSV: ragged rows");
    }
    times.push_back(row.front());
    rows.emplace_back(row.begin() + 1, row.end());
  }
  if (rows.size() < 2) throw ConfigError("path CSV: need at least two grid points");
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double expected = times.front() + static_cast<double>(k) * dt;
    if (std::abs(times[k] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw ConfigError("path CSV: time grid is not uniform");
    }
  }
  StateMatrix states(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t c = 0; c < rows[k].size(); ++c) {
      states(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = rows[k][c];
    }
  }
  return Path(times.front(), dt, std::move(states));
}

Path read_path_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open path CSV '" + file + "'");
  return read_path_csv(in);
}

void write_site_slice_csv(std::ostream& out, const Path& path, int site) {
  const int n = (path.dim() - 1) / 2;
  if (site < -n || site > n) {
    throw ConfigError("slice site " + std::to_string(site) + " outside -" + std::to_string(n) +
                      ".." + std::to_string(n));
  }
  out << "t,u_" << site << "\n";
  for (std::size_t k = 0; k <= path.steps(); ++k) {
    out << format_real(path.time(k)) << ',' << format_real(path.states(static_cast<Eigen::Index>(k), site + n))
        << '\n';
  }
}

}  // namespace omlat
