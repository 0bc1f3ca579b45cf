#include "omlat/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "omlat/errors.hpp"
#include "omlat/path.hpp"

namespace omlat {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text, const std::string& field) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("field '" + field + "': cannot parse '" + std::string(text) + "' as a number");
  }
  return value;
}

long parse_integer(std::string_view text, const std::string& field) {
  text = trim(text);
  long value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("field '" + field + "': cannot parse '" + std::string(text) + "' as an integer");
  }
  return value;
}

std::vector<double> parse_list(std::string_view text, const std::string& field) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_real(text.substr(start, comma - start), field));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Vector sized_vector(std::string_view text, const std::string& field, int d, std::string_view keyword,
                    double keyword_value) {
  if (trim(text) == keyword) return Vector::Constant(d, keyword_value);
  const auto values = parse_list(text, field);
  if (static_cast<int>(values.size()) != d) {
    throw ConfigError("field '" + field + "': expected " + std::to_string(d) + " values or '" +
                      std::string(keyword) + "', got " + std::to_string(values.size()));
  }
  return Eigen::Map<const Vector>(values.data(), d);
}

std::filesystem::path resolve(std::string_view file, const std::filesystem::path& base_dir) {
  std::filesystem::path p{std::string(trim(file))};
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return p;
}

NoiseCoefficient load_q_table(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("q table: cannot open '" + file.string() + "'");
  NoiseCoefficient::Table table;
  table.source = file.string();
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    // A row that does not start with a number is a header.
    const char c = text.front();
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.')) continue;
    rows.push_back(parse_list(text, "q table"));
  }
  if (rows.empty()) throw ConfigError("q table '" + file.string() + "' has no data rows");
  const std::size_t width = rows.front().size();
  if (width < 2) throw ConfigError("q table rows need a time and at least one site column");
  table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 1));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) throw ConfigError("q table: ragged row " + std::to_string(r + 1));
    table.times.push_back(rows[r][0]);
    for (std::size_t c = 1; c < width; ++c) {
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) = rows[r][c];
    }
  }
  std::string digest_bytes(reinterpret_cast<const char*>(table.values.data()),
                           static_cast<std::size_t>(table.values.size()) * sizeof(double));
  char buf[24];
  std::snprintf(buf, sizeof buf, "#%016llx",
                static_cast<unsigned long long>(fnv1a(digest_bytes)));
  table.source += buf;
  return NoiseCoefficient(std::move(table));
}

const char* const kKnownKeys[] = {"n", "nu", "lambda", "f_coeffs", "p", "C_f",
                                  "g", "q_spec", "rho", "T"};

}  // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

NoiseCoefficient parse_q_spec(std::string_view spec, int n, const std::filesystem::path& base_dir) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("field 'q_spec': expected constant:<v>, example5:<c0>,<a>, decay:<c0>,<rate> or table:<path>");
  }
  const auto kind = spec.substr(0, colon);
  const auto args = spec.substr(colon + 1);
  if (kind == "constant") return NoiseCoefficient::constant(parse_real(args, "q_spec"));
  if (kind == "example5") {
    const auto values = parse_list(args, "q_spec");
    if (values.size() != 2) throw ConfigError("field 'q_spec': example5 takes <c0>,<a>");
    return NoiseCoefficient::site_profile(values[0], values[1]);
  }
  if (kind == "decay") {
    const auto values = parse_list(args, "q_spec");
    if (values.size() != 2) throw ConfigError("field 'q_spec': decay takes <c0>,<rate>");
    return NoiseCoefficient::site_decay(values[0], values[1]);
  }
  if (kind == "table") {
    auto q = load_q_table(resolve(args, base_dir));
    if (q.table_sites() != 2 * n + 1) {
      throw ConfigError("field 'q_spec': table has " + std::to_string(q.table_sites()) +
                        " site columns, expected " + std::to_string(2 * n + 1));
    }
    return q;
  }
  throw ConfigError("field 'q_spec': unknown family '" + std::string(kind) + "'");
}

LatticeConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  std::map<std::string, std::string> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = std::string_view(line);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(body.substr(0, eq)));
    std::string value(trim(body.substr(eq + 1)));
    bool known = false;
    for (const char* k : kKnownKeys) known = known || key == k;
    if (!known) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (!fields.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  auto require = [&](const char* key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError(std::string("missing required field '") + key + "'");
    return it->second;
  };

  LatticeConfig cfg;
  const long n = parse_integer(require("n"), "n");
  if (n < 0 || n > 100000) throw ConfigError("field 'n': must be in [0, 100000]");
  cfg.n = static_cast<int>(n);
  cfg.nu = parse_real(require("nu"), "nu");
  cfg.lambda = parse_real(require("lambda"), "lambda");
  cfg.T = parse_real(require("T"), "T");

  const auto coeffs = parse_list(require("f_coeffs"), "f_coeffs");
  const auto p_it = fields.find("p");
  const auto cf_it = fields.find("C_f");
  auto f = PolynomialNonlinearity::with_default_growth(coeffs);
  const int p = p_it != fields.end() ? static_cast<int>(parse_integer(p_it->second, "p"))
                                     : f.growth_exponent();
  const double c_f = cf_it != fields.end() ? parse_real(cf_it->second, "C_f") : f.growth_constant();
  cfg.f = PolynomialNonlinearity(coeffs, p, c_f);

  const auto g_it = fields.find("g");
  cfg.g = sized_vector(g_it != fields.end() ? g_it->second : "zero", "g", cfg.dim(), "zero", 0.0);
  const auto rho_it = fields.find("rho");
  cfg.rho = sized_vector(rho_it != fields.end() ? rho_it->second : "uniform", "rho", cfg.dim(),
                         "uniform", 1.0);
  cfg.q = parse_q_spec(require("q_spec"), cfg.n, base_dir);
  cfg.validate();
  return cfg;
}

LatticeConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config '" + file.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), file.parent_path());
}

std::string canonical_text(const LatticeConfig& cfg) {
  auto list = [](const auto& values) {
    std::string out;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(values.size()); ++i) {
      if (i) out += ",";
      out += format_real(values[i]);
    }
    return out;
  };
  const auto& coeffs = cfg.f.coefficients();
  std::ostringstream out;
  out << "n = " << cfg.n << "\n";
  out << "nu = " << format_real(cfg.nu) << "\n";
  out << "lambda = " << format_real(cfg.lambda) << "\n";
  out << "f_coeffs = " << (coeffs.empty() ? std::string("0") : list(coeffs)) << "\n";
  out << "p = " << cfg.f.growth_exponent() << "\n";
  out << "C_f = " << format_real(cfg.f.growth_constant()) << "\n";
  out << "g = " << (cfg.g.isZero(0.0) ? std::string("zero") : list(cfg.g)) << "\n";
  out << "q_spec = " << cfg.q.describe() << "\n";
  out << "rho = " << ((cfg.rho.array() == 1.0).all() ? std::string("uniform") : list(cfg.rho)) << "\n";
  out << "T = " << format_real(cfg.T) << "\n";
  return out.str();
}

std::uint64_t config_hash(const LatticeConfig& cfg) { return fnv1a(canonical_text(cfg)); }

LatticeState parse_state_spec(std::string_view spec, int n, const std::filesystem::path& base_dir) {
  spec = trim(spec);
  const int d = 2 * n + 1;
  if (spec == "zero") return LatticeState::Zero(d);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("state spec '" + std::string(spec) + "': expected zero, const:, gauss:, list: or csv:");
  }
  const auto kind = spec.substr(0, colon);
  const auto args = spec.substr(colon + 1);
  if (kind == "const") return LatticeState::Constant(d, parse_real(args, "state"));
  if (kind == "gauss") {
    const auto v = parse_list(args, "state");
    if (v.size() != 2 || !(v[1] > 0.0)) throw ConfigError("state spec gauss:<amp>,<sigma> with sigma > 0");
    LatticeState u(d);
    for (int i = -n; i <= n; ++i) u[i + n] = v[0] * std::exp(-double(i) * i / (2.0 * v[1] * v[1]));
    return u;
  }
  if (kind == "list") {
    const auto v = parse_list(args, "state");
    if (static_cast<int>(v.size()) != d) {
      throw ConfigError("state spec list: expected " + std::to_string(d) + " values");
    }
    return Eigen::Map<const Vector>(v.data(), d);
  }
  if (kind == "csv") {
    const Path p = read_path_csv(resolve(args, base_dir).string());
    if (p.dim() != d) throw ConfigError("state spec csv: path has the wrong number of sites");
    return p.state(p.steps());
  }
  throw ConfigError("state spec: unknown kind '" + std::string(kind) + "'");
}

}  // namespace omlat
