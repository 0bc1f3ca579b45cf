#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "omlat/config.hpp"
#include "omlat/diagnostics.hpp"
#include "omlat/errors.hpp"
#include "omlat/example5.hpp"
#include "omlat/integrator.hpp"
#include "omlat/kl.hpp"
#include "omlat/mpp.hpp"
#include "omlat/noise.hpp"
#include "omlat/om_action.hpp"
#include "omlat/path.hpp"
#include "omlat/rng.hpp"
#include "omlat/smallball.hpp"
#include "omlat/tube.hpp"

#ifndef OMLAT_VERSION
#define OMLAT_VERSION "0.0.0"
#endif

namespace omlat::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string config;
  std::uint64_t seed = 1;
  std::string out;
  std::optional<double> dt;
  std::optional<std::size_t> steps;
  std::string slice;
};

struct SimulateOptions {
  std::string u0;
  std::size_t ensemble = 1;
};

struct MppOptions {
  std::string phi0;
  std::string phiT;
  std::size_t max_iterations = 200;
  std::optional<double> tolerance;
  std::string hessian = "gn";
  std::string initial;
};

struct OmOptions {
  std::string path;
};

struct KlOptions {
  double lambda = 0.4;
  std::size_t m = 20;
  std::size_t quad_points = 2001;
  std::size_t checked_modes = 5;
};

struct SmallBallCliOptions {
  double alpha = 1.0;
  std::vector<double> eps{0.5, 0.4, 0.35, 0.3};
  std::size_t samples = 100000;
  std::size_t max_index = 0;
  std::string estimator = "conditional";
};

struct TubeCliOptions {
  std::string path;
  std::string u0;
  std::vector<double> eps{0.3, 0.25, 0.2, 0.15};
  std::size_t samples = 100000;
  std::string denominator = "euler";
  std::size_t min_hits = 50;
};

struct EnsembleOptions {
  std::string u0;
  std::size_t ensemble = 200;
  std::size_t levels = 3;
};

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + file.string() + " for writing");
  os << text;
  if (!os) throw ConfigError("write to " + file.string() + " failed");
}

std::ofstream open_csv(const fs::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + file.string() + " for writing");
  return os;
}

class Run {
 public:
  Run(const Common& common, std::string command, std::ostream& out)
      : common_(common), command_(std::move(command)), out_(out) {
    if (common_.out.empty()) throw UsageError("--out is required");
    dir_ = common_.out;
    fs::create_directories(dir_);
  }

  const fs::path& dir() const { return dir_; }

  const LatticeConfig& config() {
    if (!cfg_) {
      if (common_.config.empty()) throw UsageError(command_ + ": --config is required");
      cfg_ = load_config(common_.config);
      for (const auto& w : cfg_->validate()) out_ << "warning: " << w << "\n";
    }
    return *cfg_;
  }

  /// Steps on [0, T] from --steps, --dt, or 600 by default.
  std::size_t steps(double T) const {
    if (common_.steps) {
      if (*common_.steps < 1) throw ConfigError("--steps must be >= 1");
      return *common_.steps;
    }
    if (!common_.dt) return 600;
    const double dt = *common_.dt;
    if (!(dt > 0.0)) throw ConfigError("--dt must be > 0");
    const double ratio = T / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio) {
      throw ConfigError("--dt must divide T = " + format_real(T));
    }
    return static_cast<std::size_t>(rounded);
  }

  LatticeState initial_state(const std::string& spec) {
    const LatticeConfig& cfg = config();
    if (spec.empty()) {
      return is_example5(cfg) ? example5_initial_state(cfg.n) : LatticeState(LatticeState::Zero(cfg.dim()));
    }
    return parse_state_spec(spec, cfg.n, fs::current_path());
  }

  /// manifest.json goes out before any computation output.
  void write_manifest(json extra = json::object()) {
    json m;
    m["subcommand"] = command_;
    m["config"] = common_.config;
    m["config_hash"] = cfg_ ? json(config_hash(*cfg_)) : json(nullptr);
    m["seed"] = common_.seed;
    m["out"] = common_.out;
    m["tool_version"] = OMLAT_VERSION;
    m["wall_clock"] = timestamp();
    m["options"] = std::move(extra);
    write_text(dir_ / "manifest.json", m.dump(2) + "\n");
  }

  std::vector<int> slice_sites() const {
    std::vector<int> sites;
    if (common_.slice.empty()) return sites;
    std::string_view text = common_.slice;
    if (text.substr(0, 2) != "i=") throw UsageError("--slice expects i=<site>[,<site>...]");
    text.remove_prefix(2);
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        sites.push_back(v);
      } catch (const std::exception&) {
        throw UsageError("--slice: '" + item + "' is not a site index");
      }
    }
    return sites;
  }

  void write_slices(const Path& path, const std::string& stem) {
    const int n = (path.dim() - 1) / 2;
    for (int site : slice_sites()) {
      if (site < -n || site > n) throw ConfigError("--slice: site " + std::to_string(site) + " outside [-n, n]");
      auto os = open_csv(dir_ / (stem + "_i" + std::to_string(site) + ".csv"));
      write_site_slice_csv(os, path, site);
    }
  }

  const Common& common() const { return common_; }

 private:
  Common common_;
  std::string command_;
  std::ostream& out_;
  fs::path dir_;
  std::optional<LatticeConfig> cfg_;
};

int cmd_simulate(const Common& common, const SimulateOptions& opt, std::ostream& out) {
  Run run(common, "simulate", out);
  const LatticeConfig& cfg = run.config();
  const std::size_t N = run.steps(cfg.T);
  const LatticeState u0 = run.initial_state(opt.u0);
  run.write_manifest({{"u0", opt.u0}, {"ensemble", opt.ensemble}, {"steps", N}});
  json summary;
  summary["config_hash"] = config_hash(cfg);
  summary["seed"] = common.seed;
  summary["steps"] = N;
  summary["dt"] = cfg.T / static_cast<double>(N);
  auto& rows = summary["trajectories"] = json::array();
  if (opt.ensemble == 0) return kExitOk;
  const auto paths = simulate_ensemble(cfg, u0, common.seed, opt.ensemble, N);
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const std::string name = "path_" + std::to_string(j) + ".csv";
    write_path_csv((run.dir() / name).string(), paths[j]);
    double sup = 0.0;
    for (std::size_t k = 0; k <= paths[j].steps(); ++k) sup = std::max(sup, weighted_norm(paths[j].state(k), cfg.rho));
    rows.push_back({{"index", j},
                    {"seed", paths[j].seed},
                    {"file", name},
                    {"final_norm", weighted_norm(paths[j].state(paths[j].steps()), cfg.rho)},
                    {"sup_norm", sup}});
  }
  run.write_slices(paths.front(), "slice");
  write_text(run.dir() / "summary.json", summary.dump(2) + "\n");
  out << "simulate: " << paths.size() << " trajectories, " << N << " steps -> " << run.dir().string() << "\n";
  return kExitOk;
}

int cmd_mpp(const Common& common, const MppOptions& opt, std::ostream& out) {
  Run run(common, "mpp", out);
  const LatticeConfig& cfg = run.config();
  BVPSpec spec;
  spec.cfg = cfg;
  spec.steps = run.steps(cfg.T);
  spec.phi0 = run.initial_state(opt.phi0);
  spec.phiT = opt.phiT.empty() ? LatticeState(LatticeState::Zero(cfg.dim()))
                               : parse_state_spec(opt.phiT, cfg.n, fs::current_path());
  spec.options.max_iterations = opt.max_iterations;
  spec.options.gradient_tolerance = opt.tolerance;
  if (opt.hessian == "gn") {
    spec.options.hessian = HessianModel::GaussNewton;
  } else if (opt.hessian == "full") {
    spec.options.hessian = HessianModel::FullNewton;
  } else {
    throw UsageError("--hessian must be gn or full");
  }
  if (!opt.initial.empty()) spec.initial = read_path_csv(opt.initial);
  run.write_manifest({{"phi0", opt.phi0},
                      {"phiT", opt.phiT},
                      {"steps", spec.steps},
                      {"max_iterations", opt.max_iterations},
                      {"tolerance", opt.tolerance ? json(*opt.tolerance) : json(nullptr)},
                      {"hessian", opt.hessian},
                      {"initial", opt.initial}});
  const MPPResult result = solve_mpp(spec);
  write_path_csv((run.dir() / "mpp_path.csv").string(), result.path);
  write_text(run.dir() / "om_report.json", to_json(result.action) + "\n");
  {
    auto os = open_csv(run.dir() / "convergence.csv");
    os << "iteration,action,gradient_norm\n";
    for (const auto& h : result.history) {
      os << h.iteration << ',' << format_real(h.action) << ',' << format_real(h.gradient_norm) << '\n';
    }
  }
  run.write_slices(result.path, "mpp_slice");
  json summary;
  summary["converged"] = result.converged;
  summary["iterations"] = result.iterations;
  summary["gradient_norm"] = result.gradient_norm;
  summary["tolerance"] = result.tolerance;
  summary["action"] = result.action.total;
  write_text(run.dir() / "mpp_summary.json", summary.dump(2) + "\n");
  out << "mpp: action " << format_real(result.action.total) << ", |grad| " << format_real(result.gradient_norm)
      << " after " << result.iterations << " iterations" << (result.converged ? "" : " (NOT converged)") << "\n";
  return result.converged ? kExitOk : kExitNumerical;
}

int cmd_om(const Common& common, const OmOptions& opt, std::ostream& out) {
  Run run(common, "om", out);
  const LatticeConfig& cfg = run.config();
  if (opt.path.empty()) throw UsageError("om: --path is required");
  run.write_manifest({{"path", opt.path}});
  const Path path = read_path_csv(opt.path);
  const OMReport report = om_action(path, cfg);
  write_text(run.dir() / "om_report.json", to_json(report) + "\n");
  out << "om: total " << format_real(report.total) << " (drift " << format_real(report.drift_term) << ", trace "
      << format_real(report.trace_term) << ")\n";
  return kExitOk;
}

int cmd_verify_kl(const Common& common, const KlOptions& opt, std::ostream& out) {
  Run run(common, "verify kl", out);
  run.write_manifest({{"lambda", opt.lambda}, {"m", opt.m}, {"quad_points", opt.quad_points}});
  const KLSpectrum spec = kl_spectrum(opt.lambda, opt.m);
  auto os = open_csv(run.dir() / "kl_spectrum.csv");
  os << "i,gamma,mu,A,residual\n";
  long double worst = 0.0L;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const long double r = spec.root_residual(j);
    worst = std::max(worst, r);
    os << j + 1 << ',' << format_real(static_cast<double>(spec.roots[j])) << ',' << format_real(spec.eigenvalues[j])
       << ',' << format_real(spec.normalizations[j]) << ',' << format_real(static_cast<double>(r)) << '\n';
  }
  json checks;
  auto& kernel = checks["kernel_residual"] = json::array();
  for (std::size_t j = 0; j < std::min(opt.checked_modes, spec.size()); ++j) {
    kernel.push_back({{"i", j + 1}, {"residual", kernel_eigen_check(spec, j, opt.quad_points)}});
  }
  checks["orthogonality_defect"] = orthogonality_defect(spec, opt.quad_points);
  checks["max_root_residual"] = static_cast<double>(worst);
  write_text(run.dir() / "kl_checks.json", checks.dump(2) + "\n");
  out << "kl: " << spec.size() << " modes, max root residual " << format_real(static_cast<double>(worst)) << "\n";
  return kExitOk;
}

int cmd_verify_smallball(const Common& common, const SmallBallCliOptions& opt, std::ostream& out) {
  Run run(common, "verify smallball", out);
  SmallBallOptions o;
  o.alpha = opt.alpha;
  o.eps = opt.eps;
  o.samples = opt.samples;
  o.max_index = opt.max_index;
  o.seed = common.seed;
  if (opt.estimator == "conditional") {
    o.estimator = SmallBallEstimator::Conditional;
  } else if (opt.estimator == "indicator") {
    o.estimator = SmallBallEstimator::Indicator;
  } else {
    throw UsageError("--estimator must be conditional or indicator");
  }
  run.write_manifest({{"alpha", opt.alpha},
                      {"eps", opt.eps},
                      {"samples", opt.samples},
                      {"max_index", opt.max_index},
                      {"estimator", opt.estimator}});
  const auto rows = smallball_mc(o);
  auto os = open_csv(run.dir() / "smallball.csv");
  os << "eps,estimate,ci_lo,ci_hi,rate_up,rate_low\n";
  for (const auto& r : rows) {
    os << format_real(r.eps) << ',' << format_real(r.estimate) << ',' << format_real(r.ci_lo) << ','
       << format_real(r.ci_hi) << ',' << format_real(r.rate_up) << ',' << format_real(r.rate_low) << '\n';
    out << "smallball: eps " << format_real(r.eps) << "  P ~ " << format_real(r.estimate) << "  log(P) eps^2 = "
        << format_real(std::log(r.estimate) * r.eps * r.eps) << "\n";
  }
  return kExitOk;
}

int cmd_verify_tube(const Common& common, const TubeCliOptions& opt, std::ostream& out) {
  Run run(common, "verify tube", out);
  TubeExperiment ex;
  ex.cfg = run.config();
  if (!opt.path.empty()) {
    ex.reference = read_path_csv(opt.path);
  } else {
    ex.reference = integrate_deterministic(run.initial_state(opt.u0), ex.cfg, run.steps(ex.cfg.T));
  }
  ex.eps = opt.eps;
  ex.samples = opt.samples;
  ex.seed = common.seed;
  ex.min_hits = opt.min_hits;
  if (opt.denominator == "euler") {
    ex.denominator = ReferenceProcess::EulerConvolution;
  } else if (opt.denominator == "exact") {
    ex.denominator = ReferenceProcess::ExactConvolution;
  } else if (opt.denominator == "plain") {
    ex.denominator = ReferenceProcess::PlainWQ;
  } else {
    throw UsageError("--denominator must be euler, exact or plain");
  }
  run.write_manifest({{"path", opt.path},
                      {"u0", opt.u0},
                      {"eps", opt.eps},
                      {"samples", opt.samples},
                      {"denominator", opt.denominator},
                      {"steps", ex.reference.steps()},
                      {"dt", ex.reference.dt}});
  const TubeResult result = tube_ratio(ex);
  auto os = open_csv(run.dir() / "tube.csv");
  os << "eps,num_hits,den_hits,ratio,ci_lo,ci_hi,predicted\n";
  json j;
  j["seed"] = common.seed;
  j["config_hash"] = config_hash(ex.cfg);
  j["steps"] = ex.reference.steps();
  j["dt"] = ex.reference.dt;
  j["samples"] = ex.samples;
  j["action"] = result.action.total;
  auto& rows = j["rows"] = json::array();
  for (const auto& r : result.rows) {
    os << format_real(r.eps) << ',' << r.num_hits << ',' << r.den_hits << ',' << format_real(r.ratio) << ','
       << format_real(r.ci_lo) << ',' << format_real(r.ci_hi) << ',' << format_real(r.predicted) << '\n';
    rows.push_back({{"eps", r.eps},
                    {"num_hits", r.num_hits},
                    {"den_hits", r.den_hits},
                    {"joint_hits", r.joint_hits},
                    {"ratio", std::isfinite(r.ratio) ? json(r.ratio) : json(nullptr)}});
  }
  write_text(run.dir() / "tube.json", j.dump(2) + "\n");
  out << "tube: action " << format_real(result.action.total) << ", predicted ratio "
      << format_real(std::exp(-0.5 * result.action.total)) << "\n";
  return kExitOk;
}

int cmd_verify_cocycle(const Common& common, const EnsembleOptions& opt, std::ostream& out) {
  Run run(common, "verify cocycle", out);
  const LatticeConfig& cfg = run.config();
  const std::size_t N = run.steps(cfg.T);
  const LatticeState u0 = run.initial_state(opt.u0);
  run.write_manifest({{"u0", opt.u0}, {"steps", N}});
  const NoisePath noise = sample_noise(common.seed, N, cfg.dim(), cfg.T / static_cast<double>(N));
  auto os = open_csv(run.dir() / "cocycle.csv");
  os << "s,deviation\n";
  double worst = 0.0;
  for (const std::size_t quarter : {std::size_t{1}, std::size_t{2}}) {
    if ((N * quarter) % 4 != 0) throw ConfigError("verify cocycle: step count must be divisible by 4");
    const std::size_t m = N * quarter / 4;
    const double s = static_cast<double>(m) * noise.dt;
    const double dev = cocycle_check(u0, noise, s, cfg);
    worst = std::max(worst, dev);
    os << format_real(s) << ',' << format_real(dev) << '\n';
  }
  out << "cocycle: max deviation " << format_real(worst) << "\n";
  return worst <= 1e-12 ? kExitOk : kExitNumerical;
}

int cmd_verify_truncation(const Common& common, const EnsembleOptions& opt, std::ostream& out) {
  Run run(common, "verify truncation", out);
  const LatticeConfig& cfg = run.config();
  const std::size_t N = run.steps(cfg.T);
  const LatticeState u0 = run.initial_state(opt.u0);
  run.write_manifest({{"u0", opt.u0}, {"ensemble", opt.ensemble}, {"levels", opt.levels}, {"steps", N}});
  auto ensemble = simulate_ensemble(cfg, u0, common.seed, opt.ensemble, N);
  {
    auto os = open_csv(run.dir() / "truncation_tail.csv");
    os << "K,tail\n";
    for (int K = 0; K <= cfg.n; ++K) os << K << ',' << format_real(truncation_tail(ensemble, K, cfg.rho)) << '\n';
  }
  auto os = open_csv(run.dir() / "truncation_gap.csv");
  os << "n,n_fine,gap\n";
  LatticeConfig coarse = cfg;
  for (std::size_t level = 0; level < opt.levels; ++level) {
    const LatticeConfig fine = widen_config(coarse, 2 * coarse.n);
    fine.validate();
    auto wide = simulate_ensemble(fine, widen_state(u0, fine.n), common.seed, opt.ensemble, N);
    os << coarse.n << ',' << fine.n << ',' << format_real(truncation_mean_square_gap(ensemble, wide, coarse.rho))
       << '\n';
    coarse = fine;
    ensemble = std::move(wide);
  }
  out << "truncation: tails and gaps -> " << run.dir().string() << "\n";
  return kExitOk;
}

int cmd_verify_bound(const Common& common, const EnsembleOptions& opt, std::ostream& out) {
  Run run(common, "verify bound", out);
  const LatticeConfig& cfg = run.config();
  const std::size_t N = run.steps(cfg.T);
  const LatticeState u0 = run.initial_state(opt.u0);
  run.write_manifest({{"u0", opt.u0}, {"ensemble", opt.ensemble}, {"levels", opt.levels}, {"steps", N}});
  const BoundRefinement r = apriori_bound_refinement(cfg, u0, common.seed, opt.ensemble, N, opt.levels);
  auto os = open_csv(run.dir() / "bound.csv");
  os << "dt,max_ratio\n";
  for (std::size_t l = 0; l < r.dts.size(); ++l) os << format_real(r.dts[l]) << ',' << format_real(r.max_ratios[l]) << '\n';
  out << "bound: empirical constant " << (r.stable ? "stable" : "NOT stable") << " under refinement\n";
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c, bool needs_grid) {
  sub->add_option("--config", c.config, "Problem config file");
  sub->add_option("--seed", c.seed, "Base random seed")->capture_default_str();
  sub->add_option("--out", c.out, "Output directory")->required();
  if (needs_grid) {
    auto* dt = sub->add_option("--dt", c.dt, "Time step (must divide T)");
    sub->add_option("--steps", c.steps, "Number of time steps (default 600)")->excludes(dt);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic lattice simulation, Onsager-Machlup actions and most probable paths", "omlat"};
  app.set_version_flag("--version", std::string(OMLAT_VERSION));
  app.require_subcommand(1);

  Common common;
  SimulateOptions sim;
  MppOptions mpp;
  OmOptions om;
  KlOptions kl;
  SmallBallCliOptions sb;
  TubeCliOptions tube;
  EnsembleOptions cocycle, truncation, bound;

  auto* simulate = app.add_subcommand("simulate", "Euler-Maruyama trajectories");
  add_common(simulate, common, true);
  simulate->add_option("--u0", sim.u0, "Initial state: zero | const:c | gauss:amp,sigma | list:... | csv:file");
  simulate->add_option("--ensemble", sim.ensemble, "Number of trajectories")->capture_default_str();
  simulate->add_option("--slice", common.slice, "Site slices of trajectory 0, e.g. i=0,10");

  auto* mppc = app.add_subcommand("mpp", "Most probable path between fixed end states");
  add_common(mppc, common, true);
  mppc->add_option("--phi0", mpp.phi0, "Initial state (default: example bump or zero)");
  mppc->add_option("--phiT", mpp.phiT, "Terminal state (default zero)");
  mppc->add_option("--max-iter", mpp.max_iterations, "Iteration cap")->capture_default_str();
  mppc->add_option("--tol", mpp.tolerance, "Max-norm gradient tolerance (default 1e-8 d N)");
  mppc->add_option("--hessian", mpp.hessian, "gn | full")->capture_default_str();
  mppc->add_option("--init", mpp.initial, "Starting path CSV");
  mppc->add_option("--slice", common.slice, "Site slices, e.g. i=0,10");

  auto* omc = app.add_subcommand("om", "Onsager-Machlup action of a path CSV");
  add_common(omc, common, false);
  omc->add_option("--path", om.path, "Path CSV")->required();

  auto* verify = app.add_subcommand("verify", "Numerical experiments");
  verify->require_subcommand(1);

  auto* vkl = verify->add_subcommand("kl", "Karhunen-Loeve spectrum of the OU kernel");
  add_common(vkl, common, false);
  vkl->add_option("--lambda", kl.lambda, "Kernel decay rate")->capture_default_str();
  vkl->add_option("--m", kl.m, "Number of modes")->capture_default_str();
  vkl->add_option("--quad", kl.quad_points, "Quadrature points for the kernel check")->capture_default_str();
  vkl->add_option("--check-modes", kl.checked_modes, "Modes given a kernel check")->capture_default_str();

  auto* vsb = verify->add_subcommand("smallball", "Small-ball probabilities for weights i^-alpha");
  add_common(vsb, common, false);
  vsb->add_option("--alpha", sb.alpha, "Weight exponent (> 1/2)")->capture_default_str();
  vsb->add_option("--eps", sb.eps, "Radii")->delimiter(',');
  vsb->add_option("--samples", sb.samples, "Monte Carlo samples")->capture_default_str();
  vsb->add_option("--imax", sb.max_index, "Truncation index (0 = automatic)")->capture_default_str();
  vsb->add_option("--estimator", sb.estimator, "conditional | indicator")->capture_default_str();

  auto* vtube = verify->add_subcommand("tube", "Tube probability ratio against exp(-action/2)");
  add_common(vtube, common, true);
  vtube->add_option("--path", tube.path, "Reference path CSV (default: noise-free flow from --u0)");
  vtube->add_option("--u0", tube.u0, "Initial state of the noise-free reference flow");
  vtube->add_option("--eps", tube.eps, "Radii")->delimiter(',');
  vtube->add_option("--samples", tube.samples, "Monte Carlo samples")->capture_default_str();
  vtube->add_option("--denominator", tube.denominator, "euler | exact | plain")->capture_default_str();
  vtube->add_option("--min-hits", tube.min_hits, "Hits required at the largest eps")->capture_default_str();

  auto* vco = verify->add_subcommand("cocycle", "Restart-on-shifted-noise deviation at s = T/4, T/2");
  add_common(vco, common, true);
  vco->add_option("--u0", cocycle.u0, "Initial state");

  auto* vtr = verify->add_subcommand("truncation", "Tail statistic and n -> 2n gaps over an ensemble");
  add_common(vtr, common, true);
  vtr->add_option("--u0", truncation.u0, "Initial state");
  vtr->add_option("--ensemble", truncation.ensemble, "Trajectories")->capture_default_str();
  vtr->add_option("--levels", truncation.levels, "Number of doublings")->capture_default_str();

  auto* vbd = verify->add_subcommand("bound", "Empirical a-priori bound constant under refinement");
  add_common(vbd, common, true);
  vbd->add_option("--u0", bound.u0, "Initial state");
  bound.ensemble = 20;
  vbd->add_option("--ensemble", bound.ensemble, "Trajectories")->capture_default_str();
  vbd->add_option("--levels", bound.levels, "Grid levels")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(common, sim, out);
    if (*mppc) return cmd_mpp(common, mpp, out);
    if (*omc) return cmd_om(common, om, out);
    if (*vkl) return cmd_verify_kl(common, kl, out);
    if (*vsb) return cmd_verify_smallball(common, sb, out);
    if (*vtube) return cmd_verify_tube(common, tube, out);
    if (*vco) return cmd_verify_cocycle(common, cocycle, out);
    if (*vtr) return cmd_verify_truncation(common, truncation, out);
    if (*vbd) return cmd_verify_bound(common, bound, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StatisticalPowerError& e) {
    err << "statistical power: " << e.what() << "\n";
    return kExitStatisticalPower;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitUsage;
}

}  // namespace omlat::cli
