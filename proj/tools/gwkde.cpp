// Command-line front end: fit (density estimate for a data file),
// simulate (Monte Carlo error study), validate (expansion cross-checks).
// Exit codes: 0 ok, 2 bad input/config, 3 degenerate sample, 4 singular
// bandwidth factor or invalid kernel shape, 5 oracle failure.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwkde/bandwidth.hpp"
#include "gwkde/distributions.hpp"
#include "gwkde/errors.hpp"
#include "gwkde/estimator.hpp"
#include "gwkde/experiments.hpp"
#include "gwkde/kernels.hpp"
#include "gwkde/reference_density.hpp"
#include "gwkde/sample.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitSingular = 4;
constexpr int kExitOracle = 5;

struct FitOptions {
  std::string input;
  double a = 0.0;
  bool a_given = false;
  double c1 = -1.0;
  std::string grid;
  std::string out;
  bool seed_echo = false;
};

struct SimOptions {
  std::string dist = "weibull";
  double shape = 1.0;
  double scale = 1.0;
  double alpha = 2.0;
  double xm = 1.0;
  double mu = 0.0;
  double sigma = 1.0;
  double burr_k = 1.0;
  std::vector<std::size_t> n;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  double grid_min = 0.3;
  double grid_max = 0.0;  // <= 0: truncate at the true 1 - 1e-4 quantile
  std::size_t grid_points = 512;
  std::string spacing = "linear";
  std::string a = "median";
  double c1 = -1.0;
  std::size_t threads = 0;
  std::string out;
};

struct ValOptions {
  double a = 1.0;
  double c1 = -1.0;
  double c2 = -1.0;
  double threshold = 0.6;
  double ref_shape = 6.0;
  double ref_scale = 1.0 / 3.0;
  std::string out;
};

gwkde::GridSpacing parse_spacing(const std::string& s) {
  if (s == "linear") return gwkde::GridSpacing::linear;
  if (s == "log") return gwkde::GridSpacing::log;
  throw gwkde::config_error("unknown grid spacing '" + s +
                            "' (expected linear or log)");
}

// min:max:points[:linear|log]
gwkde::GridSpec parse_grid_arg(const std::string& arg) {
  std::vector<std::string> parts;
  std::string piece;
  std::istringstream in(arg);
  while (std::getline(in, piece, ':')) parts.push_back(piece);
  if (parts.size() != 3 && parts.size() != 4) {
    throw gwkde::config_error(
        "grid must be min:max:points[:linear|log], got '" + arg + "'");
  }
  gwkde::GridSpec spec;
  try {
    spec.min = std::stod(parts[0]);
    spec.max = std::stod(parts[1]);
    long points = std::stol(parts[2]);
    if (points < 2) throw gwkde::config_error("grid needs at least 2 points");
    spec.points = static_cast<std::size_t>(points);
  } catch (const gwkde::error&) {
    throw;
  } catch (const std::exception&) {
    throw gwkde::config_error("cannot parse grid argument '" + arg + "'");
  }
  spec.spacing =
      parts.size() == 4 ? parse_spacing(parts[3]) : gwkde::GridSpacing::linear;
  return spec;
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw gwkde::config_error("cannot open output file " + out_path);
  out << j.dump(2) << "\n";
}

int run_fit(const FitOptions& o, const std::vector<std::string>& argv_echo) {
  gwkde::Sample sample = gwkde::load_sample(o.input);
  double a = o.a_given ? o.a : sample.median();
  gwkde::BandwidthSolution sol = gwkde::select_bandwidths(sample, a, o.c1);
  gwkde::EstimatorConfig cfg =
      gwkde::make_config(sol.a, sol.c1, sol.c2, sol.b_opt);
  for (const std::string& w : sol.diagnostics.warnings) {
    std::cerr << "warning: " << w << "\n";
  }

  gwkde::GridSpec gspec;
  bool grid_empty = false;
  if (!o.grid.empty()) {
    gspec = parse_grid_arg(o.grid);
  } else {
    // Smallest x with valid kernel shapes on both branches, then the
    // bulk of the data range.
    double lo = 1.0000001 * std::max(std::abs(cfg.c1) * cfg.h,
                                     std::abs(cfg.c2) * cfg.b);
    double hi = sample.quantile(0.999);
    gspec.points = 256;
    gspec.spacing = gwkde::GridSpacing::linear;
    if (lo < hi) {
      gspec.min = lo;
      gspec.max = hi;
    } else {
      grid_empty = true;
      std::cerr << "warning: default evaluation grid is empty: the smallest "
                   "point with valid kernel shapes ("
                << lo << ") is not below the 99.9% sample quantile (" << hi
                << "); writing bandwidths only\n";
    }
  }

  gwkde::DensityGrid dg;
  if (!grid_empty) {
    dg = gwkde::estimate_grid(gwkde::build_grid(gspec), sample, cfg);
  }

  nlohmann::ordered_json j;
  j["format_version"] = "1";
  j["kind"] = "fit";
  j["input"] = o.input;
  j["n"] = sample.size();
  j["invocation"] = {
      {"a", a},
      {"a_source", o.a_given ? "flag" : "median"},
      {"c1", o.c1},
      {"grid", grid_empty
                   ? nlohmann::ordered_json(nullptr)
                   : nlohmann::ordered_json(
                         {{"min", gspec.min},
                          {"max", gspec.max},
                          {"points", gspec.points},
                          {"spacing", gspec.spacing == gwkde::GridSpacing::log
                                          ? "log"
                                          : "linear"}})}};
  if (o.seed_echo) j["invocation_echo"] = argv_echo;
  j["solution"] = gwkde::solution_json(sol);

  if (o.out.empty()) {
    if (grid_empty) {
      j["density"] = nullptr;
    } else {
      j["density"] = {{"x", dg.points},
                      {"value", dg.values},
                      {"junction_index", dg.junction_index}};
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  emit(j, o.out + "_bandwidths.json");
  std::string csv_path = o.out + "_density.csv";
  std::ofstream csv(csv_path);
  if (!csv) throw gwkde::config_error("cannot open output file " + csv_path);
  csv << "x,density\n";
  char buf[96];
  for (std::size_t i = 0; i < dg.points.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", dg.points[i],
                  dg.values[i]);
    csv << buf;
  }
  return kExitOk;
}

gwkde::Distribution build_dist(const SimOptions& o) {
  switch (gwkde::parse_dist_kind(o.dist)) {
    case gwkde::DistKind::weibull:
      return gwkde::make_weibull(o.shape, o.scale);
    case gwkde::DistKind::gamma:
      return gwkde::make_gamma_dist(o.shape, o.scale);
    case gwkde::DistKind::pareto:
      return gwkde::make_pareto(o.alpha, o.xm);
    case gwkde::DistKind::lognormal:
      return gwkde::make_lognormal(o.mu, o.sigma);
    case gwkde::DistKind::burr:
      return gwkde::make_burr(o.shape, o.burr_k);
    case gwkde::DistKind::half_cauchy:
      return gwkde::make_half_cauchy(o.scale);
  }
  throw gwkde::config_error("unknown distribution " + o.dist);
}

int run_simulate(const SimOptions& o) {
  gwkde::ExperimentConfig cfg;
  cfg.distribution = build_dist(o);
  cfg.sample_sizes = o.n;
  cfg.replications = o.reps;
  cfg.seed = o.seed;
  cfg.grid.min = o.grid_min;
  cfg.grid.max = o.grid_max;
  cfg.grid.points = o.grid_points;
  cfg.grid.spacing = parse_spacing(o.spacing);
  if (o.a == "median") {
    cfg.a_policy = gwkde::APolicy::median;
  } else {
    cfg.a_policy = gwkde::APolicy::fixed;
    try {
      cfg.a_fixed = std::stod(o.a);
    } catch (const std::exception&) {
      throw gwkde::config_error("--a expects 'median' or a number, got '" +
                                o.a + "'");
    }
  }
  cfg.c1 = o.c1;
  cfg.threads = o.threads;
  gwkde::validate_config(cfg);

  // One experiment per sample size so progress is visible; the merged
  // report is identical to a single run over all sizes.
  gwkde::ExperimentReport full;
  bool first = true;
  for (std::size_t n : cfg.sample_sizes) {
    gwkde::ExperimentConfig sub = cfg;
    sub.sample_sizes = {n};
    std::cerr << "simulate: n=" << n << ", " << cfg.replications
              << " replications...\n";
    gwkde::ExperimentReport part = gwkde::run_mise_experiment(sub);
    if (first) {
      full = part;
      full.runs.clear();
      first = false;
    }
    const gwkde::RunResult& run = part.runs.front();
    std::cerr << "simulate: n=" << n << " done, mise=" << run.empirical_mise
              << ", failed=" << run.failed_replications << "/"
              << run.replications << "\n";
    full.runs.push_back(run);
  }
  full.config.sample_sizes = cfg.sample_sizes;
  emit(gwkde::report_json(full), o.out);
  return kExitOk;
}

int run_validate(const ValOptions& o) {
  gwkde::ReferenceDensity f =
      gwkde::make_gamma_reference(o.ref_shape, o.ref_scale);
  std::vector<double> x_grid = {0.3 * o.a, 0.7 * o.a, 1.0 * o.a, 1.5 * o.a,
                                3.0 * o.a};
  std::vector<double> h_grid = {0.1, 0.05, 0.025, 0.0125};
  gwkde::ValidationReport rep = gwkde::run_asymptotics_validation(
      f, o.a, o.c1, o.c2, x_grid, h_grid, o.threshold);
  emit(gwkde::validation_json(rep), o.out);
  if (rep.oracle_failures > 0) {
    std::cerr << "error: " << rep.oracle_failures
              << " oracle evaluations failed to converge\n";
    return kExitOracle;
  }
  if (!rep.all_ratios_pass) {
    std::cerr << "validate: some residual-decay ratios exceed the threshold; "
                 "see the families section of the report\n";
    return 1;
  }
  return kExitOk;
}

int to_exit_code(const gwkde::error& e) {
  if (dynamic_cast<const gwkde::config_error*>(&e)) return kExitInput;
  if (dynamic_cast<const gwkde::degenerate_sample_error*>(&e)) {
    return kExitDegenerate;
  }
  if (dynamic_cast<const gwkde::invalid_shape_error*>(&e)) {
    return kExitSingular;
  }
  if (dynamic_cast<const gwkde::singular_error*>(&e)) return kExitSingular;
  if (dynamic_cast<const gwkde::oracle_error*>(&e)) return kExitOracle;
  if (dynamic_cast<const gwkde::divergence_error*>(&e)) return kExitOracle;
  if (dynamic_cast<const gwkde::domain_error*>(&e)) return kExitInput;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "piecewise gamma/Weibull kernel density estimation for nonnegative "
      "heavy-tailed data"};
  app.require_subcommand(1);

  FitOptions fo;
  CLI::App* fit = app.add_subcommand(
      "fit", "estimate a density from a data file (one value per line)");
  fit->add_option("input", fo.input, "sample file, '#' comments allowed")
      ->required();
  CLI::Option* fit_a =
      fit->add_option("--a", fo.a, "branch junction (default: sample median)");
  fit->add_option("--c1", fo.c1, "gamma-branch shape constant (negative)")->capture_default_str();
  fit->add_option("--grid", fo.grid,
                  "evaluation grid min:max:points[:linear|log]");
  fit->add_option("--out", fo.out,
                  "output prefix for <prefix>_density.csv and "
                  "<prefix>_bandwidths.json (default: JSON to stdout)");
  fit->add_flag("--seed-echo", fo.seed_echo,
                "embed the exact invocation in the report");

  SimOptions so;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Monte Carlo study of estimation error on a known density");
  sim->add_option("--dist", so.dist,
                  "weibull|pareto|lognormal|gamma|burr|half_cauchy")->capture_default_str();
  sim->add_option("--shape", so.shape, "shape (weibull/gamma/burr)")->capture_default_str();
  sim->add_option("--scale", so.scale, "scale (weibull/gamma/half_cauchy)")->capture_default_str();
  sim->add_option("--alpha", so.alpha, "pareto tail index")->capture_default_str();
  sim->add_option("--xm", so.xm, "pareto minimum")->capture_default_str();
  sim->add_option("--mu", so.mu, "lognormal log-mean")->capture_default_str();
  sim->add_option("--sigma", so.sigma, "lognormal log-sd")->capture_default_str();
  sim->add_option("--burr-k", so.burr_k, "burr second shape")->capture_default_str();
  sim->add_option("--n", so.n, "comma-separated sample sizes")
      ->delimiter(',')
      ->required();
  sim->add_option("--reps", so.reps, "replications per sample size")->capture_default_str();
  sim->add_option("--seed", so.seed, "base RNG seed")->capture_default_str();
  sim->add_option("--grid-min", so.grid_min, "evaluation grid start")->capture_default_str();
  sim->add_option("--grid-max", so.grid_max,
                  "evaluation grid end (0: true 1-1e-4 quantile)")->capture_default_str();
  sim->add_option("--grid-points", so.grid_points, "grid size")->capture_default_str();
  sim->add_option("--grid-spacing", so.spacing, "linear|log")->capture_default_str();
  sim->add_option("--a", so.a, "'median' or a fixed junction value")->capture_default_str();
  sim->add_option("--c1", so.c1, "gamma-branch shape constant (negative)")->capture_default_str();
  sim->add_option("--threads", so.threads, "worker threads (0: hardware)")->capture_default_str();
  sim->add_option("--out", so.out, "report path (default: stdout)");
  // Config files are processed by the root app only, so the option lives
  // there and simulate falls through to it; keys go under [simulate].
  sim->fallthrough();
  app.set_config("--config", "",
                 "key=value file with simulate options in a [simulate] "
                 "section; explicit flags win");

  ValOptions vo;
  CLI::App* val = app.add_subcommand(
      "validate",
      "compare first-order expansions against quadrature/closed-form oracles");
  val->add_option("--a", vo.a, "branch junction")->capture_default_str();
  val->add_option("--c1", vo.c1, "gamma-branch shape constant")->capture_default_str();
  val->add_option("--c2", vo.c2, "weibull-branch shape constant")->capture_default_str();
  val->add_option("--threshold", vo.threshold,
                  "required residual ratio per bandwidth halving")->capture_default_str();
  val->add_option("--ref-shape", vo.ref_shape, "reference gamma shape")->capture_default_str();
  val->add_option("--ref-scale", vo.ref_scale, "reference gamma scale")->capture_default_str();
  val->add_option("--out", vo.out, "report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  fo.a_given = fit_a->count() > 0;
  std::vector<std::string> argv_echo(argv, argv + argc);

  try {
    if (fit->parsed()) return run_fit(fo, argv_echo);
    if (sim->parsed()) return run_simulate(so);
    if (val->parsed()) return run_validate(vo);
  } catch (const gwkde::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return to_exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitInput;
}
