// Release gate harness: eight independent checks, one PASS/FAIL line
// each, exit 0 only when every gate holds. Each gate also enforces a
// wall-clock budget so regressions in runtime fail loudly.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gwkde/bandwidth.hpp"
#include "gwkde/distributions.hpp"
#include "gwkde/errors.hpp"
#include "gwkde/experiments.hpp"
#include "gwkde/kernels.hpp"
#include "gwkde/quadrature.hpp"
#include "gwkde/reference_density.hpp"
#include "gwkde/rng.hpp"
#include "gwkde/sample.hpp"
#include "gwkde/specfun.hpp"

namespace {

using gwkde::CounterRng;
using gwkde::EstimatorConfig;
using gwkde::ReferenceDensity;
using gwkde::Sample;

struct GateResult {
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// Gate 1: every kernel is a probability density. 50 random valid
// (x, config) pairs per branch; quadrature mass within 1e-8 of 1.
GateResult gate_kernel_normalization() {
  GateResult g;
  double t0 = now_seconds();
  CounterRng rng(2024, 0);
  std::uint64_t ctr = 0;
  auto u = [&] { return rng.uniform(ctr++); };

  int total = 0;
  int within = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    double a = 0.5 + 1.5 * u();
    double c1 = -(0.5 + u());
    double x = a * (0.05 + 0.95 * u());
    double h = (0.05 + 0.9 * u()) * x / std::abs(c1);
    // make_config derives h from b, so invert the coupling
    EstimatorConfig cfg = gwkde::make_config(a, c1, -1.0, -h * c1);
    double shape = gwkde::rho_shape(x, cfg);
    double hi = gwkde::asym::gamma_kernel_quantile(shape, a, 1.0 - 1e-13);
    double mass = gwkde::quadrature::integrate(
        [&](double y) { return gwkde::gamma_kernel(y, x, cfg); }, 0.0, hi,
        1e-11, 1e-11);
    worst = std::max(worst, std::abs(mass - 1.0));
    ++total;
    within += std::abs(mass - 1.0) <= 1e-8;
  }
  for (int i = 0; i < 50; ++i) {
    double a = 0.5 + 1.5 * u();
    double c2 = -(0.5 + u());
    double x = a * (1.0 + 3.0 * u());
    double b = (0.05 + 0.9 * u()) * 0.95 * x / std::abs(c2);
    EstimatorConfig cfg = gwkde::make_config(a, -1.0, c2, b);
    double shape = gwkde::k_shape(x, cfg);
    double hi = gwkde::asym::weibull_kernel_quantile(shape, a, 1.0 - 1e-13);
    double mass = gwkde::quadrature::integrate(
        [&](double y) { return gwkde::weibull_kernel(y, x, cfg); }, 0.0, hi,
        1e-11, 1e-11);
    worst = std::max(worst, std::abs(mass - 1.0));
    ++total;
    within += std::abs(mass - 1.0) <= 1e-8;
  }
  g.seconds = now_seconds() - t0;
  g.pass = within == total && g.seconds < 10.0;
  g.detail = fmt("kernel normalization: %d/%d masses within 1e-8 of 1, "
                 "worst |mass-1| = %.2e",
                 within, total, worst);
  return g;
}

// Gate 2: special-function contracts. Recurrences on 1000 random points,
// exp(ln_gamma) consistency, digamma vs central difference, known pins.
GateResult gate_special_functions() {
  namespace sf = gwkde::specfun;
  GateResult g;
  double t0 = now_seconds();
  CounterRng rng(7, 1);
  bool ok = true;

  for (int i = 0; i < 1000; ++i) {
    double z = 50.0 * rng.uniform(static_cast<std::uint64_t>(i));
    if (z < 1e-6) z = 1e-6;
    ok &= std::abs(sf::digamma(z + 1.0) - sf::digamma(z) - 1.0 / z) <= 1e-10;
    double gz = sf::gamma_fn(z);
    ok &= std::abs(sf::gamma_fn(z + 1.0) - z * gz) /
              sf::gamma_fn(z + 1.0) <=
          1e-12;
  }
  for (int i = 0; i < 1000; ++i) {
    double t = static_cast<double>(i) / 999.0;
    double z = 0.01 * std::pow(170.0 / 0.01, t);
    double gz = sf::gamma_fn(z);
    ok &= std::abs(std::exp(sf::ln_gamma(z)) - gz) / gz <= 1e-11;
  }
  const double eps = 1e-5;
  for (int i = 0; i < 500; ++i) {
    double z = 0.5 + 99.5 * static_cast<double>(i) / 499.0;
    double fd = (sf::ln_gamma(z + eps) - sf::ln_gamma(z - eps)) / (2.0 * eps);
    ok &= std::abs(sf::digamma(z) - fd) <= 1e-6;
  }
  ok &= std::abs(sf::gamma_fn(5.0) - 24.0) / 24.0 <= 1e-13;
  ok &= std::abs(sf::gamma_fn(1.0) - 1.0) <= 1e-13;
  ok &= std::abs(sf::gamma_fn(0.5) - std::sqrt(M_PI)) / std::sqrt(M_PI) <=
        1e-13;
  ok &= std::abs(sf::digamma(1.0) + sf::euler_gamma) <= 1e-12;
  ok &= std::abs(sf::digamma(0.5) + sf::euler_gamma + 2.0 * std::log(2.0)) <=
        1e-10;
  ok &= std::abs(sf::ln_gamma(10.0) - std::log(362880.0)) <= 1e-12;
  ok &= sf::d_const() == sf::euler_gamma - 1.0 + std::log(2.0);

  g.seconds = now_seconds() - t0;
  g.pass = ok && g.seconds < 5.0;
  g.detail = "special functions: recurrence, log-space consistency, "
             "finite-difference, and identity pins hold";
  return g;
}

// Gate 3: expansion-vs-oracle decay on the moment-matched gamma
// reference. Every family either passes the 0.6 halving ratio in at
// least 80% of cells or carries an explicit discrepancy record.
GateResult gate_expansion_validation() {
  GateResult g;
  double t0 = now_seconds();
  ReferenceDensity f = gwkde::make_gamma_reference(6.0, 1.0 / 3.0);
  gwkde::ValidationReport rep = gwkde::run_asymptotics_validation(
      f, 1.0, -1.0, -1.0, {0.3, 0.7, 1.0, 1.5, 3.0},
      {0.1, 0.05, 0.025, 0.0125}, 0.6);

  int clean = 0;
  int documented = 0;
  bool ok = rep.oracle_failures == 0 && !rep.families.empty();
  for (const gwkde::FamilySummary& fam : rep.families) {
    if (fam.pass_fraction >= 0.8) {
      ++clean;
    } else if (fam.discrepancy && !fam.note.empty()) {
      ++documented;
    } else {
      ok = false;
    }
  }
  g.seconds = now_seconds() - t0;
  g.pass = ok && g.seconds < 60.0;
  g.detail = fmt("expansion validation: %d families pass the decay gate, "
                 "%d carry documented discrepancy records, 0 unexplained",
                 clean, documented);
  return g;
}

// Gate 4: closed-form bandwidth optima are stationary points of the
// quadratic pointwise MSE models whenever they come out positive.
GateResult gate_stationarity() {
  GateResult g;
  double t0 = now_seconds();
  ReferenceDensity f = gwkde::make_gamma_reference(6.0, 1.0 / 3.0);
  const double a = 1.0;
  const double c1 = -1.0;
  const double c2 = -1.0;
  int positive = 0;
  int stationary = 0;

  for (double n : {100.0, 1000.0, 10000.0}) {
    for (double xf : {0.2, 0.5, 0.8, 1.0}) {
      double x = xf * a;
      try {
        double h = gwkde::h_opt(x, a, n, c1, f);
        if (!(h > 0.0)) continue;
        ++positive;
        double m0 = gwkde::mse_model_gamma(h, x, a, c1, n, f);
        bool ok =
            m0 <= gwkde::mse_model_gamma(1.1 * h, x, a, c1, n, f) + 1e-12 &&
            m0 <= gwkde::mse_model_gamma(0.9 * h, x, a, c1, n, f) + 1e-12;
        stationary += ok;
      } catch (const gwkde::error&) {
        // singular coefficient: no optimum exists at this x
      }
    }
    for (double xf : {1.0, 1.2, 1.5, 2.0, 3.0}) {
      double x = xf * a;
      try {
        double b = gwkde::b_opt(x, a, n, c2, f);
        if (!(b > 0.0)) continue;
        ++positive;
        double m0 = gwkde::mse_model_weibull(b, x, a, c2, n, f);
        bool ok =
            m0 <= gwkde::mse_model_weibull(1.1 * b, x, a, c2, n, f) + 1e-12 &&
            m0 <= gwkde::mse_model_weibull(0.9 * b, x, a, c2, n, f) + 1e-12;
        stationary += ok;
      } catch (const gwkde::error&) {
      }
    }
  }
  g.seconds = now_seconds() - t0;
  g.pass = positive > 0 && stationary == positive && g.seconds < 1.0;
  g.detail = fmt("bandwidth stationarity: %d/%d positive optima are "
                 "minima of their quadratic models (tolerance 1e-12)",
                 stationary, positive);
  return g;
}

// Gate 5: rule-of-thumb moment fit pins and scale equivariance.
GateResult gate_plugin_pins() {
  GateResult g;
  double t0 = now_seconds();
  gwkde::PlugInReference r = gwkde::fit_reference(Sample({1.0, 2.0, 3.0}));
  bool ok = std::abs(r.kappa_m - 1.0 / 3.0) <= 1e-15 &&
            std::abs(r.rho_m - 6.0) <= 1e-13;

  const double s = 137.0;
  gwkde::PlugInReference rs =
      gwkde::fit_reference(Sample({1.0 * s, 2.0 * s, 3.0 * s}));
  ok &= std::abs(rs.rho_m - r.rho_m) <= 1e-12 * r.rho_m;
  ok &= std::abs(rs.kappa_m - s * r.kappa_m) <= 1e-12 * s * r.kappa_m;

  g.seconds = now_seconds() - t0;
  g.pass = ok && g.seconds < 1.0;
  g.detail = fmt("rule-of-thumb pins: {1,2,3} gives rho=%.15g kappa=%.17g; "
                 "x137 rescale leaves rho fixed and scales kappa",
                 r.rho_m, r.kappa_m);
  return g;
}

// Gate 6: Monte Carlo consistency on Weibull(0.9, 1). MISE decreases in
// n within twice the combined standard error, and the pointwise variance
// roughly halves per doubling of n.
GateResult gate_mise_consistency(gwkde::ExperimentReport& report_out,
                                 bool& report_valid) {
  GateResult g;
  double t0 = now_seconds();
  gwkde::ExperimentConfig cfg;
  cfg.distribution = gwkde::make_weibull(0.9, 1.0);
  cfg.sample_sizes = {100, 500, 1000, 2000};
  cfg.replications = 500;
  cfg.seed = 42;
  cfg.grid.min = 0.3;
  cfg.grid.max = 0.0;  // resolved to the true upper 1e-4 quantile
  cfg.grid.points = 512;
  cfg.grid.spacing = gwkde::GridSpacing::linear;
  cfg.a_policy = gwkde::APolicy::median;
  cfg.c1 = -1.0;
  cfg.threads = 0;

  try {
    report_out = gwkde::run_mise_experiment(cfg);
    report_valid = true;
  } catch (const std::exception& e) {
    g.seconds = now_seconds() - t0;
    g.detail = fmt("mise consistency: experiment aborted: %s", e.what());
    return g;
  }
  const std::vector<gwkde::RunResult>& runs = report_out.runs;

  bool decreasing = runs.size() == 4;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    double slack = 2.0 * std::hypot(runs[i].mise_stderr,
                                    runs[i + 1].mise_stderr);
    decreasing &= runs[i + 1].empirical_mise < runs[i].empirical_mise + slack;
  }

  // variance ratio per doubling of n (500 -> 1000 -> 2000) at fixed x
  const double x_points[] = {0.5, 0.9, 1.3, 2.0, 3.0};
  bool halving = true;
  double worst_ratio = 0.5;
  for (double x : x_points) {
    std::size_t idx = 0;
    for (std::size_t k = 1; k < report_out.grid.size(); ++k) {
      if (std::abs(report_out.grid[k] - x) <
          std::abs(report_out.grid[idx] - x)) {
        idx = k;
      }
    }
    for (std::size_t pair : {1u, 2u}) {
      double ratio = runs[pair + 1].var_grid[idx] / runs[pair].var_grid[idx];
      if (std::abs(ratio - 0.5) > std::abs(worst_ratio - 0.5)) {
        worst_ratio = ratio;
      }
      halving &= ratio >= 0.4 && ratio <= 0.6;
    }
  }

  g.seconds = now_seconds() - t0;
  g.pass = decreasing && halving && g.seconds < 600.0;
  g.detail = fmt("mise consistency: mise %.4f/%.4f/%.4f/%.4f over n=100/500/"
                 "1000/2000 (decreasing within 2 se: %s), variance doubling "
                 "ratios in [0.4,0.6] (worst %.3f)",
                 runs.size() > 0 ? runs[0].empirical_mise : -1.0,
                 runs.size() > 1 ? runs[1].empirical_mise : -1.0,
                 runs.size() > 2 ? runs[2].empirical_mise : -1.0,
                 runs.size() > 3 ? runs[3].empirical_mise : -1.0,
                 decreasing ? "yes" : "no", worst_ratio);
  return g;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Gate 7: the command-line simulate report is byte-identical across
// reruns and across thread counts.
GateResult gate_determinism() {
  GateResult g;
  double t0 = now_seconds();
  std::string base =
      std::string(GWKDE_CLI_PATH) +
      " simulate --dist weibull --shape 0.9 --scale 1 --n 200 --reps 6"
      " --seed 3 --grid-min 0.3 --grid-max 5 --grid-points 64";
  std::string f1 = "/tmp/gwkde_accept_" + std::to_string(::getpid()) + "_1";
  std::string f2 = "/tmp/gwkde_accept_" + std::to_string(::getpid()) + "_2";
  std::string f3 = "/tmp/gwkde_accept_" + std::to_string(::getpid()) + "_3";

  bool ok = true;
  const struct {
    const char* threads;
    const std::string* out;
  } runs[] = {{"1", &f1}, {"1", &f2}, {"4", &f3}};
  for (const auto& r : runs) {
    std::string cmd = base + " --threads " + r.threads + " --out " + *r.out +
                      " >/dev/null 2>/dev/null";
    int status = std::system(cmd.c_str());
    ok &= WIFEXITED(status) && WEXITSTATUS(status) == 0;
  }
  std::string d1 = slurp(f1);
  ok &= !d1.empty() && d1 == slurp(f2) && d1 == slurp(f3);
  std::remove(f1.c_str());
  std::remove(f2.c_str());
  std::remove(f3.c_str());

  g.seconds = now_seconds() - t0;
  g.pass = ok && g.seconds < 120.0;
  g.detail = "determinism: simulate reports byte-identical across two "
             "reruns and across 1 vs 4 worker threads";
  return g;
}

// Gate 8: the junction jump diagnostic is reported for every Monte Carlo
// run and matches its pinned means from the frozen reference run.
GateResult gate_junction_diagnostic(const gwkde::ExperimentReport& report,
                                    bool report_valid) {
  GateResult g;
  double t0 = now_seconds();
  if (!report_valid) {
    g.detail = "junction diagnostic: no experiment report available";
    return g;
  }
  // frozen from the deterministic seed-42 reference run above
  const double pinned[] = {0.09713, 0.04920, 0.04399, 0.04183};
  bool ok = report.runs.size() == 4;
  double measured[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < report.runs.size() && i < 4; ++i) {
    double jump = report.runs[i].junction_jump_mean;
    measured[i] = jump;
    ok &= std::isfinite(jump) && jump >= 0.0;
    ok &= std::abs(jump - pinned[i]) <= 1e-3 * pinned[i] + 1e-6;
  }
  g.seconds = now_seconds() - t0;
  g.pass = ok;
  g.detail = fmt("junction diagnostic: mean jump %.5f/%.5f/%.5f/%.5f over "
                 "n=100/500/1000/2000, matching pinned values",
                 measured[0], measured[1], measured[2], measured[3]);
  return g;
}

void report(int id, const GateResult& g) {
  std::printf("criterion %d: %s - %s (%.1f s)\n", id,
              g.pass ? "PASS" : "FAIL", g.detail.c_str(), g.seconds);
  std::fflush(stdout);
}

}  // namespace

int main() {
  bool all = true;
  gwkde::ExperimentReport mc_report;
  bool mc_valid = false;

  GateResult g1 = gate_kernel_normalization();
  report(1, g1);
  GateResult g2 = gate_special_functions();
  report(2, g2);
  GateResult g3 = gate_expansion_validation();
  report(3, g3);
  GateResult g4 = gate_stationarity();
  report(4, g4);
  GateResult g5 = gate_plugin_pins();
  report(5, g5);
  GateResult g6 = gate_mise_consistency(mc_report, mc_valid);
  report(6, g6);
  GateResult g7 = gate_determinism();
  report(7, g7);
  GateResult g8 = gate_junction_diagnostic(mc_report, mc_valid);
  report(8, g8);

  for (const GateResult* g : {&g1, &g2, &g3, &g4, &g5, &g6, &g7, &g8}) {
    all &= g->pass;
  }
  return all ? 0 : 1;
}
