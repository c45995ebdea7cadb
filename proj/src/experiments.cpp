#include "gwkde/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "gwkde/asymptotics.hpp"
#include "gwkde/errors.hpp"

namespace gwkde {
namespace {

constexpr double kTailProb = 1e-4;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* spacing_name(GridSpacing s) {
  return s == GridSpacing::linear ? "linear" : "log";
}

const char* policy_name(APolicy p) {
  return p == APolicy::median ? "median" : "fixed";
}

// Runs fn(r) for r in [0, count) on `threads` workers (0 = hardware).
// Work is keyed by r, never by worker, so scheduling cannot leak into
// results; the first exception is rethrown after all workers join.
void parallel_reps(std::size_t count, std::size_t threads,
                   const std::function<void(std::size_t)>& fn) {
  std::size_t hw = std::thread::hardware_concurrency();
  std::size_t t = threads ? threads : (hw ? hw : 1);
  t = std::min(t, count);
  if (t <= 1) {
    for (std::size_t r = 0; r < count; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mu;
  pool.reserve(t);
  for (std::size_t w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      std::size_t lo = count * w / t;
      std::size_t hi = count * (w + 1) / t;
      for (std::size_t r = lo; r < hi; ++r) {
        try {
          fn(r);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? kNaN : pairwise_sum(v) / static_cast<double>(v.size());
}

// Sample variance with ddof = 1; 0 for fewer than two values.
double var_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double d = v[i] - mean;
    sq[i] = d * d;
  }
  return pairwise_sum(sq) / static_cast<double>(v.size() - 1);
}

double trapz(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> panels(x.size() > 0 ? x.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    panels[i] = 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  }
  return pairwise_sum(panels);
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["distribution"] = {{"name", dist_name(cfg.distribution)},
                       {"p1", cfg.distribution.p1},
                       {"p2", cfg.distribution.p2}};
  j["sample_sizes"] = cfg.sample_sizes;
  j["replications"] = cfg.replications;
  j["seed"] = cfg.seed;
  j["grid"] = {{"min", cfg.grid.min},
               {"max", cfg.grid.max},
               {"points", cfg.grid.points},
               {"spacing", spacing_name(cfg.grid.spacing)}};
  j["a_policy"] = policy_name(cfg.a_policy);
  j["a_fixed"] = cfg.a_fixed;
  j["c1"] = cfg.c1;
  // threads deliberately omitted: it must never change report bytes
  return j;
}

// State of one replication; filled by a worker, reduced serially.
struct RepData {
  bool ok = false;
  double ise = 0.0;
  double jump = 0.0;
  double h = 0.0;
  double b = 0.0;
  double a = 0.0;
  double mass = 0.0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
  std::vector<double> est;
  std::string error_message;
};

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.sample_sizes.empty()) {
    throw config_error("sample_sizes must be nonempty");
  }
  for (std::size_t n : cfg.sample_sizes) {
    if (n < 10) {
      throw config_error("sample sizes below 10 are not supported");
    }
  }
  if (cfg.replications < 1) {
    throw config_error("replications must be at least 1");
  }
  if (!std::isfinite(cfg.c1) || !(cfg.c1 < 0.0)) {
    throw config_error("c1 must be a negative finite number");
  }
  if (cfg.a_policy == APolicy::fixed &&
      (!std::isfinite(cfg.a_fixed) || !(cfg.a_fixed > 0.0))) {
    throw config_error("fixed junction requires a_fixed > 0");
  }
  if (cfg.grid.points < 2) {
    throw config_error("grid needs at least 2 points");
  }
  if (!std::isfinite(cfg.grid.min) || cfg.grid.min < 0.0) {
    throw config_error("grid min must be finite and nonnegative");
  }
  if (cfg.grid.max > 0.0 &&
      (!std::isfinite(cfg.grid.max) || !(cfg.grid.max > cfg.grid.min))) {
    throw config_error("grid max must exceed grid min");
  }
  if (cfg.grid.spacing == GridSpacing::log && !(cfg.grid.min > 0.0)) {
    throw config_error("log-spaced grid requires min > 0");
  }
}

std::vector<double> build_grid(const GridSpec& spec) {
  if (spec.points < 2) {
    throw config_error("grid needs at least 2 points");
  }
  if (!std::isfinite(spec.min) || !std::isfinite(spec.max) ||
      spec.min < 0.0 || !(spec.max > spec.min)) {
    throw config_error("grid requires 0 <= min < max");
  }
  if (spec.spacing == GridSpacing::log && !(spec.min > 0.0)) {
    throw config_error("log-spaced grid requires min > 0");
  }
  std::vector<double> g(spec.points);
  double last = static_cast<double>(spec.points - 1);
  if (spec.spacing == GridSpacing::linear) {
    for (std::size_t i = 0; i < spec.points; ++i) {
      g[i] = spec.min + (spec.max - spec.min) * (static_cast<double>(i) / last);
    }
  } else {
    double lmin = std::log(spec.min);
    double lmax = std::log(spec.max);
    for (std::size_t i = 0; i < spec.points; ++i) {
      g[i] = std::exp(lmin + (lmax - lmin) * (static_cast<double>(i) / last));
    }
  }
  g.front() = spec.min;  // exact endpoints regardless of rounding
  g.back() = spec.max;
  return g;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

ExperimentReport run_mise_experiment(const ExperimentConfig& cfg,
                                     const EstimateHook& hook) {
  validate_config(cfg);
  ExperimentReport report;
  report.config = cfg;
  GridSpec grid = cfg.grid;
  if (!(grid.max > 0.0)) {
    grid.max = dist_quantile(cfg.distribution, 1.0 - kTailProb);
  }
  report.config.grid = grid;
  report.grid = build_grid(grid);
  report.truncated_lower_mass = dist_cdf(cfg.distribution, report.grid.front());
  report.truncated_tail_mass =
      1.0 - dist_cdf(cfg.distribution, report.grid.back());

  std::vector<double> truth(report.grid.size());
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    truth[i] = dist_pdf(cfg.distribution, report.grid[i]);
  }

  for (std::size_t n : cfg.sample_sizes) {
    std::vector<RepData> reps(cfg.replications);
    parallel_reps(cfg.replications, cfg.threads, [&](std::size_t r) {
      RepData& out = reps[r];
      try {
        Sample s = sample_heavy_tailed(cfg.distribution, n, cfg.seed, r);
        double a =
            cfg.a_policy == APolicy::median ? s.median() : cfg.a_fixed;
        BandwidthSolution sol = select_bandwidths(s, a, cfg.c1);
        EstimatorConfig ecfg = make_config(a, cfg.c1, sol.c2, sol.b_opt);
        EstimateStats stats;
        std::vector<double> est;
        if (hook) {
          est = hook(report.grid, s, ecfg);
        } else {
          est = estimate_grid(report.grid, s, ecfg, &stats).values;
        }
        if (est.size() != report.grid.size()) {
          throw error("estimate hook returned wrong length");
        }
        std::vector<double> sq(est.size());
        for (std::size_t j = 0; j < est.size(); ++j) {
          double d = est[j] - truth[j];
          sq[j] = d * d;
        }
        out.ise = trapz(report.grid, sq);
        out.mass = trapz(report.grid, est);
        out.jump = junction_jump(s, ecfg, ecfg.a * 1e-3);
        out.h = ecfg.h;
        out.b = ecfg.b;
        out.a = ecfg.a;
        out.skipped = stats.skipped_zero_observations;
        out.warnings = sol.diagnostics.warnings;
        out.est = std::move(est);
        out.ok = true;
      } catch (const error& e) {
        out.ok = false;
        out.error_message = e.what();
      }
    });

    // Serial reduction in replication order keeps reports byte-identical
    // for every thread count.
    RunResult run;
    run.n = n;
    run.replications = cfg.replications;
    std::vector<double> ises, jumps, hs, bs, as, masses;
    for (const RepData& d : reps) {
      if (!d.ok) {
        ++run.failed_replications;
        if (run.failure_messages.size() < 5) {
          run.failure_messages.push_back(d.error_message);
        }
        continue;
      }
      ises.push_back(d.ise);
      jumps.push_back(d.jump);
      hs.push_back(d.h);
      bs.push_back(d.b);
      as.push_back(d.a);
      masses.push_back(d.mass);
      for (const std::string& w : d.warnings) ++run.warning_counts[w];
      if (d.skipped) {
        run.warning_counts["skipped_zero_observations"] += d.skipped;
      }
    }
    if (run.failed_replications * 5 > cfg.replications) {
      std::string detail = run.failure_messages.empty()
                               ? std::string("no detail")
                               : run.failure_messages.front();
      throw error("more than 20% of replications failed for n=" +
                  std::to_string(n) + " (" +
                  std::to_string(run.failed_replications) + "/" +
                  std::to_string(cfg.replications) + "): " + detail);
    }
    std::size_t m = ises.size();
    double md = static_cast<double>(m);
    run.empirical_mise = mean_of(ises);
    run.mise_stderr =
        m >= 2 ? std::sqrt(var_of(ises, run.empirical_mise) / md) : 0.0;
    run.junction_jump_mean = mean_of(jumps);
    run.mean_h = mean_of(hs);
    run.mean_b = mean_of(bs);
    run.mean_a = mean_of(as);
    run.mean_mass = mean_of(masses);
    run.bias_grid.resize(report.grid.size());
    run.var_grid.resize(report.grid.size());
    std::vector<double> col;
    col.reserve(m);
    for (std::size_t j = 0; j < report.grid.size(); ++j) {
      col.clear();
      for (const RepData& d : reps) {
        if (d.ok) col.push_back(d.est[j]);
      }
      double mu = mean_of(col);
      run.bias_grid[j] = mu - truth[j];
      run.var_grid[j] = var_of(col, mu);
    }
    report.runs.push_back(std::move(run));
  }
  return report;
}

nlohmann::ordered_json report_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["format_version"] = "1";
  j["kind"] = "mise_experiment";
  j["config"] = config_json(report.config);
  j["truncated_lower_mass"] = report.truncated_lower_mass;
  j["truncated_tail_mass"] = report.truncated_tail_mass;
  j["grid"] = report.grid;
  j["runs"] = nlohmann::ordered_json::array();
  for (const RunResult& run : report.runs) {
    nlohmann::ordered_json r;
    r["n"] = run.n;
    r["replications"] = run.replications;
    r["failed_replications"] = run.failed_replications;
    r["empirical_mise"] = run.empirical_mise;
    r["mise_stderr"] = run.mise_stderr;
    r["mean_h"] = run.mean_h;
    r["mean_b"] = run.mean_b;
    r["mean_a"] = run.mean_a;
    r["junction_jump_mean"] = run.junction_jump_mean;
    r["mean_mass"] = run.mean_mass;
    r["warning_counts"] = run.warning_counts;  // std::map: sorted keys
    r["failure_messages"] = run.failure_messages;
    r["bias_grid"] = run.bias_grid;
    r["var_grid"] = run.var_grid;
    j["runs"].push_back(std::move(r));
  }
  return j;
}

BiasVarReport empirical_bias_variance(const ExperimentConfig& cfg,
                                      const std::vector<double>& x_points,
                                      const EstimatorConfig& est,
                                      const EstimateHook& hook) {
  validate_config(cfg);
  if (cfg.replications < 100) {
    throw config_error("bias/variance measurement needs >= 100 replications");
  }
  if (x_points.empty()) {
    throw config_error("x_points must be nonempty");
  }
  for (std::size_t i = 0; i + 1 < x_points.size(); ++i) {
    if (!(x_points[i] < x_points[i + 1])) {
      throw config_error("x_points must be strictly increasing");
    }
  }
  ReferenceDensity truth = true_density(cfg.distribution);
  BiasVarReport out;
  out.config = cfg;
  out.est = est;
  for (std::size_t n : cfg.sample_sizes) {
    std::vector<std::vector<double>> vals(cfg.replications);
    parallel_reps(cfg.replications, cfg.threads, [&](std::size_t r) {
      Sample s = sample_heavy_tailed(cfg.distribution, n, cfg.seed, r);
      vals[r] = hook ? hook(x_points, s, est)
                     : estimate_grid(x_points, s, est).values;
      if (vals[r].size() != x_points.size()) {
        throw error("estimate hook returned wrong length");
      }
    });
    double m = static_cast<double>(cfg.replications);
    std::vector<double> col(cfg.replications);
    for (std::size_t k = 0; k < x_points.size(); ++k) {
      for (std::size_t r = 0; r < cfg.replications; ++r) col[r] = vals[r][k];
      double mu = mean_of(col);
      double var = var_of(col, mu);
      BiasVarCell cell;
      cell.n = n;
      cell.x = x_points[k];
      double fx = truth.pdf(cell.x);
      cell.emp_bias = mu - fx;
      cell.bias_stderr = std::sqrt(var / m);
      cell.emp_var = var;
      cell.var_stderr = var * std::sqrt(2.0 / (m - 1.0));
      cell.pred_bias = kNaN;
      cell.pred_var = kNaN;
      if (cell.x <= est.a) {
        try {
          auto [C1, C2] = asym::bias_gamma_C1_C2(cell.x, est.a, est.c1, truth);
          cell.pred_bias = C1 + est.h * C2;
          auto [A1, A2] = asym::var_gamma_A1_A2(cell.x, est.a, est.c1, truth);
          cell.pred_var = (A1 - (C1 + fx) * (C1 + fx) +
                           est.h * (A2 - 2.0 * C2 * (C1 + fx))) /
                          static_cast<double>(n);
        } catch (const error&) {
          // prediction undefined here (e.g. variance pole); keep NaN
        }
      } else {
        try {
          auto [B1, B2] =
              asym::bias_weibull_B1_B2(cell.x, est.a, est.c2, truth);
          cell.pred_bias = B1 + est.b * B2;
          auto [D1, D2] = asym::var_weibull_D1_D2(cell.x, est.a, est.c2, truth);
          cell.pred_var = (D1 - (B1 - fx) * (B1 - fx) +
                           est.b * (D2 - 2.0 * B2 * (B1 - fx))) /
                          static_cast<double>(n);
        } catch (const error&) {
        }
      }
      out.cells.push_back(cell);
    }
  }
  return out;
}

nlohmann::ordered_json bias_variance_json(const BiasVarReport& report) {
  nlohmann::ordered_json j;
  j["format_version"] = "1";
  j["kind"] = "bias_variance";
  j["config"] = config_json(report.config);
  j["estimator"] = {{"a", report.est.a},
                    {"c1", report.est.c1},
                    {"c2", report.est.c2},
                    {"h", report.est.h},
                    {"b", report.est.b}};
  j["cells"] = nlohmann::ordered_json::array();
  for (const BiasVarCell& c : report.cells) {
    nlohmann::ordered_json cj;
    cj["n"] = c.n;
    cj["x"] = c.x;
    cj["emp_bias"] = c.emp_bias;
    cj["bias_stderr"] = c.bias_stderr;
    cj["emp_var"] = c.emp_var;
    cj["var_stderr"] = c.var_stderr;
    cj["pred_bias"] = c.pred_bias;
    cj["pred_var"] = c.pred_var;
    j["cells"].push_back(std::move(cj));
  }
  return j;
}

void write_bias_variance_csv(const BiasVarReport& report,
                             const std::string& prefix) {
  for (std::size_t n : report.config.sample_sizes) {
    std::string bias_path = prefix + "_bias_n" + std::to_string(n) + ".csv";
    std::string var_path = prefix + "_variance_n" + std::to_string(n) + ".csv";
    std::ofstream bf(bias_path);
    std::ofstream vf(var_path);
    if (!bf || !vf) {
      throw config_error("cannot open output CSV under prefix " + prefix);
    }
    bf << "x,empirical,predicted,stderr\n";
    vf << "x,empirical,predicted,stderr\n";
    for (const BiasVarCell& c : report.cells) {
      if (c.n != n) continue;
      bf << fmt_double(c.x) << ',' << fmt_double(c.emp_bias) << ','
         << fmt_double(c.pred_bias) << ',' << fmt_double(c.bias_stderr)
         << '\n';
      vf << fmt_double(c.x) << ',' << fmt_double(c.emp_var) << ','
         << fmt_double(c.pred_var) << ',' << fmt_double(c.var_stderr) << '\n';
    }
  }
}

nlohmann::ordered_json solution_json(const BandwidthSolution& sol) {
  nlohmann::ordered_json j;
  j["a"] = sol.a;
  j["c1"] = sol.c1;
  j["c2"] = sol.c2;
  j["h_opt"] = sol.h_opt;
  j["b_opt"] = sol.b_opt;
  j["rho_m"] = sol.rho_m;
  j["kappa_m"] = sol.kappa_m;
  j["diagnostics"] = {{"c2_raw", sol.diagnostics.c2_raw},
                      {"b_raw", sol.diagnostics.b_raw},
                      {"h_opt_direct", sol.diagnostics.h_opt_direct},
                      {"h_mismatch", sol.diagnostics.h_mismatch},
                      {"c2_repaired", sol.diagnostics.c2_repaired},
                      {"floor_used", sol.diagnostics.floor_used},
                      {"warnings", sol.diagnostics.warnings}};
  return j;
}

}  // namespace gwkde
