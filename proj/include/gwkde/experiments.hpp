#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gwkde/bandwidth.hpp"
#include "gwkde/distributions.hpp"
#include "gwkde/estimator.hpp"
#include "gwkde/reference_density.hpp"

namespace gwkde {

enum class APolicy { fixed, median };
enum class GridSpacing { linear, log };

// Evaluation grid. max <= 0 requests automatic truncation at the target
// distribution's 1 - 1e-4 quantile; the truncated masses are reported.
// min defaults to 0.3 because the gamma branch needs x > |c1| h and
// rule-of-thumb bandwidths on unit-scale data land near 0.1-0.2.
struct GridSpec {
  double min = 0.3;
  double max = 0.0;
  std::size_t points = 512;
  GridSpacing spacing = GridSpacing::linear;
};

struct ExperimentConfig {
  Distribution distribution;
  std::vector<std::size_t> sample_sizes;
  std::size_t replications = 1;
  std::uint64_t seed = 0;
  GridSpec grid;
  APolicy a_policy = APolicy::median;
  double a_fixed = 1.0;
  double c1 = -1.0;
  std::size_t threads = 0;  // 0 = hardware concurrency; never affects output
};

void validate_config(const ExperimentConfig& cfg);

// Grid points per spec (resolved max must be set by then).
std::vector<double> build_grid(const GridSpec& spec);

// Deterministic order-insensitive-drift summation.
double pairwise_sum(const double* v, std::size_t n);
double pairwise_sum(const std::vector<double>& v);

// Test hook replacing grid estimation (e.g. by the true pdf).
using EstimateHook = std::function<std::vector<double>(
    const std::vector<double>& points, const Sample& sample,
    const EstimatorConfig& cfg)>;

struct RunResult {
  std::size_t n = 0;
  std::size_t replications = 0;
  std::size_t failed_replications = 0;
  double empirical_mise = 0.0;
  double mise_stderr = 0.0;
  std::vector<double> bias_grid;
  std::vector<double> var_grid;
  double mean_h = 0.0;
  double mean_b = 0.0;
  double mean_a = 0.0;
  double junction_jump_mean = 0.0;
  double mean_mass = 0.0;  // trapezoid mass of the estimate over the grid
  std::map<std::string, std::size_t> warning_counts;
  std::vector<std::string> failure_messages;  // first few, for diagnosis
};

struct ExperimentReport {
  ExperimentConfig config;  // with the resolved grid
  std::vector<double> grid;
  double truncated_lower_mass = 0.0;
  double truncated_tail_mass = 0.0;
  std::vector<RunResult> runs;
};

// Full Monte Carlo protocol: per n, `replications` independent samples,
// rule-of-thumb bandwidths, grid estimation, trapezoid ISE against the
// true pdf. Replication r uses RNG stream r regardless of scheduling, so
// reports are identical for any thread count. Aborts when more than 20%
// of replications fail for one n.
ExperimentReport run_mise_experiment(const ExperimentConfig& cfg,
                                     const EstimateHook& hook = {});

nlohmann::ordered_json report_json(const ExperimentReport& report);

struct BiasVarCell {
  std::size_t n = 0;
  double x = 0.0;
  double emp_bias = 0.0;
  double bias_stderr = 0.0;
  double emp_var = 0.0;
  double var_stderr = 0.0;
  double pred_bias = 0.0;  // NaN when the closed form rejects this x
  double pred_var = 0.0;
};

struct BiasVarReport {
  ExperimentConfig config;
  EstimatorConfig est;
  std::vector<BiasVarCell> cells;
};

// Monte Carlo bias/variance at fixed bandwidths, paired with the
// closed-form first-order predictions under the true density.
// Requires replications >= 100.
BiasVarReport empirical_bias_variance(const ExperimentConfig& cfg,
                                      const std::vector<double>& x_points,
                                      const EstimatorConfig& est,
                                      const EstimateHook& hook = {});

nlohmann::ordered_json bias_variance_json(const BiasVarReport& report);

// Writes <prefix>_bias_n<k>.csv and <prefix>_variance_n<k>.csv with
// header x,empirical,predicted,stderr.
void write_bias_variance_csv(const BiasVarReport& report,
                             const std::string& prefix);

// One expansion-vs-oracle evaluation.
struct ValidationRecord {
  std::string check;
  double x = 0.0;
  double a = 0.0;
  double h_or_b = 0.0;
  double oracle = 0.0;
  double expansion = 0.0;
  double residual = 0.0;
  bool valid = false;  // false: cell skipped, see note
  bool pass = false;   // residual ratio vs the next coarser bandwidth
  std::string note;
};

struct RatioRecord {
  std::string check;
  double x = 0.0;
  double h_coarse = 0.0;
  double h_fine = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

struct FamilySummary {
  std::string check;
  std::size_t ratio_cells = 0;
  std::size_t passed = 0;
  double pass_fraction = 0.0;
  bool discrepancy = false;  // systematic failure, documented in note
  std::string note;
};

struct ValidationReport {
  double a = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double threshold = 0.0;
  std::vector<ValidationRecord> records;
  std::vector<RatioRecord> ratios;
  std::vector<FamilySummary> families;
  std::size_t oracle_failures = 0;  // quadrature nonconvergence count
  bool all_ratios_pass = false;
};

// Compares each first-order expansion against its quadrature or
// closed-form oracle on x_grid x h_grid and judges residual decay by the
// ratio R(h/2)/R(h) <= threshold. Systematic failures become documented
// discrepancy records, never silent fixes.
ValidationReport run_asymptotics_validation(
    const ReferenceDensity& f, double a, double c1, double c2,
    const std::vector<double>& x_grid, const std::vector<double>& h_grid,
    double threshold = 0.6);

nlohmann::ordered_json validation_json(const ValidationReport& report);

nlohmann::ordered_json solution_json(const BandwidthSolution& sol);

}  // namespace gwkde
