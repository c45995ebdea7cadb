#include "gwkde/estimator.hpp"

#include <cmath>
#include <string>

#include "gwkde/errors.hpp"
#include "gwkde/kernel_sum.hpp"
#include "gwkde/specfun.hpp"

namespace gwkde {

namespace {

// Branch-generic body: kernel shape s, contributions of the positive
// observations via the supplied summed value, plus the exact y = 0 kernel
// limit (1/a at shape 1, zero above, skipped-with-counter below since the
// kernel diverges there).
double finalize(double positive_sum, double shape, const Sample& sample,
                const EstimatorConfig& cfg, EstimateStats* stats) {
  double sum = positive_sum;
  if (sample.zero_count() > 0) {
    if (shape == 1.0) {
      sum += static_cast<double>(sample.zero_count()) / cfg.a;
    } else if (shape < 1.0 && stats != nullptr) {
      stats->skipped_zero_observations += sample.zero_count();
    }
  }
  return sum / static_cast<double>(sample.size());
}

}  // namespace

double estimate_at(double x, const Sample& sample, const EstimatorConfig& cfg,
                   EstimateStats* stats) {
  if (!(x >= 0.0)) {
    throw domain_error("estimate_at requires x >= 0, got " +
                       std::to_string(x));
  }
  const auto& logs = sample.positive_logs();
  const auto& pos = sample.positive();
  if (x <= cfg.a) {
    const double rho = rho_shape(x, cfg);
    const double c = -(rho * std::log(cfg.a) + specfun::ln_gamma(rho));
    const double s = simd::gamma_log_sum(logs.data(), pos.data(),
                                         logs.size(), rho - 1.0,
                                         1.0 / cfg.a, c);
    return finalize(s, rho, sample, cfg, stats);
  }
  const double k = k_shape(x, cfg);
  const double s =
      simd::weibull_log_sum(logs.data(), logs.size(), k, std::log(cfg.a));
  return finalize(k / cfg.a * s, k, sample, cfg, stats);
}

DensityGrid estimate_grid(const std::vector<double>& points,
                          const Sample& sample, const EstimatorConfig& cfg,
                          EstimateStats* stats) {
  DensityGrid grid;
  grid.points = points;
  grid.values.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0) ||
        (i > 0 && !(points[i] > points[i - 1]))) {
      throw domain_error(
          "grid points must be nonnegative and strictly increasing");
    }
  }
  grid.junction_index = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] > cfg.a) {
      grid.junction_index = i;
      break;
    }
  }
  for (double p : points) {
    grid.values.push_back(estimate_at(p, sample, cfg, stats));
  }
  return grid;
}

double junction_jump(const Sample& sample, const EstimatorConfig& cfg,
                     double eps) {
  if (!(eps > 0.0 && eps < cfg.a / 10.0)) {
    throw domain_error("junction_jump requires 0 < eps < a/10, got eps=" +
                       std::to_string(eps));
  }
  return std::abs(estimate_at(cfg.a, sample, cfg) -
                  estimate_at(cfg.a + eps, sample, cfg));
}

double grid_mass(const DensityGrid& grid) {
  double mass = 0.0;
  for (std::size_t i = 1; i < grid.points.size(); ++i) {
    mass += 0.5 * (grid.values[i] + grid.values[i - 1]) *
            (grid.points[i] - grid.points[i - 1]);
  }
  return mass;
}

}  // namespace gwkde
