#pragma once

#include <cstddef>
#include <vector>

#include "gwkde/kernels.hpp"
#include "gwkde/sample.hpp"

namespace gwkde {

// Estimated density over an increasing grid. junction_index is the first
// index whose point lies strictly beyond the branch split a (equal to
// points.size() when the grid never crosses it).
struct DensityGrid {
  std::vector<double> points;
  std::vector<double> values;
  std::size_t junction_index = 0;
};

// Counters surfaced by estimation. Zero observations cannot be weighted
// by a singular kernel (shape < 1 diverges at the origin), so they are
// skipped and counted here; the divisor stays the full sample size.
struct EstimateStats {
  std::size_t skipped_zero_observations = 0;
};

// Pointwise estimate: mean kernel weight of the sample at x, gamma branch
// for x in [0, a], Weibull branch for x > a. Throws invalid_shape_error
// when the branch shape is nonpositive at x.
double estimate_at(double x, const Sample& sample, const EstimatorConfig& cfg,
                   EstimateStats* stats = nullptr);

// Vectorized estimate over a strictly increasing nonnegative grid.
DensityGrid estimate_grid(const std::vector<double>& points,
                          const Sample& sample, const EstimatorConfig& cfg,
                          EstimateStats* stats = nullptr);

// Continuity defect at the branch split: |f^(a) - f^(a + eps)| with the
// gamma branch on the left and Weibull on the right. Requires
// 0 < eps < a/10.
double junction_jump(const Sample& sample, const EstimatorConfig& cfg,
                     double eps);

// Trapezoid integral of a DensityGrid, the mass diagnostic used by
// experiments.
double grid_mass(const DensityGrid& grid);

}  // namespace gwkde
