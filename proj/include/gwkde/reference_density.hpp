#pragma once

#include <functional>
#include <string>

namespace gwkde {

// Density with its first three derivatives, the interface every
// asymptotic formula consumes. full_real_support marks densities whose
// callables accept negative arguments; the variance formulas on the gamma
// branch evaluate the density at x - a/2, which can be negative.
struct ReferenceDensity {
  std::string name;
  std::function<double(double)> pdf;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::function<double(double)> d3;
  bool full_real_support = false;
};

// Gamma(shape, scale) density; derivatives are analytic. Evaluates to 0
// for arguments <= 0 (shape > 1 assumed for derivative continuity there).
ReferenceDensity make_gamma_reference(double shape, double scale);

// Weibull(shape, scale) density; derivatives are analytic.
ReferenceDensity make_weibull_reference(double shape, double scale);

// Replaces d1/d2/d3 with central finite differences of pdf at the given
// step. Used to cross-check that analytic derivative wiring matches.
ReferenceDensity with_fd_derivatives(const ReferenceDensity& f, double step);

}  // namespace gwkde
