#pragma once

namespace gwkde {

// Parameters of the piecewise estimator. The gamma branch covers
// x in [0, a] with bandwidth h; the Weibull branch covers x > a with
// bandwidth b. The two bandwidths are tied by h = b * c2 / c1 so the
// branch shapes agree at the junction x = a.
struct EstimatorConfig {
  double a;   // junction point, > 0
  double c1;  // gamma-branch shape slope, < 0
  double c2;  // Weibull-branch shape slope, < 0
  double b;   // Weibull-branch bandwidth, > 0
  double h;   // gamma-branch bandwidth, derived
};

// Validates parameters and derives h. Throws config_error on violation.
EstimatorConfig make_config(double a, double c1, double c2, double b);

// Gamma-branch kernel shape (x + c1 h) / a. Requires x in [0, a].
// Throws invalid_shape_error when the result is not positive.
double rho_shape(double x, const EstimatorConfig& cfg);

// Weibull-branch kernel shape (x + c2 b) / a. Requires x > a.
double k_shape(double x, const EstimatorConfig& cfg);

// Gamma kernel density at observation y for evaluation point x in [0, a]:
// gamma pdf with shape rho_shape(x) and scale a. At y = 0 the exact limit
// is used: +inf for shape < 1, 1/a at shape == 1, 0 for shape > 1.
double gamma_kernel(double y, double x, const EstimatorConfig& cfg);

// Weibull kernel density at observation y for x > a: Weibull pdf with
// shape k_shape(x) and scale a, with the same y = 0 limit convention.
double weibull_kernel(double y, double x, const EstimatorConfig& cfg);

}  // namespace gwkde
