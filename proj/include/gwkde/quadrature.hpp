#pragma once

#include <functional>

#include "gwkde/reference_density.hpp"

namespace gwkde {

namespace quadrature {

// Adaptive integration of fn over the finite interval [lo, hi]. Throws
// oracle_error when the error estimate exceeds max(abs_tol, rel_tol*|I|).
double integrate(const std::function<double(double)>& fn, double lo,
                 double hi, double abs_tol, double rel_tol);

}  // namespace quadrature

namespace asym {

enum class Branch { gamma, weibull };

// E f(Y) for Y ~ Gamma(shape, scale), by quadrature after the
// substitution u = y^shape, which removes the y^(shape-1) endpoint
// singularity; absolute tolerance 1e-10.
double gamma_weighted_moment(double shape, double scale,
                             const ReferenceDensity& f);

// E f(Y) for Y ~ Weibull(shape, scale) via u = (y/scale)^shape.
double weibull_weighted_moment(double shape, double scale,
                               const ReferenceDensity& f);

// Ground-truth gamma-branch expectation E f(xi_x) at shape (x+c1 h)/a,
// scale a. Invalid (nonpositive) shape raises invalid_shape_error.
double exact_gamma_moment_oracle(double x, double h, double a, double c1,
                                 const ReferenceDensity& f);

// Ground-truth Weibull-branch expectation E f(eta_x) at shape
// (x + c2 b)/a, scale a.
double exact_weibull_moment_oracle(double x, double b, double a, double c2,
                                   const ReferenceDensity& f);

// Ground-truth squared-kernel moment E K^2(x) weighted by f, relative
// tolerance 1e-8. Diverges (and throws divergence_error) when the shape
// is <= 1/2 on either branch.
double exact_squared_kernel_oracle(double x, double bandwidth, double a,
                                   double c_const, Branch branch,
                                   const ReferenceDensity& f);

// Upper quantile points used for truncation, exposed for tests.
double gamma_kernel_quantile(double shape, double scale, double p);
double weibull_kernel_quantile(double shape, double scale, double p);

}  // namespace asym

}  // namespace gwkde
