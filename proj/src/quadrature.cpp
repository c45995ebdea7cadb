#include "gwkde/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <string>

#include "gwkde/errors.hpp"
#include "gwkde/specfun.hpp"

namespace gwkde {

namespace quadrature {

double integrate(const std::function<double(double)>& fn, double lo,
                 double hi, double abs_tol, double rel_tol) {
  if (!(hi > lo)) {
    throw domain_error("integrate needs hi > lo, got [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
  }
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  double err = 0.0, l1 = 0.0;
  double value = 0.0;
  try {
    value = integrator.integrate(fn, lo, hi, 1e-12, &err, &l1);
  } catch (const std::exception& e) {
    throw oracle_error(std::string("quadrature failed: ") + e.what());
  }
  if (!std::isfinite(value) ||
      err > std::max(abs_tol, rel_tol * std::abs(value))) {
    throw oracle_error("quadrature error estimate " + std::to_string(err) +
                       " exceeds tolerance for value " +
                       std::to_string(value));
  }
  return value;
}

}  // namespace quadrature

namespace asym {

namespace {

constexpr double kTailMass = 1e-12;

void require_shape(double shape, double x, double bandwidth,
                   const char* branch) {
  if (!(shape > 0.0)) {
    throw invalid_shape_error(branch, shape, x, bandwidth);
  }
}

}  // namespace

double gamma_kernel_quantile(double shape, double scale, double p) {
  return scale * boost::math::gamma_p_inv(shape, p);
}

double weibull_kernel_quantile(double shape, double scale, double p) {
  return scale * std::pow(-std::log1p(-p), 1.0 / shape);
}

double gamma_weighted_moment(double shape, double scale,
                             const ReferenceDensity& f) {
  const double q = gamma_kernel_quantile(shape, scale, 1.0 - kTailMass);
  const double ulim = std::pow(q, shape);
  const double inv_shape = 1.0 / shape;
  const double log_pref = -shape * std::log(scale) -
                          specfun::ln_gamma(shape) - std::log(shape);
  const double pref = std::exp(log_pref);
  auto integrand = [&](double u) {
    const double y = std::pow(u, inv_shape);
    return std::exp(-y / scale) * f.pdf(y);
  };
  return pref * quadrature::integrate(integrand, 0.0, ulim, 1e-10 / pref,
                                      1e-10);
}

double weibull_weighted_moment(double shape, double scale,
                               const ReferenceDensity& f) {
  const double ulim = -std::log(kTailMass);
  const double inv_shape = 1.0 / shape;
  auto integrand = [&](double u) {
    return std::exp(-u) * f.pdf(scale * std::pow(u, inv_shape));
  };
  return quadrature::integrate(integrand, 0.0, ulim, 1e-10, 1e-10);
}

double exact_gamma_moment_oracle(double x, double h, double a, double c1,
                                 const ReferenceDensity& f) {
  const double rho = (x + c1 * h) / a;
  require_shape(rho, x, h, "gamma");
  return gamma_weighted_moment(rho, a, f);
}

double exact_weibull_moment_oracle(double x, double b, double a, double c2,
                                   const ReferenceDensity& f) {
  const double k = (x + c2 * b) / a;
  require_shape(k, x, b, "weibull");
  return weibull_weighted_moment(k, a, f);
}

double exact_squared_kernel_oracle(double x, double bandwidth, double a,
                                   double c_const, Branch branch,
                                   const ReferenceDensity& f) {
  if (branch == Branch::gamma) {
    const double rho = (x + c_const * bandwidth) / a;
    require_shape(rho, x, bandwidth, "gamma");
    const double s = 2.0 * rho - 1.0;
    if (!(s > 0.0)) {
      throw divergence_error(
          "squared gamma kernel integral diverges for shape <= 1/2, got " +
          std::to_string(rho));
    }
    // K^2 has the weight of Gamma(s, a/2); truncate at its upper quantile
    // and substitute w = y^s to regularize the origin.
    const double q = gamma_kernel_quantile(s, a / 2.0, 1.0 - kTailMass);
    const double wlim = std::pow(q, s);
    const double pref = std::exp(-2.0 * rho * std::log(a) -
                                 2.0 * specfun::ln_gamma(rho) - std::log(s));
    const double inv_s = 1.0 / s;
    auto integrand = [&](double w) {
      const double y = std::pow(w, inv_s);
      return std::exp(-2.0 * y / a) * f.pdf(y);
    };
    const double integral =
        quadrature::integrate(integrand, 0.0, wlim, 1e-14 / pref, 1e-8);
    return pref * integral;
  }
  const double k = (x + c_const * bandwidth) / a;
  require_shape(k, x, bandwidth, "weibull");
  const double s = 2.0 * k - 1.0;
  if (!(s > 0.0)) {
    throw divergence_error(
        "squared weibull kernel integral diverges for shape <= 1/2, got " +
        std::to_string(k));
  }
  // v = y/a, then w = v^s; upper limit from exp(-2 v^k) = tail mass.
  const double vlim = std::pow(-std::log(kTailMass) / 2.0, 1.0 / k);
  const double wlim = std::pow(vlim, s);
  const double pref = k * k / (a * s);
  const double k_over_s = k / s;
  const double inv_s = 1.0 / s;
  auto integrand = [&](double w) {
    return std::exp(-2.0 * std::pow(w, k_over_s)) *
           f.pdf(a * std::pow(w, inv_s));
  };
  const double integral =
      quadrature::integrate(integrand, 0.0, wlim, 1e-14 / pref, 1e-8);
  return pref * integral;
}

}  // namespace asym

}  // namespace gwkde
