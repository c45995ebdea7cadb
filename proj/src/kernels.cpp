#include "gwkde/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gwkde/errors.hpp"
#include "gwkde/specfun.hpp"

namespace gwkde {

EstimatorConfig make_config(double a, double c1, double c2, double b) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw config_error("junction a must be positive, got " +
                       std::to_string(a));
  }
  if (!(c1 < 0.0) || !std::isfinite(c1)) {
    throw config_error("shape slope c1 must be negative, got " +
                       std::to_string(c1));
  }
  if (!(c2 < 0.0) || !std::isfinite(c2)) {
    throw config_error("shape slope c2 must be negative, got " +
                       std::to_string(c2));
  }
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw config_error("bandwidth b must be positive, got " +
                       std::to_string(b));
  }
  EstimatorConfig cfg{a, c1, c2, b, b * (c2 / c1)};
  return cfg;
}

double rho_shape(double x, const EstimatorConfig& cfg) {
  if (!(x >= 0.0 && x <= cfg.a)) {
    throw domain_error("gamma branch requires x in [0, a], got x=" +
                       std::to_string(x) + ", a=" + std::to_string(cfg.a));
  }
  const double rho = (x + cfg.c1 * cfg.h) / cfg.a;
  if (!(rho > 0.0)) throw invalid_shape_error("gamma", rho, x, cfg.h);
  return rho;
}

double k_shape(double x, const EstimatorConfig& cfg) {
  if (!(x > cfg.a)) {
    throw domain_error("Weibull branch requires x > a, got x=" +
                       std::to_string(x) + ", a=" + std::to_string(cfg.a));
  }
  const double k = (x + cfg.c2 * cfg.b) / cfg.a;
  if (!(k > 0.0)) throw invalid_shape_error("weibull", k, x, cfg.b);
  return k;
}

double gamma_kernel(double y, double x, const EstimatorConfig& cfg) {
  if (!(y >= 0.0)) {
    throw domain_error("kernel argument y must be >= 0, got " +
                       std::to_string(y));
  }
  const double rho = rho_shape(x, cfg);
  if (y == 0.0) {
    if (rho < 1.0) return std::numeric_limits<double>::infinity();
    if (rho == 1.0) return 1.0 / cfg.a;
    return 0.0;
  }
  return std::exp((rho - 1.0) * std::log(y) - y / cfg.a -
                  rho * std::log(cfg.a) - specfun::ln_gamma(rho));
}

double weibull_kernel(double y, double x, const EstimatorConfig& cfg) {
  if (!(y >= 0.0)) {
    throw domain_error("kernel argument y must be >= 0, got " +
                       std::to_string(y));
  }
  const double k = k_shape(x, cfg);
  if (y == 0.0) {
    if (k < 1.0) return std::numeric_limits<double>::infinity();
    if (k == 1.0) return 1.0 / cfg.a;
    return 0.0;
  }
  const double l = std::log(y) - std::log(cfg.a);
  return (k / cfg.a) * std::exp((k - 1.0) * l - std::exp(k * l));
}

}  // namespace gwkde
