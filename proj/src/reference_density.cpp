#include "gwkde/reference_density.hpp"

#include <cmath>
#include <string>

#include "gwkde/errors.hpp"
#include "gwkde/specfun.hpp"

namespace gwkde {

namespace {

// For f = exp(g): f' = g' f, f'' = (g'' + g'^2) f,
// f''' = (g''' + 3 g' g'' + g'^3) f.
struct LogDerivs {
  double f, g1, g2, g3;
};

double chain1(const LogDerivs& d) { return d.g1 * d.f; }
double chain2(const LogDerivs& d) { return (d.g2 + d.g1 * d.g1) * d.f; }
double chain3(const LogDerivs& d) {
  return (d.g3 + 3.0 * d.g1 * d.g2 + d.g1 * d.g1 * d.g1) * d.f;
}

}  // namespace

ReferenceDensity make_gamma_reference(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw config_error("gamma reference needs shape > 0 and scale > 0");
  }
  const double lognorm = shape * std::log(scale) + specfun::ln_gamma(shape);
  auto ld = [shape, scale, lognorm](double y) -> LogDerivs {
    const double f =
        std::exp((shape - 1.0) * std::log(y) - y / scale - lognorm);
    const double g1 = (shape - 1.0) / y - 1.0 / scale;
    const double g2 = -(shape - 1.0) / (y * y);
    const double g3 = 2.0 * (shape - 1.0) / (y * y * y);
    return {f, g1, g2, g3};
  };
  ReferenceDensity r;
  r.name = "gamma(" + std::to_string(shape) + "," + std::to_string(scale) + ")";
  r.pdf = [ld](double y) { return y > 0.0 ? ld(y).f : 0.0; };
  r.d1 = [ld](double y) { return y > 0.0 ? chain1(ld(y)) : 0.0; };
  r.d2 = [ld](double y) { return y > 0.0 ? chain2(ld(y)) : 0.0; };
  r.d3 = [ld](double y) { return y > 0.0 ? chain3(ld(y)) : 0.0; };
  return r;
}

ReferenceDensity make_weibull_reference(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw config_error("weibull reference needs shape > 0 and scale > 0");
  }
  auto ld = [shape, scale](double y) -> LogDerivs {
    const double t = y / scale;
    const double tk = std::pow(t, shape);
    const double f = (shape / scale) * std::pow(t, shape - 1.0) * std::exp(-tk);
    // g = const + (shape-1) ln y - (y/scale)^shape.
    const double g1 = (shape - 1.0) / y - shape * tk / y;
    const double g2 =
        -(shape - 1.0) / (y * y) - shape * (shape - 1.0) * tk / (y * y);
    const double g3 = 2.0 * (shape - 1.0) / (y * y * y) -
                      shape * (shape - 1.0) * (shape - 2.0) * tk / (y * y * y);
    return {f, g1, g2, g3};
  };
  ReferenceDensity r;
  r.name =
      "weibull(" + std::to_string(shape) + "," + std::to_string(scale) + ")";
  r.pdf = [ld](double y) { return y > 0.0 ? ld(y).f : 0.0; };
  r.d1 = [ld](double y) { return y > 0.0 ? chain1(ld(y)) : 0.0; };
  r.d2 = [ld](double y) { return y > 0.0 ? chain2(ld(y)) : 0.0; };
  r.d3 = [ld](double y) { return y > 0.0 ? chain3(ld(y)) : 0.0; };
  return r;
}

ReferenceDensity with_fd_derivatives(const ReferenceDensity& f, double step) {
  if (!(step > 0.0)) throw config_error("fd step must be positive");
  ReferenceDensity r;
  r.name = f.name + "+fd";
  r.full_real_support = f.full_real_support;
  auto pdf = f.pdf;
  r.pdf = pdf;
  r.d1 = [pdf, step](double y) {
    return (pdf(y + step) - pdf(y - step)) / (2.0 * step);
  };
  r.d2 = [pdf, step](double y) {
    return (pdf(y + step) - 2.0 * pdf(y) + pdf(y - step)) / (step * step);
  };
  r.d3 = [pdf, step](double y) {
    return (pdf(y + 2.0 * step) - 2.0 * pdf(y + step) + 2.0 * pdf(y - step) -
            pdf(y - 2.0 * step)) /
           (2.0 * step * step * step);
  };
  return r;
}

}  // namespace gwkde
