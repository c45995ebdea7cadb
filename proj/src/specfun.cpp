#include "gwkde/specfun.hpp"

#include <cmath>
#include <string>

#include "gwkde/errors.hpp"

namespace gwkde::specfun {

namespace {

void require_positive(double z, const char* fn) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw domain_error(std::string(fn) + " requires z > 0, got " +
                       std::to_string(z));
  }
}

}  // namespace

double d_const() { return euler_gamma - 1.0 + std::log(2.0); }

double gamma_fn(double z) {
  require_positive(z, "gamma_fn");
  return std::tgamma(z);
}

double ln_gamma(double z) {
  require_positive(z, "ln_gamma");
#if defined(__GLIBC__)
  // lgamma_r avoids the shared signgam global; sign is + for z > 0.
  int sign = 0;
  return ::lgamma_r(z, &sign);
#else
  return std::lgamma(z);
#endif
}

double digamma(double z) {
  require_positive(z, "digamma");
  // Shift into the asymptotic region, then apply the Stirling-type series
  // psi(z) = ln z - 1/(2z) - sum B_2k / (2k z^2k). With z >= 10 the first
  // omitted term (B_16) contributes < 1e-16.
  double acc = 0.0;
  while (z < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  // Coefficients B_2k / 2k for 2k = 2, 4, ..., 14.
  const double series =
      inv2 * (1.0 / 12.0 +
              inv2 * (-1.0 / 120.0 +
                      inv2 * (1.0 / 252.0 +
                              inv2 * (-1.0 / 240.0 +
                                      inv2 * (1.0 / 132.0 +
                                              inv2 * (-691.0 / 32760.0 +
                                                      inv2 * (1.0 / 12.0)))))));
  return acc + std::log(z) - 0.5 * inv - series;
}

}  // namespace gwkde::specfun
