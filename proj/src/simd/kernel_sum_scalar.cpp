#include <cmath>

#include "gwkde/kernel_sum.hpp"

namespace gwkde::simd::detail {

double gamma_log_sum_scalar(const double* logy, const double* y,
                            std::size_t n, double rm1, double inv_a,
                            double c) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += std::exp(rm1 * logy[i] - y[i] * inv_a + c);
  }
  return sum;
}

double weibull_log_sum_scalar(const double* logy, std::size_t n, double k,
                              double log_a) {
  const double km1 = k - 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = logy[i] - log_a;
    sum += std::exp(km1 * l - std::exp(k * l));
  }
  return sum;
}

}  // namespace gwkde::simd::detail
