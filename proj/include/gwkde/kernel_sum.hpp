#pragma once

#include <cstddef>

// Inner loops of the estimator: sums of exponentials over all
// observations. A scalar reference implementation always exists; an AVX2
// variant is selected at runtime when compiled in and supported by the
// CPU. Backends must agree within 1e-12 relative error (tested).
namespace gwkde::simd {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);

// True when the AVX2 variant is compiled in and the CPU supports it.
bool avx2_available();

// Backend used by subsequent kernel sums. Defaults to the best available;
// the GWKDE_BACKEND environment variable ("scalar" or "avx2") overrides
// at first use. Requesting avx2 when unavailable falls back to scalar.
Backend active_backend();
void set_backend(Backend b);

// sum_i exp(rm1 * logy[i] - y[i] * inv_a + c)
// (gamma kernel sum in log space; c folds the normalizer).
double gamma_log_sum(const double* logy, const double* y, std::size_t n,
                     double rm1, double inv_a, double c);

// sum_i exp(km1 * (logy[i] - log_a) - exp(k * (logy[i] - log_a)))
// (Weibull kernel sum in log space; caller applies the k/a prefactor).
double weibull_log_sum(const double* logy, std::size_t n, double k,
                       double log_a);

namespace detail {
double gamma_log_sum_scalar(const double* logy, const double* y,
                            std::size_t n, double rm1, double inv_a,
                            double c);
double weibull_log_sum_scalar(const double* logy, std::size_t n, double k,
                              double log_a);
#if defined(GWKDE_BUILD_AVX2)
double gamma_log_sum_avx2(const double* logy, const double* y,
                          std::size_t n, double rm1, double inv_a, double c);
double weibull_log_sum_avx2(const double* logy, std::size_t n, double k,
                            double log_a);
#endif
}  // namespace detail

}  // namespace gwkde::simd
