#include "gwkde/kernel_sum.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace gwkde::simd {

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_available() {
#if defined(GWKDE_BUILD_AVX2) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Backend initial_backend() {
  if (const char* env = std::getenv("GWKDE_BACKEND")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_available()) {
      return Backend::avx2;
    }
    return Backend::scalar;
  }
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_state() {
  static std::atomic<Backend> state{initial_backend()};
  return state;
}

}  // namespace

Backend active_backend() { return backend_state().load(); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
  backend_state().store(b);
}

double gamma_log_sum(const double* logy, const double* y, std::size_t n,
                     double rm1, double inv_a, double c) {
#if defined(GWKDE_BUILD_AVX2)
  if (active_backend() == Backend::avx2) {
    return detail::gamma_log_sum_avx2(logy, y, n, rm1, inv_a, c);
  }
#endif
  return detail::gamma_log_sum_scalar(logy, y, n, rm1, inv_a, c);
}

double weibull_log_sum(const double* logy, std::size_t n, double k,
                       double log_a) {
#if defined(GWKDE_BUILD_AVX2)
  if (active_backend() == Backend::avx2) {
    return detail::weibull_log_sum_avx2(logy, n, k, log_a);
  }
#endif
  return detail::weibull_log_sum_scalar(logy, n, k, log_a);
}

}  // namespace gwkde::simd
