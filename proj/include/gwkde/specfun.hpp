#pragma once

namespace gwkde::specfun {

// Euler-Mascheroni constant to double precision.
inline constexpr double euler_gamma = 0.57721566490153286060;

// Recurring constant gamma - 1 + ln 2 used by the squared-tail moments.
double d_const();

// Gamma function on z > 0. Relative accuracy ~1e-14 over [1e-3, 170].
double gamma_fn(double z);

// log Gamma on z > 0, accurate where gamma_fn overflows.
double ln_gamma(double z);

// Digamma (psi) on z > 0. Absolute accuracy ~1e-12 over [1e-3, 1e6].
double digamma(double z);

}  // namespace gwkde::specfun
