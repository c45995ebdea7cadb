#pragma once

#include <utility>

#include "gwkde/reference_density.hpp"

// Closed-form small-bandwidth expansion coefficients of the estimator's
// bias and variance on both branches, plus the expansion evaluators the
// validation suite compares against quadrature ground truth. All formulas
// are transcribed verbatim from their source; fidelity is checked by the
// convergence tests, and systematic deviations are reported, not patched.
namespace gwkde::asym {

// Expansion coefficients at one evaluation point. Gamma-branch fields are
// populated for x <= a, Weibull-branch fields for x > a; the fields of the
// other branch are NaN. t and r are always 1 + a/x and 1 + 2a/x.
struct AsymptoticTerms {
  double c1_term, c2_term;
  double b1_term, b2_term;
  double a1_term, a2_term;
  double d1_term, d2_term;
  double t, r;
};

// Gamma-branch bias coefficients: bias = C1 + h*C2 + o(h), x in (0, a].
std::pair<double, double> bias_gamma_C1_C2(double x, double a, double c1,
                                           const ReferenceDensity& f);

// The factor multiplying c1 inside C2 (C2 = c1 * bias_factor_gamma).
double bias_factor_gamma(double x, double a, const ReferenceDensity& f);

// Weibull-branch bias coefficients: bias = B1 + b*B2 + o(b), x > a.
std::pair<double, double> bias_weibull_B1_B2(double x, double a, double c2,
                                             const ReferenceDensity& f);

// The factor multiplying c2 inside B2 (B2 = c2 * bias_factor_weibull).
double bias_factor_weibull(double x, double a, const ReferenceDensity& f);

// Gamma-branch squared-kernel coefficients: E K^2 = A1 + h*A2 + o(h).
// x = a/2 is a pole; x < a/2 evaluates f at a negative argument and is
// rejected unless f.full_real_support.
std::pair<double, double> var_gamma_A1_A2(double x, double a, double c1,
                                          const ReferenceDensity& f);

// The factor multiplying c1 inside A2 (A2 = c1 * var_factor_gamma).
double var_factor_gamma(double x, double a, const ReferenceDensity& f);

// Weibull-branch squared-kernel coefficients: E K^2 = D1 + b*D2 + o(b).
std::pair<double, double> var_weibull_D1_D2(double x, double a, double c2,
                                            const ReferenceDensity& f);

// Same formulas without the x > a branch gate; the bandwidth matching
// condition evaluates them at the junction x = a. Requires x > 0.
std::pair<double, double> bias_weibull_terms(double x, double a, double c2,
                                             const ReferenceDensity& f);
std::pair<double, double> var_weibull_terms(double x, double a, double c2,
                                            const ReferenceDensity& f);

// Matching-condition coefficients; functions of a alone. a = 4 makes a
// denominator ln(a) - 2 ln(2) vanish and raises singular_error.
std::pair<double, double> d21_d22(double a, const ReferenceDensity& f);

// Branch-appropriate coefficients at one point (other branch left NaN).
AsymptoticTerms terms_at(double x, double a, double c1, double c2,
                         const ReferenceDensity& f);

// First-order expansion of the gamma-branch expectation E f(xi_x):
// f(x) + f'(x) c1 h + (a (x + c1 h)/2)(f''(x) + f'''(x) c1 h).
double gamma_moment_expansion(double x, double h, double a, double c1,
                              const ReferenceDensity& f);

// First-order expansion of the Weibull-branch expectation E f(eta_x),
// built from the expanded mean and variance below.
double weibull_moment_expansion(double x, double b, double a, double c2,
                                const ReferenceDensity& f);

// Exact mean a*Gamma(1 + 1/k) of the Weibull kernel at shape k(x,b).
double weibull_mean_exact(double x, double b, double a, double c2);

// Its first-order expansion a*Gamma(t) - b (a^2 c2 / x^2) Gamma(t) Psi(t).
double weibull_mean_expansion(double x, double b, double a, double c2);

// Exact variance a^2 (Gamma(1 + 2/k) - Gamma^2(1 + 1/k)).
double weibull_var_exact(double x, double b, double a, double c2);

// The variance as printed in the source derivation, which squares the
// difference of gamma factors: a^2 (Gamma(1 + 2/k) - Gamma(1 + 1/k))^2.
// Kept separate so the validation suite can document the difference.
double weibull_var_printed(double x, double b, double a, double c2);

// First-order expansion of the printed variance form.
double weibull_var_expansion(double x, double b, double a, double c2);

// Squared-gamma-kernel normalizer Gamma(2 rho - 1) / (a Gamma^2(rho)
// 2^(2 rho - 1)) with rho = (x + c1 h)/a, evaluated through ln_gamma.
// Needs 2 rho - 1 > 0.
double squared_norm_direct(double x, double h, double a, double c1);

// Its small-h expansion -sqrt(x)/(sqrt(a)(a-2x)) - h c1 (a+2x)/(2
// sqrt(ax)(a-2x)^2). Pole at x = a/2.
double squared_norm_expansion(double x, double h, double a, double c1);

// Expansions entering the Weibull squared-kernel moment: mean and
// variance of the transformed draw, the power-mean factor, and the
// prefactor 4^k k / a^k.
double sq_mean_mx(double x, double a, double b);
double sq_var_mx(double x, double a, double b);
double sq_pow_mx(double x, double a, double b, double c2);
double sq_prefactor(double x, double a, double b, double c2);

}  // namespace gwkde::asym
