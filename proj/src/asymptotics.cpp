#include "gwkde/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gwkde/errors.hpp"
#include "gwkde/specfun.hpp"

namespace gwkde::asym {

namespace {

using specfun::digamma;
using specfun::euler_gamma;
using specfun::gamma_fn;
using specfun::ln_gamma;

void require_gamma_branch(double x, double a, const char* op) {
  if (!(a > 0.0)) throw domain_error(std::string(op) + ": a must be > 0");
  if (!(x > 0.0 && x <= a)) {
    throw domain_error(std::string(op) + ": needs x in (0, a], got x=" +
                       std::to_string(x) + ", a=" + std::to_string(a));
  }
}

void require_weibull_branch(double x, double a, const char* op) {
  if (!(a > 0.0)) throw domain_error(std::string(op) + ": a must be > 0");
  if (!(x > a)) {
    throw domain_error(std::string(op) + ": needs x > a, got x=" +
                       std::to_string(x) + ", a=" + std::to_string(a));
  }
}

void require_positive(double v, const char* op, const char* what) {
  if (!(v > 0.0)) {
    throw domain_error(std::string(op) + ": " + what + " must be > 0, got " +
                       std::to_string(v));
  }
}

// Unchecked cores; the junction evaluations of the matching condition
// need the Weibull-side formulas at x = a, which the public branch
// preconditions exclude.

double c1_core(double x, double a, const ReferenceDensity& f) {
  return x * a / 2.0 * f.d2(x);
}

double gamma_bias_factor_core(double x, double a, const ReferenceDensity& f) {
  return f.d1(x) + f.d2(x) * a / 2.0 + f.d3(x) * x * a / 2.0;
}

struct JunctionGammas {
  double gt, gr, pt, pr;  // Gamma(t), Gamma(r), Psi(t), Psi(r)
};

JunctionGammas junction_gammas(double x, double a) {
  const double t = 1.0 + a / x;
  const double r = 1.0 + 2.0 * a / x;
  return {gamma_fn(t), gamma_fn(r), digamma(t), digamma(r)};
}

double b1_core(double x, double a, const ReferenceDensity& f) {
  const auto g = junction_gammas(x, a);
  const double mu = a * g.gt;
  const double diff = g.gt - g.gr;
  return f.pdf(mu) - f.pdf(x) + f.d2(mu) * (a * a / 2.0) * diff * diff;
}

double weibull_bias_factor_core(double x, double a,
                                const ReferenceDensity& f) {
  const auto g = junction_gammas(x, a);
  const double mu = a * g.gt;
  const double diff = g.gt - g.gr;
  const double gtpt = g.gt * g.pt;
  return (a * a) / (x * x) *
         (-f.d1(mu) * gtpt +
          f.d2(mu) * a * (diff * (gtpt - 2.0 * g.gr * g.pr)) -
          f.d3(mu) * (a * a / 2.0) * diff * diff * gtpt);
}

double a1_core(double x, double a, const ReferenceDensity& f) {
  return -f.pdf(x - a / 2.0) * std::sqrt(x) / (std::sqrt(a) * (a - 2.0 * x));
}

double gamma_var_factor_core(double x, double a, const ReferenceDensity& f) {
  const double z = x - a / 2.0;
  const double den = a - 2.0 * x;
  return -(f.pdf(z) * (a + 2.0 * x) / (2.0 * std::sqrt(a * x) * den * den) +
           std::sqrt(x) / (std::sqrt(a) * den) *
               (f.d1(z) + a / 4.0 * z * f.d2(z)));
}

void check_gamma_var_domain(double x, double a, const ReferenceDensity& f,
                            const char* op) {
  if (a - 2.0 * x == 0.0) throw singular_error("a-2x");
  if (x < a / 2.0 && !f.full_real_support) {
    throw domain_error(std::string(op) +
                       ": density argument x - a/2 is negative and the "
                       "density does not declare full real support");
  }
}

double d1_inner(double x, double a, const ReferenceDensity& f) {
  return f.pdf(2.0 * a) * (x * (x - 3.0 * a) / (2.0 * a * a) + 2.0) +
         f.d1(2.0 * a) * (x - a) + f.d2(2.0 * a) * 2.0 * a * a;
}

double d1_core(double x, double a, const ReferenceDensity& f) {
  return x * std::exp2(3.0 * x / a - 1.0) / (a * a) * d1_inner(x, a, f);
}

double d2_core(double x, double a, double c2, const ReferenceDensity& f) {
  const double d = specfun::d_const();
  const double q = 6.0 * euler_gamma - 10.0 - std::log(4.0);
  const double w = d * x * x + a * (c2 - d * x);
  const double a2 = a * a;
  const double a3 = a2 * a;
  const double f0 = f.pdf(2.0 * a);
  const double f1 = f.d1(2.0 * a);
  const double f2 = f.d2(2.0 * a);
  const double term_f0 =
      f0 * ((x - 2.0 * a) * w / (2.0 * a3) + w / a -
            x * (x - a) * (x - 2.0 * a) * q / (2.0 * a3));
  const double term_f1 =
      f1 * (w / a - 2.0 * x * d * (x - 2.0 * a + 1.0) - x * (x - a) * q / a);
  const double term_f2 = f2 * (2.0 * x * (d * (x - a) + 2.0 * a2 + a * q));
  const double extra = c2 * std::exp2(3.0 * x / a - 1.0) / a3 *
                       (-x * std::log(a) + a + 2.0 * x * std::log(2.0)) *
                       d1_inner(x, a, f);
  return x * std::exp2(3.0 * x / a - 1.0) / a2 *
         (term_f0 + term_f1 - term_f2 + extra);
}

double k_of(double x, double b, double a, double c2, const char* op) {
  require_positive(a, op, "a");
  const double k = (x + c2 * b) / a;
  if (!(k > 0.0)) throw invalid_shape_error("weibull", k, x, b);
  return k;
}

}  // namespace

std::pair<double, double> bias_gamma_C1_C2(double x, double a, double c1,
                                           const ReferenceDensity& f) {
  require_gamma_branch(x, a, "bias_gamma_C1_C2");
  return {c1_core(x, a, f), c1 * gamma_bias_factor_core(x, a, f)};
}

double bias_factor_gamma(double x, double a, const ReferenceDensity& f) {
  require_positive(x, "bias_factor_gamma", "x");
  require_positive(a, "bias_factor_gamma", "a");
  return gamma_bias_factor_core(x, a, f);
}

std::pair<double, double> bias_weibull_B1_B2(double x, double a, double c2,
                                             const ReferenceDensity& f) {
  require_weibull_branch(x, a, "bias_weibull_B1_B2");
  return {b1_core(x, a, f), c2 * weibull_bias_factor_core(x, a, f)};
}

double bias_factor_weibull(double x, double a, const ReferenceDensity& f) {
  require_positive(x, "bias_factor_weibull", "x");
  require_positive(a, "bias_factor_weibull", "a");
  return weibull_bias_factor_core(x, a, f);
}

std::pair<double, double> var_gamma_A1_A2(double x, double a, double c1,
                                          const ReferenceDensity& f) {
  require_gamma_branch(x, a, "var_gamma_A1_A2");
  check_gamma_var_domain(x, a, f, "var_gamma_A1_A2");
  return {a1_core(x, a, f), c1 * gamma_var_factor_core(x, a, f)};
}

double var_factor_gamma(double x, double a, const ReferenceDensity& f) {
  require_positive(x, "var_factor_gamma", "x");
  require_positive(a, "var_factor_gamma", "a");
  check_gamma_var_domain(x, a, f, "var_factor_gamma");
  return gamma_var_factor_core(x, a, f);
}

std::pair<double, double> var_weibull_D1_D2(double x, double a, double c2,
                                            const ReferenceDensity& f) {
  require_weibull_branch(x, a, "var_weibull_D1_D2");
  return {d1_core(x, a, f), d2_core(x, a, c2, f)};
}

std::pair<double, double> bias_weibull_terms(double x, double a, double c2,
                                             const ReferenceDensity& f) {
  require_positive(x, "bias_weibull_terms", "x");
  require_positive(a, "bias_weibull_terms", "a");
  return {b1_core(x, a, f), c2 * weibull_bias_factor_core(x, a, f)};
}

std::pair<double, double> var_weibull_terms(double x, double a, double c2,
                                            const ReferenceDensity& f) {
  require_positive(x, "var_weibull_terms", "x");
  require_positive(a, "var_weibull_terms", "a");
  return {d1_core(x, a, f), d2_core(x, a, c2, f)};
}

std::pair<double, double> d21_d22(double a, const ReferenceDensity& f) {
  require_positive(a, "d21_d22", "a");
  const double ln10 = std::log(10.0);
  const double ln5 = std::log(5.0);
  const double ln4 = std::log(4.0);
  const double ln2 = std::log(2.0);
  const double f0 = f.pdf(2.0 * a);
  const double f1 = f.d1(2.0 * a);
  const double f2 = f.d2(2.0 * a);
  const double d21 =
      std::exp2(1.5 * a) *
      (f1 / ln10 * (a - 1.0) * (euler_gamma * ln10 - ln5) +
       f2 * (euler_gamma - 1.0 +
             2.0 * a * a * (ln4 / ln10 - 6.0 * euler_gamma + 10.0) +
             ln2 / ln10));
  const double lndiff = std::log(a) - 2.0 * ln2;
  if (std::abs(lndiff) < 1e-12) throw singular_error("ln(a)-2ln(2)");
  const double d22 =
      std::exp2(1.5 * a - 1.0) *
      (f0 / (a * a) *
           ((2.0 * a - 1.0) / 2.0 + 3.0 * (1.0 - 1.0 / (ln10 * lndiff))) +
       f1 / a + f2 * (1.0 - lndiff / ln10));
  return {d21, d22};
}

AsymptoticTerms terms_at(double x, double a, double c1, double c2,
                         const ReferenceDensity& f) {
  require_positive(x, "terms_at", "x");
  require_positive(a, "terms_at", "a");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  AsymptoticTerms t{nan, nan, nan, nan, nan, nan,
                    nan, nan, 1.0 + a / x, 1.0 + 2.0 * a / x};
  if (x <= a) {
    auto [C1, C2] = bias_gamma_C1_C2(x, a, c1, f);
    t.c1_term = C1;
    t.c2_term = C2;
    auto [A1, A2] = var_gamma_A1_A2(x, a, c1, f);
    t.a1_term = A1;
    t.a2_term = A2;
  } else {
    auto [B1, B2] = bias_weibull_B1_B2(x, a, c2, f);
    t.b1_term = B1;
    t.b2_term = B2;
    auto [D1, D2] = var_weibull_D1_D2(x, a, c2, f);
    t.d1_term = D1;
    t.d2_term = D2;
  }
  return t;
}

double gamma_moment_expansion(double x, double h, double a, double c1,
                              const ReferenceDensity& f) {
  require_positive(a, "gamma_moment_expansion", "a");
  return f.pdf(x) + f.d1(x) * c1 * h +
         a * (x + c1 * h) / 2.0 * (f.d2(x) + f.d3(x) * c1 * h);
}

double weibull_moment_expansion(double x, double b, double a, double c2,
                                const ReferenceDensity& f) {
  require_positive(x, "weibull_moment_expansion", "x");
  require_positive(a, "weibull_moment_expansion", "a");
  const auto g = junction_gammas(x, a);
  const double mu = a * g.gt;
  const double diff = g.gt - g.gr;
  const double gtpt = g.gt * g.pt;
  const double x2 = x * x;
  const double var2 =
      a * a * diff * diff +
      2.0 * a * a * a * c2 * b / x2 * diff * (gtpt - 2.0 * g.gr * g.pr);
  return f.pdf(mu) - f.d1(mu) * (a * a * c2 * gtpt / x2) * b +
         0.5 * var2 * (f.d2(mu) - f.d3(mu) * (a * a * c2 * b / x2) * gtpt);
}

double weibull_mean_exact(double x, double b, double a, double c2) {
  const double k = k_of(x, b, a, c2, "weibull_mean_exact");
  return a * gamma_fn(1.0 + 1.0 / k);
}

double weibull_mean_expansion(double x, double b, double a, double c2) {
  require_positive(x, "weibull_mean_expansion", "x");
  require_positive(a, "weibull_mean_expansion", "a");
  const auto g = junction_gammas(x, a);
  return a * g.gt - b * (a * a * c2 / (x * x)) * g.gt * g.pt;
}

double weibull_var_exact(double x, double b, double a, double c2) {
  const double k = k_of(x, b, a, c2, "weibull_var_exact");
  const double g1 = gamma_fn(1.0 + 1.0 / k);
  const double g2 = gamma_fn(1.0 + 2.0 / k);
  return a * a * (g2 - g1 * g1);
}

double weibull_var_printed(double x, double b, double a, double c2) {
  const double k = k_of(x, b, a, c2, "weibull_var_printed");
  const double g1 = gamma_fn(1.0 + 1.0 / k);
  const double g2 = gamma_fn(1.0 + 2.0 / k);
  return a * a * (g2 - g1) * (g2 - g1);
}

double weibull_var_expansion(double x, double b, double a, double c2) {
  require_positive(x, "weibull_var_expansion", "x");
  require_positive(a, "weibull_var_expansion", "a");
  const auto g = junction_gammas(x, a);
  const double diff = g.gt - g.gr;
  return a * a * diff * diff +
         b * (2.0 * a * a * a * c2 / (x * x)) * diff *
             (g.gt * g.pt - 2.0 * g.gr * g.pr);
}

double squared_norm_direct(double x, double h, double a, double c1) {
  require_positive(a, "squared_norm_direct", "a");
  const double rho = (x + c1 * h) / a;
  const double s = 2.0 * rho - 1.0;
  if (!(s > 0.0)) {
    throw divergence_error(
        "squared kernel normalizer needs shape > 1/2, got " +
        std::to_string(rho));
  }
  return std::exp(ln_gamma(s) - std::log(a) - 2.0 * ln_gamma(rho) -
                  s * std::log(2.0));
}

double squared_norm_expansion(double x, double h, double a, double c1) {
  require_positive(x, "squared_norm_expansion", "x");
  require_positive(a, "squared_norm_expansion", "a");
  const double den = a - 2.0 * x;
  if (den == 0.0) throw singular_error("a-2x");
  return -std::sqrt(x) / (std::sqrt(a) * den) -
         h * c1 * (a + 2.0 * x) / (2.0 * std::sqrt(a * x) * den * den);
}

double sq_mean_mx(double x, double a, double b) {
  return 2.0 * (a - b * x * specfun::d_const());
}

double sq_var_mx(double x, double a, double b) {
  return 4.0 * a * a -
         4.0 * b * a * x * (6.0 * euler_gamma - 10.0 + std::log(4.0));
}

double sq_pow_mx(double x, double a, double b, double c2) {
  return std::pow(2.0 * a, x / a - 1.0) *
         (1.0 + b / a *
                    (c2 * std::log(2.0 * a) +
                     x * specfun::d_const() * (1.0 - x)));
}

double sq_prefactor(double x, double a, double b, double c2) {
  const double p = std::pow(4.0, x / a);
  return x * p * std::pow(a, -x / a - 1.0) +
         c2 * b * p * std::pow(a, -x / a - 2.0) *
             (-x * std::log(a) + a + x * std::log(4.0));
}

}  // namespace gwkde::asym
