#pragma once

#include <string>
#include <vector>

#include "gwkde/reference_density.hpp"
#include "gwkde/sample.hpp"

namespace gwkde {

// Moment-matched gamma reference parameters: kappa_m = variance/mean,
// rho_m = mean^2/variance.
struct PlugInReference {
  double rho_m;
  double kappa_m;
};

// Everything the selection pipeline decided, including raw values before
// any repair, so callers can audit rather than trust.
struct BandwidthDiagnostics {
  double c2_raw = 0.0;      // matching constant before any sign repair
  double b_raw = 0.0;       // tail bandwidth before the positivity floor
  double h_opt_direct = 0.0;  // gamma-branch optimum at x = a, informational
  double h_mismatch = 0.0;    // h_opt_direct - h (the coupling defect)
  bool c2_repaired = false;
  bool floor_used = false;
  std::vector<std::string> warnings;
};

struct BandwidthSolution {
  double a;
  double c1;
  double c2;      // effective (possibly repaired) matching constant
  double h_opt;   // = b_opt * c2 / c1, exactly
  double b_opt;
  double rho_m;
  double kappa_m;
  BandwidthDiagnostics diagnostics;
};

// Method-of-moments gamma fit. Throws degenerate_sample_error when the
// sample variance is zero.
PlugInReference fit_reference(const Sample& sample);

// The gamma ReferenceDensity induced by a plug-in fit.
ReferenceDensity reference_from(const PlugInReference& ref);

// Optimal gamma-branch bandwidth at x for sample size n:
// -C1/C2 - (1/(C2 n))(A2/(2 C2) - C1 - f(x)).
// May be nonpositive; callers decide how to react. C2 = 0 raises
// singular_error. Requires x in (0, a].
double h_opt(double x, double a, double n, double c1,
             const ReferenceDensity& f);

// Optimal Weibull-branch bandwidth at x >= a (the junction evaluation
// x = a is the one the selection pipeline uses):
// -B1/B2 - (1/(B2 n))(D2/(2 B2) - B1 + f(x)). B2 = 0 raises
// singular_error.
double b_opt(double x, double a, double n, double c2,
             const ReferenceDensity& f);

// The same closed forms with externally supplied coefficients.
double h_opt_from_terms(double C1, double C2, double A2, double fx, double n);
double b_opt_from_terms(double B1, double B2, double D2, double fx, double n);

// Matching constant for c2 given a; independent of c1 (the gamma-branch
// factor ratio cancels it). May come out nonnegative; callers must treat
// that as a sign violation. Vanishing denominators raise singular_error
// naming the factor.
double solve_c2(double a, double c1, const ReferenceDensity& f);

// Quadratic pointwise MSE models whose stationary points are h_opt and
// b_opt. Used by the stationarity tests and reported diagnostics.
double mse_model_gamma(double h, double x, double a, double c1, double n,
                       const ReferenceDensity& f);
double mse_model_weibull(double b, double x, double a, double c2, double n,
                         const ReferenceDensity& f);

// Full rule-of-thumb pipeline: fit_reference, solve_c2, b_opt at the
// junction, then h = b * c2/c1. Nonnegative c2 is replaced by -1 with a
// "c2_sign_violation" warning; nonpositive b_opt falls back to
// n^(-2/5) * IQR with a "b_opt_floor" warning. Raw values are kept in
// diagnostics.
BandwidthSolution select_bandwidths(const Sample& sample, double a,
                                    double c1);

}  // namespace gwkde
