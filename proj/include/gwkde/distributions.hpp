#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwkde/reference_density.hpp"
#include "gwkde/sample.hpp"

namespace gwkde {

// Target distributions for the simulation harness. Burr and half-Cauchy
// are provided behind the same interface but are not part of the default
// experiment protocol.
enum class DistKind { weibull, pareto, lognormal, gamma, burr, half_cauchy };

struct Distribution {
  DistKind kind;
  double p1;  // weibull/gamma/burr: shape (burr: c); pareto: alpha;
              // lognormal: mu; half_cauchy: scale
  double p2;  // weibull/gamma: scale; pareto: xm; lognormal: sigma;
              // burr: k; half_cauchy: unused
};

Distribution make_weibull(double shape, double scale);
Distribution make_pareto(double alpha, double xm);
Distribution make_lognormal(double mu, double sigma);
Distribution make_gamma_dist(double shape, double scale);
Distribution make_burr(double c, double k);
Distribution make_half_cauchy(double scale);

// Parses names like "weibull", "pareto", "lognormal", "gamma"; throws
// config_error otherwise.
DistKind parse_dist_kind(const std::string& name);
std::string dist_name(const Distribution& d);

double dist_quantile(const Distribution& d, double u);
double dist_pdf(const Distribution& d, double x);
double dist_cdf(const Distribution& d, double x);

// True density with analytic derivatives, for bias/variance predictions.
ReferenceDensity true_density(const Distribution& d);

// n inverse-transform draws; draw i is a pure function of
// (seed, stream, i).
std::vector<double> draw(const Distribution& d, std::size_t n,
                         std::uint64_t seed, std::uint64_t stream);

Sample sample_heavy_tailed(const Distribution& d, std::size_t n,
                           std::uint64_t seed, std::uint64_t stream);

// Kolmogorov-Smirnov statistic of values against the closed-form CDF.
double ks_statistic(const std::vector<double>& values,
                    const Distribution& d);

}  // namespace gwkde
