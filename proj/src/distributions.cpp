#include "gwkde/distributions.hpp"

#include <algorithm>
#include <array>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <cmath>

#include "gwkde/errors.hpp"
#include "gwkde/rng.hpp"

namespace gwkde {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw config_error(msg);
}

}  // namespace

Distribution make_weibull(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, "weibull needs shape, scale > 0");
  return {DistKind::weibull, shape, scale};
}

Distribution make_pareto(double alpha, double xm) {
  require(alpha > 0.0 && xm > 0.0, "pareto needs alpha, xm > 0");
  return {DistKind::pareto, alpha, xm};
}

Distribution make_lognormal(double mu, double sigma) {
  require(sigma > 0.0, "lognormal needs sigma > 0");
  return {DistKind::lognormal, mu, sigma};
}

Distribution make_gamma_dist(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, "gamma needs shape, scale > 0");
  return {DistKind::gamma, shape, scale};
}

Distribution make_burr(double c, double k) {
  require(c > 0.0 && k > 0.0, "burr needs c, k > 0");
  return {DistKind::burr, c, k};
}

Distribution make_half_cauchy(double scale) {
  require(scale > 0.0, "half_cauchy needs scale > 0");
  return {DistKind::half_cauchy, scale, 0.0};
}

DistKind parse_dist_kind(const std::string& name) {
  if (name == "weibull") return DistKind::weibull;
  if (name == "pareto") return DistKind::pareto;
  if (name == "lognormal") return DistKind::lognormal;
  if (name == "gamma") return DistKind::gamma;
  if (name == "burr") return DistKind::burr;
  if (name == "half_cauchy") return DistKind::half_cauchy;
  throw config_error("unknown distribution: " + name);
}

std::string dist_name(const Distribution& d) {
  switch (d.kind) {
    case DistKind::weibull: return "weibull";
    case DistKind::pareto: return "pareto";
    case DistKind::lognormal: return "lognormal";
    case DistKind::gamma: return "gamma";
    case DistKind::burr: return "burr";
    case DistKind::half_cauchy: return "half_cauchy";
  }
  return "unknown";
}

double dist_quantile(const Distribution& d, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw domain_error("quantile needs u in (0,1)");
  }
  switch (d.kind) {
    case DistKind::weibull:
      return d.p2 * std::pow(-std::log1p(-u), 1.0 / d.p1);
    case DistKind::pareto:
      return d.p2 * std::exp(-std::log1p(-u) / d.p1);
    case DistKind::lognormal:
      return boost::math::quantile(
          boost::math::lognormal_distribution<double>(d.p1, d.p2), u);
    case DistKind::gamma:
      return boost::math::quantile(
          boost::math::gamma_distribution<double>(d.p1, d.p2), u);
    case DistKind::burr:
      return std::pow(std::pow(1.0 - u, -1.0 / d.p2) - 1.0, 1.0 / d.p1);
    case DistKind::half_cauchy:
      return d.p1 * std::tan(M_PI * u / 2.0);
  }
  throw config_error("unknown distribution kind");
}

double dist_pdf(const Distribution& d, double x) {
  if (x <= 0.0 && d.kind != DistKind::pareto) return 0.0;
  switch (d.kind) {
    case DistKind::weibull: {
      const double t = x / d.p2;
      return d.p1 / d.p2 * std::pow(t, d.p1 - 1.0) *
             std::exp(-std::pow(t, d.p1));
    }
    case DistKind::pareto:
      if (x < d.p2) return 0.0;
      return d.p1 * std::pow(d.p2, d.p1) / std::pow(x, d.p1 + 1.0);
    case DistKind::lognormal:
      return boost::math::pdf(
          boost::math::lognormal_distribution<double>(d.p1, d.p2), x);
    case DistKind::gamma:
      return boost::math::pdf(
          boost::math::gamma_distribution<double>(d.p1, d.p2), x);
    case DistKind::burr: {
      const double xc = std::pow(x, d.p1);
      return d.p1 * d.p2 * std::pow(x, d.p1 - 1.0) /
             std::pow(1.0 + xc, d.p2 + 1.0);
    }
    case DistKind::half_cauchy:
      return 2.0 / (M_PI * d.p1 * (1.0 + x * x / (d.p1 * d.p1)));
  }
  throw config_error("unknown distribution kind");
}

double dist_cdf(const Distribution& d, double x) {
  if (x <= 0.0 && d.kind != DistKind::pareto) return 0.0;
  switch (d.kind) {
    case DistKind::weibull:
      return -std::expm1(-std::pow(x / d.p2, d.p1));
    case DistKind::pareto:
      if (x < d.p2) return 0.0;
      return 1.0 - std::pow(d.p2 / x, d.p1);
    case DistKind::lognormal:
      return boost::math::cdf(
          boost::math::lognormal_distribution<double>(d.p1, d.p2), x);
    case DistKind::gamma:
      return boost::math::cdf(
          boost::math::gamma_distribution<double>(d.p1, d.p2), x);
    case DistKind::burr:
      return 1.0 - std::pow(1.0 + std::pow(x, d.p1), -d.p2);
    case DistKind::half_cauchy:
      return 2.0 / M_PI * std::atan(x / d.p1);
  }
  throw config_error("unknown distribution kind");
}

ReferenceDensity true_density(const Distribution& d) {
  switch (d.kind) {
    case DistKind::weibull:
      return make_weibull_reference(d.p1, d.p2);
    case DistKind::gamma:
      return make_gamma_reference(d.p1, d.p2);
    case DistKind::pareto: {
      const double alpha = d.p1, xm = d.p2;
      ReferenceDensity r;
      r.name = "pareto";
      r.pdf = [d](double y) { return dist_pdf(d, y); };
      // Power law alpha*xm^alpha*y^(-alpha-1) on y >= xm; zero below.
      auto deriv = [alpha, xm](double y, int order) -> double {
        if (y < xm) return 0.0;
        double c = alpha * std::pow(xm, alpha);
        double e = -(alpha + 1.0);
        for (int j = 0; j < order; ++j) {
          c *= e;
          e -= 1.0;
        }
        return c * std::pow(y, e);
      };
      r.d1 = [deriv](double y) { return deriv(y, 1); };
      r.d2 = [deriv](double y) { return deriv(y, 2); };
      r.d3 = [deriv](double y) { return deriv(y, 3); };
      return r;
    }
    case DistKind::lognormal: {
      const double mu = d.p1, sg = d.p2;
      ReferenceDensity r;
      r.name = "lognormal";
      // f = exp(g), g = -ln y - ln(sigma sqrt(2 pi)) - (ln y - mu)^2 /
      // (2 sigma^2); chain-rule derivatives from g', g'', g'''.
      auto parts = [mu, sg, d](double y) {
        const double f = dist_pdf(d, y);
        const double z = std::log(y) - mu;
        const double s2 = sg * sg;
        const double g1 = (-1.0 - z / s2) / y;
        const double g2 = (1.0 + z / s2 - 1.0 / s2) / (y * y);
        const double g3 = (-2.0 - 2.0 * z / s2 + 3.0 / s2) / (y * y * y);
        return std::array<double, 4>{f, g1, g2, g3};
      };
      r.pdf = [d](double y) { return dist_pdf(d, y); };
      r.d1 = [parts](double y) {
        if (y <= 0.0) return 0.0;
        auto p = parts(y);
        return p[1] * p[0];
      };
      r.d2 = [parts](double y) {
        if (y <= 0.0) return 0.0;
        auto p = parts(y);
        return (p[2] + p[1] * p[1]) * p[0];
      };
      r.d3 = [parts](double y) {
        if (y <= 0.0) return 0.0;
        auto p = parts(y);
        return (p[3] + 3.0 * p[1] * p[2] + p[1] * p[1] * p[1]) * p[0];
      };
      return r;
    }
    default:
      throw config_error("true_density not provided for " + dist_name(d));
  }
}

std::vector<double> draw(const Distribution& d, std::size_t n,
                         std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(dist_quantile(d, rng.uniform(i)));
  }
  return out;
}

Sample sample_heavy_tailed(const Distribution& d, std::size_t n,
                           std::uint64_t seed, std::uint64_t stream) {
  return Sample(draw(d, n, seed, stream));
}

double ks_statistic(const std::vector<double>& values,
                    const Distribution& d) {
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double c = dist_cdf(d, sorted[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    ks = std::max(ks, std::max(std::abs(c - lo), std::abs(hi - c)));
  }
  return ks;
}

}  // namespace gwkde
