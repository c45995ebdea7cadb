#pragma once

#include <stdexcept>
#include <string>

namespace gwkde {

// Base for every library error. Catching gwkde::error catches them all.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A scalar argument is outside the mathematical domain of an operation.
class domain_error : public error {
public:
  explicit domain_error(const std::string& what) : error(what) {}
};

// A kernel shape parameter came out nonpositive for the given x and
// bandwidth, so no valid kernel exists at that point.
class invalid_shape_error : public error {
public:
  invalid_shape_error(const std::string& branch, double shape, double x,
                      double bandwidth)
      : error("invalid " + branch + " kernel shape " + std::to_string(shape) +
              " at x=" + std::to_string(x) +
              " with bandwidth " + std::to_string(bandwidth)),
        branch_(branch), shape_(shape), x_(x), bandwidth_(bandwidth) {}
  const std::string& branch() const { return branch_; }
  double shape() const { return shape_; }
  double x() const { return x_; }
  double bandwidth() const { return bandwidth_; }

private:
  std::string branch_;
  double shape_, x_, bandwidth_;
};

// A denominator vanished. Carries the name of the vanishing factor.
class singular_error : public error {
public:
  explicit singular_error(const std::string& factor)
      : error("singular factor: " + factor), factor_(factor) {}
  const std::string& factor() const { return factor_; }

private:
  std::string factor_;
};

// Sample cannot support inference (zero spread, too few points).
class degenerate_sample_error : public error {
public:
  explicit degenerate_sample_error(const std::string& what) : error(what) {}
};

// Numerical integration failed to reach the requested tolerance.
class oracle_error : public error {
public:
  explicit oracle_error(const std::string& what) : error(what) {}
};

// The requested integral does not converge for these parameters.
class divergence_error : public error {
public:
  explicit divergence_error(const std::string& what) : error(what) {}
};

// Malformed input file, option value, or configuration.
class config_error : public error {
public:
  explicit config_error(const std::string& what) : error(what) {}
};

}  // namespace gwkde
