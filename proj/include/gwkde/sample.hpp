#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gwkde {

// Immutable nonnegative data sample with the summary statistics the
// estimator and bandwidth selector need. Derived quantities are computed
// once at construction.
class Sample {
public:
  // Requires n >= 2, all values finite and >= 0.
  explicit Sample(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& sorted() const { return sorted_; }

  // Strictly positive observations and their cached natural logs, in the
  // original relative order. Zeros are counted separately so kernel sums
  // can apply the exact y = 0 limits instead of evaluating log 0.
  const std::vector<double>& positive() const { return positive_; }
  const std::vector<double>& positive_logs() const { return positive_logs_; }
  std::size_t zero_count() const { return zero_count_; }

  double mean() const { return mean_; }
  // Population variance (divides by n).
  double variance() const { return variance_; }
  double median() const { return median_; }
  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }
  // Linear-interpolation quantile on the sorted sample, p in [0, 1].
  double quantile(double p) const;
  double iqr() const { return quantile(0.75) - quantile(0.25); }

private:
  std::vector<double> values_;
  std::vector<double> sorted_;
  std::vector<double> positive_;
  std::vector<double> positive_logs_;
  std::size_t zero_count_ = 0;
  double mean_ = 0.0;
  double variance_ = 0.0;
  double median_ = 0.0;
};

// Reads one value per line; '#' starts a comment, blank lines are skipped.
// Throws config_error with a line number on malformed content or if fewer
// than two values remain.
Sample load_sample(const std::string& path);

}  // namespace gwkde
