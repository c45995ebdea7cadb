#include "gwkde/sample.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gwkde/errors.hpp"

namespace gwkde {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw config_error("sample needs at least 2 observations, got " +
                       std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw config_error("sample values must be finite and >= 0, got " +
                         std::to_string(v));
    }
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());

  positive_.reserve(values_.size());
  for (double v : values_) {
    if (v > 0.0) {
      positive_.push_back(v);
    } else {
      ++zero_count_;
    }
  }
  positive_logs_.reserve(positive_.size());
  for (double v : positive_) positive_logs_.push_back(std::log(v));

  const double n = static_cast<double>(values_.size());
  double s = 0.0;
  for (double v : values_) s += v;
  mean_ = s / n;
  double ss = 0.0;
  for (double v : values_) ss += (v - mean_) * (v - mean_);
  variance_ = ss / n;

  const std::size_t m = sorted_.size();
  median_ = (m % 2 == 1) ? sorted_[m / 2]
                         : 0.5 * (sorted_[m / 2 - 1] + sorted_[m / 2]);
}

double Sample::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw domain_error("quantile requires p in [0, 1], got " +
                       std::to_string(p));
  }
  const double pos = p * static_cast<double>(sorted_.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted_.size()) return sorted_.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted_[lo] * (1.0 - frac) + sorted_[lo + 1] * frac;
}

Sample load_sample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open sample file: " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double v;
    if (ls >> v) {
      std::string rest;
      if (ls >> rest) {
        throw config_error(path + ":" + std::to_string(lineno) +
                           ": expected one value per line");
      }
      values.push_back(v);
    } else {
      std::string rest;
      ls.clear();
      ls.str(line);
      if (ls >> rest) {
        throw config_error(path + ":" + std::to_string(lineno) +
                           ": not a number: " + rest);
      }
      // Blank or comment-only line.
    }
  }
  if (values.size() < 2) {
    throw config_error(path + ": needs at least 2 values, found " +
                       std::to_string(values.size()));
  }
  return Sample(std::move(values));
}

}  // namespace gwkde
