// Copyright 2026 The Percolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "percolab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "percolab/error.hpp"

namespace percolab {

void RunningStats::merge(const RunningStats& other) noexcept {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double total = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  n_ += other.n_;
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
}

double RunningStats::variance() const noexcept {
  return n_ < 2 ? 0.0 : std::max(0.0, m2_ / static_cast<double>(n_ - 1));
}

Estimate RunningStats::estimate() const noexcept {
  Estimate e;
  e.n = n_;
  if (n_ == 0) return e;
  e.mean = mean_;
  e.std_error = std::sqrt(variance() / static_cast<double>(n_));
  e.min = min_;
  e.max = max_;
  return e;
}

Estimate estimate_of(const std::vector<double>& values) {
  RunningStats stats;
  for (double v : values) stats.add(v);
  return stats.estimate();
}

double median(std::vector<double> values) {
  if (values.empty()) throw ConfigError("median of an empty sample");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double fraction_within(const std::vector<double>& values, double lo, double hi) {
  if (values.empty()) return 0.0;
  const auto inside = std::count_if(values.begin(), values.end(),
                                    [&](double v) { return v >= lo && v <= hi; });
  return static_cast<double>(inside) / static_cast<double>(values.size());
}

}  // namespace percolab
