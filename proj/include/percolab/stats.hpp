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

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace percolab {

// Monte Carlo scalar: statistics of n i.i.d. trial outputs.
// std_error = sample standard deviation / sqrt(n).
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  double min = 0.0;
  double max = 0.0;
  // Set when trials were truncated, so mean bounds the target from below.
  bool lower_bound = false;
};

// Welford accumulator with Chan's pairwise merge. Merging blocks in a fixed
// order gives bit-identical results whatever the thread count.
class RunningStats {
 public:
  void add(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
    if (x < min_) min_ = x;
    if (x > max_) max_ = x;
  }

  void merge(const RunningStats& other) noexcept;

  std::uint64_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept;  // sample variance, 0 when n < 2
  Estimate estimate() const noexcept;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
};

Estimate estimate_of(const std::vector<double>& values);

// Median of a non-empty sample (mean of the two middle values for even n).
double median(std::vector<double> values);

// Fraction of values inside [lo, hi].
double fraction_within(const std::vector<double>& values, double lo, double hi);

}  // namespace percolab
