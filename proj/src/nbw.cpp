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

#include "percolab/nbw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "percolab/error.hpp"
#include "percolab/graph.hpp"

namespace percolab {
namespace {

constexpr double kDriftTolerance = 1e-9;

void require_dimension(int m) {
  if (m < 2) throw ConfigError("non-backtracking walk needs m >= 2, got " + std::to_string(m));
}

// Forward evolution of the lumped chain, one row of q at a time.
class LumpedChain {
 public:
  explicit LumpedChain(int m) : m_(m), up_(m + 1, 0.0), down_(m + 1, 0.0) {}

  // Writes the law at t = 0 (a point mass at weight 0).
  void start(std::span<double> row) {
    t_ = 0;
    std::fill(up_.begin(), up_.end(), 0.0);
    std::fill(down_.begin(), down_.end(), 0.0);
    std::fill(row.begin(), row.end(), 0.0);
    row[0] = 1.0;
  }

  // Advances one step and writes the law at the new time.
  void advance(std::span<double> row) {
    if (t_ == 0) {
      up_[1] = 1.0;
    } else {
      const double inv = 1.0 / static_cast<double>(m_ - 1);
      std::vector<double> up(m_ + 1, 0.0);
      std::vector<double> down(m_ + 1, 0.0);
      for (int w = 0; w <= m_; ++w) {
        if (up_[w] != 0.0) {
          if (w >= 1) down[w - 1] += up_[w] * (w - 1) * inv;
          if (w < m_) up[w + 1] += up_[w] * (m_ - w) * inv;
        }
        if (down_[w] != 0.0) {
          if (w >= 1) down[w - 1] += down_[w] * w * inv;
          if (w < m_) up[w + 1] += down_[w] * (m_ - w - 1) * inv;
        }
      }
      up_.swap(up);
      down_.swap(down);
    }
    ++t_;
    double total = 0.0;
    for (int w = 0; w <= m_; ++w) {
      row[w] = up_[w] + down_[w];
      total += row[w];
    }
    if (std::abs(total - 1.0) > kDriftTolerance) {
      throw NumericError("non-backtracking kernel lost normalization at t = " + std::to_string(t_));
    }
  }

 private:
  int m_;
  int t_ = 0;
  std::vector<double> up_;
  std::vector<double> down_;
};

std::vector<double> class_sizes(int m) {
  std::vector<double> sizes(m + 1);
  for (int w = 0; w <= m; ++w) sizes[w] = binomial_real(m, w);
  return sizes;
}

// Radial convolution on Z_2^m in the weight domain:
// (f * h)(w) = sum_{w1, w2} N(w, w1, w2) f(w1) h(w2).
class WeightConvolution {
 public:
  explicit WeightConvolution(int m) : m_(m), table_((m + 1) * (m + 1) * (m + 1)) {
    for (int w = 0; w <= m; ++w)
      for (int w1 = 0; w1 <= m; ++w1)
        for (int w2 = 0; w2 <= m; ++w2)
          table_[index(w, w1, w2)] = static_cast<double>(intersection_number(m, w, w1, w2));
  }

  std::vector<double> operator()(const std::vector<double>& f, const std::vector<double>& h) const {
    std::vector<double> out(m_ + 1, 0.0);
    for (int w = 0; w <= m_; ++w) {
      double acc = 0.0;
      for (int w1 = 0; w1 <= m_; ++w1) {
        if (f[w1] == 0.0) continue;
        double inner = 0.0;
        for (int w2 = 0; w2 <= m_; ++w2) inner += table_[index(w, w1, w2)] * h[w2];
        acc += f[w1] * inner;
      }
      out[w] = acc;
    }
    return out;
  }

 private:
  std::size_t index(int w, int w1, int w2) const {
    return (static_cast<std::size_t>(w) * (m_ + 1) + w1) * (m_ + 1) + w2;
  }

  int m_;
  std::vector<double> table_;
};

}  // namespace

NbwKernel::NbwKernel(int m, int horizon) : m_(m), horizon_(horizon) {
  require_dimension(m);
  if (horizon < 0) throw ConfigError("kernel horizon must be non-negative");
  table_.assign(static_cast<std::size_t>(horizon + 1) * (m + 1), 0.0);
  LumpedChain chain(m);
  chain.start(std::span<double>(table_.data(), m + 1));
  for (int t = 1; t <= horizon; ++t) {
    chain.advance(std::span<double>(table_.data() + static_cast<std::size_t>(t) * (m + 1), m + 1));
  }
}

double NbwKernel::weight_probability(int t, int w) const {
  if (w < 0 || w > m_) throw ConfigError("weight out of range");
  return row(t)[w];
}

std::span<const double> NbwKernel::row(int t) const {
  if (t < 0 || t > horizon_) {
    throw ConfigError("time " + std::to_string(t) + " exceeds kernel horizon " +
                      std::to_string(horizon_));
  }
  return {table_.data() + static_cast<std::size_t>(t) * (m_ + 1), static_cast<std::size_t>(m_ + 1)};
}

NbwKernel nbw_kernel(int m, int horizon) { return NbwKernel(m, horizon); }

double nbw_point_prob(const NbwKernel& kernel, int t, int w) {
  return kernel.weight_probability(t, w) / binomial_real(kernel.dimension(), w);
}

double nb_path_count(const NbwKernel& kernel, int t, int w) {
  if (t < 1) throw ConfigError("path counts need t >= 1");
  const int m = kernel.dimension();
  const double paths = static_cast<double>(m) * std::pow(static_cast<double>(m - 1), t - 1);
  const double value = paths * nbw_point_prob(kernel, t, w);
  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 1e-6 * std::max(1.0, std::abs(value))) {
    throw NumericError("path count " + std::to_string(value) + " is not an integer (m=" +
                       std::to_string(m) + ", t=" + std::to_string(t) + ", w=" + std::to_string(w) + ")");
  }
  return rounded;
}

int default_mixing_horizon(int m) {
  require_dimension(m);
  return 64 * m * static_cast<int>(std::ceil(std::log(static_cast<double>(m))));
}

MixingReport uniform_mixing_time(int m, double slack, int horizon_cap) {
  require_dimension(m);
  if (!(slack > 0.0)) throw ConfigError("mixing slack must be positive");
  const int cap = horizon_cap > 0 ? horizon_cap : default_mixing_horizon(m);
  const double volume = std::ldexp(1.0, m);
  const auto sizes = class_sizes(m);

  MixingReport report{m, slack, 0, {}};
  LumpedChain chain(m);
  std::vector<double> current(m + 1);
  std::vector<double> next(m + 1);
  chain.start(current);
  chain.advance(next);
  for (int t = 0; t <= cap; ++t) {
    double worst = 0.0;
    for (int w = 0; w <= m; ++w) worst = std::max(worst, (current[w] + next[w]) / (2.0 * sizes[w]));
    report.trace.push_back(volume * worst);
    if (volume * worst <= 1.0 + slack) {
      report.t_mix = t;
      return report;
    }
    current.swap(next);
    chain.advance(next);
  }
  throw ConvergenceError("uniform mixing not reached within horizon " + std::to_string(cap) +
                         " (m=" + std::to_string(m) + ", slack=" + std::to_string(slack) + ")");
}

double condition2(int m, double p, int t_mix) {
  return std::pow(p * static_cast<double>(m - 1), t_mix);
}

std::vector<double> condition3_profile(int m, int t_mix) {
  require_dimension(m);
  if (m > 64) throw ConfigError("condition3 supports m <= 64");
  if (t_mix < 0) throw ConfigError("t_mix must be non-negative");
  const NbwKernel kernel(m, t_mix);
  const auto sizes = class_sizes(m);
  auto radial = [&](int t) {
    std::vector<double> f(m + 1);
    const auto row = kernel.row(t);
    for (int w = 0; w <= m; ++w) f[w] = row[w] / sizes[w];
    return f;
  };

  std::vector<double> total(m + 1, 0.0);
  for (int t = 0; t <= t_mix; ++t) {
    const auto f = radial(t);
    for (int w = 0; w <= m; ++w) total[w] += f[w];
  }
  const WeightConvolution convolve(m);
  auto result = convolve(convolve(total, total), total);

  // Remove the (t1, t2, t3) with t1 + t2 + t3 <= 2: (0,0,0), the three
  // permutations of (1,0,0) and (2,0,0), and the three of (1,1,0).
  result[0] -= 1.0;
  if (t_mix >= 1) {
    const auto one = radial(1);
    const auto one_one = convolve(one, one);
    for (int w = 0; w <= m; ++w) result[w] -= 3.0 * one[w] + 3.0 * one_one[w];
  }
  if (t_mix >= 2) {
    const auto two = radial(2);
    for (int w = 0; w <= m; ++w) result[w] -= 3.0 * two[w];
  }
  return result;
}

double condition3(int m, int t_mix) {
  const auto profile = condition3_profile(m, t_mix);
  return *std::max_element(profile.begin(), profile.end());
}

double lace_sum_even(int m, double p, int t_mix) {
  require_dimension(m);
  if (t_mix < 1) return 0.0;
  const NbwKernel kernel(m, 2 * t_mix);
  const double growth = (m - 1) * p;
  double sum = 0.0;
  for (int t = 1; t <= t_mix; ++t) {
    sum += std::pow(growth, 2 * t) * nbw_point_prob(kernel, 2 * t, 2);
  }
  return sum;
}

double lace_sum_odd(int m, double p, int t_mix) {
  require_dimension(m);
  if (2 * t_mix < 3) return 0.0;
  const NbwKernel kernel(m, 2 * t_mix);
  const double growth = (m - 1) * p;
  double sum = 0.0;
  for (int t = 3; t <= 2 * t_mix; ++t) {
    sum += 2.0 * (t / 2) * std::pow(growth, t) * nbw_point_prob(kernel, t, 1);
  }
  return sum;
}

double nbw_decay_constant(int m, int t0, int t_max) {
  require_dimension(m);
  if (t0 < 1 || t_max < t0) throw ConfigError("decay constant needs 1 <= t0 <= t_max");
  const NbwKernel kernel(m, 2 * t_max);
  const double scale = std::pow(static_cast<double>(m), t0 + 1);
  double sup = 0.0;
  for (int t = t0; t <= t_max; ++t) sup = std::max(sup, nbw_point_prob(kernel, 2 * t, 2) * scale);
  return sup;
}

}  // namespace percolab
