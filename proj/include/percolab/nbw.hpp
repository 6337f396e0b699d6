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
#include <span>
#include <vector>

namespace percolab {

// Non-backtracking walk on {0,1}^m lumped onto (Hamming weight, direction of
// the last flip). Coordinate permutations fixing the origin act transitively
// on each weight class, so the time-t law is uniform within a class and the
// lumped chain is exact.
enum class StepDirection { up, down };

struct LumpedState {
  int weight = 0;
  StepDirection last_step = StepDirection::up;
};

// Table q[t][w] = P(N_t = w) for a walk started fresh at the origin,
// t = 0..horizon, w = 0..m.
class NbwKernel {
 public:
  NbwKernel(int m, int horizon);

  int dimension() const noexcept { return m_; }
  int horizon() const noexcept { return horizon_; }

  double weight_probability(int t, int w) const;
  std::span<const double> row(int t) const;

 private:
  int m_;
  int horizon_;
  std::vector<double> table_;
};

NbwKernel nbw_kernel(int m, int horizon);

// p^t(0, y) for any y of weight w.
double nbw_point_prob(const NbwKernel& kernel, int t, int w);

// Number of non-backtracking paths of length t >= 1 from the origin to a fixed
// vertex of weight w, i.e. m (m-1)^(t-1) p^t(0, y), rounded. Throws
// NumericError when the real value is more than 1e-6 (relative) away from an
// integer.
double nb_path_count(const NbwKernel& kernel, int t, int w);

struct MixingReport {
  int m = 0;
  double slack = 0.0;
  int t_mix = 0;
  // trace[t] = V * max_y (p^t(0,y) + p^{t+1}(0,y)) / 2 for t = 0..t_mix.
  std::vector<double> trace;
};

// Default horizon cap 64 * m * ceil(ln m).
int default_mixing_horizon(int m);

// Smallest t with V * max_y (p^t(0,y) + p^{t+1}(0,y)) / 2 <= 1 + slack.
// horizon_cap <= 0 selects default_mixing_horizon(m). Throws ConvergenceError
// when the cap is reached first.
MixingReport uniform_mixing_time(int m, double slack, int horizon_cap = 0);

// [p (m-1)]^t_mix.
double condition2(int m, double p, int t_mix);

// For each weight class w of y (x fixed at the origin), the sum over u, v and
// over t1, t2, t3 in [0, t_mix] with t1 + t2 + t3 >= 3 of
// p^t1(x,u) p^t2(u,v) p^t3(v,y). Vertex sums are done in the weight domain
// through intersection numbers; requires m <= 64.
std::vector<double> condition3_profile(int m, int t_mix);
// Maximum of condition3_profile over the classes.
double condition3(int m, int t_mix);

// sum_{t=1}^{t_mix} [(m-1)p]^{2t} p^{2t}(0, e_{1,1}).
double lace_sum_even(int m, double p, int t_mix);
// sum_{t=3}^{2 t_mix} 2 floor(t/2) [(m-1)p]^t p^t(0, e_1).
double lace_sum_odd(int m, double p, int t_mix);

// sup_{t0 <= t <= t_max} p^{2t}(0, e_{1,1}) * m^{t0+1}: the empirical decay
// constant for the even-time return to a weight-2 vertex.
double nbw_decay_constant(int m, int t0, int t_max);

}  // namespace percolab
