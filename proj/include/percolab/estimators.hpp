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
#include <optional>
#include <string_view>
#include <vector>

#include "percolab/error.hpp"
#include "percolab/graph.hpp"
#include "percolab/percolation.hpp"
#include "percolab/stats.hpp"

namespace percolab {

struct MCConfig {
  std::uint64_t trials = 10000;
  std::uint64_t master_seed = 1;
  std::uint64_t cap = 0;  // exploration limit, 0 = none
  double z = 3.0;         // confidence multiplier
  unsigned threads = 1;
};

// Thrown by pc_solve when the initial bracket does not straddle the target.
class BracketError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// p_c(m) = sum_i a_i m^-i with a1 = a2 = 1, a3 = 7/2 and the conjectured a4 = 16.
struct PcExpansion {
  static constexpr double kCoefficients[] = {1.0, 1.0, 3.5, 16.0};
  static constexpr int kProvenTerms = 3;

  static double coefficient(int i);
  static double eval(double m, int terms = kProvenTerms);
};

// Stream 0 is the default configuration; triangles use 1..3, sprinkling 1..2.
Estimate chi_mc(const GraphSpec& spec, double p, const MCConfig& cfg);
Estimate tail_mc(const GraphSpec& spec, double p, std::uint64_t k, const MCConfig& cfg);

struct PcProbe {
  double p = 0.0;
  Estimate chi;
  int verdict = 0;  // +1 above target, -1 below, 0 undecided
};

struct PcSolveOptions {
  std::uint64_t initial_trials = 0;    // 0: use cfg.trials
  std::uint64_t max_trials_per_probe = 0;  // 0: 16 x initial
  double tolerance = 0.0;              // 0: degree^-4
  int max_probes = 64;
};

struct CriticalSolveReport {
  double lambda = 0.0;
  double target = 0.0;
  double pc_hat = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double tolerance = 0.0;
  bool converged = false;         // bracket width reached the tolerance
  bool budget_exhausted = false;  // a probe stayed undecided at its trial budget
  std::vector<PcProbe> probes;
};

// Stochastic bisection for E_p|C(0)| = lambda V^(1/3). Every probe reuses
// trial indices 0, 1, ... so estimates are monotone in p per trial.
CriticalSolveReport pc_solve(const GraphSpec& spec, double lambda, const MCConfig& cfg,
                             const PcSolveOptions& options = {});

// Unbiased estimate of sum_{u,v} P(x<->u) P(u<->v) P(v<->y).
Estimate triangle_mc(const GraphSpec& spec, double p, VertexId x, VertexId y,
                     const MCConfig& cfg);

struct TriangleRow {
  int distance = 0;
  VertexId y = 0;
  Estimate value;
};

struct TriangleConditionReport {
  double p = 0.0;
  Estimate chi;
  std::vector<TriangleRow> rows;  // one representative y per distance class
  double diagonal_excess = 0.0;   // nabla(0,0) - 1
  double offdiagonal_max = 0.0;   // max over distance >= 1
  double chi_cubed_over_v = 0.0;
  // Smallest C with offdiagonal_max <= C chi^3 / V when a0 = 0.
  double implied_c = 0.0;
};

TriangleConditionReport triangle_condition_report(const GraphSpec& spec, double pc_hat,
                                                  const MCConfig& cfg);

struct ChiOdeRow {
  double p = 0.0;
  Estimate chi;
  double predicted = 0.0;  // 1 / (degree (pc - p) + 1 / chi_pc)
  double ratio = 0.0;      // chi / predicted
  // chi_pc^-1 - chi(p)^-1 >= -degree (pc - p), tested within z standard errors.
  double integrated_lhs = 0.0;
  double integrated_rhs = 0.0;
  bool integrated_holds = false;
};

std::vector<ChiOdeRow> chi_ode_check(const GraphSpec& spec, double pc_hat, double chi_pc,
                                     const std::vector<double>& p_list, const MCConfig& cfg);

double window_k0(double eps, std::uint64_t vertex_count);

struct SweepRecord {
  std::uint64_t c1 = 0;
  std::uint64_t c2 = 0;
  double chi = 0.0;
  std::uint64_t z_k0 = 0;
};

struct WindowScanRow {
  double eps = 0.0;
  double p = 0.0;
  double k0 = 0.0;  // 0 at eps = 0, where Z is not recorded
  std::vector<SweepRecord> sweeps;

  std::vector<double> c1_over_2eps_v(std::uint64_t v) const;
  std::vector<double> c2_over_eps_v(std::uint64_t v) const;
  std::vector<double> chi_over_4eps2_v(std::uint64_t v) const;
  std::vector<double> c1_over_v23(std::uint64_t v) const;
  std::vector<double> z_over_2eps_v(std::uint64_t v) const;
  std::vector<double> c1_values() const;
  std::vector<double> chi_values() const;
};

// cfg.trials full sweeps per eps at p = pc_hat (1 + eps).
std::vector<WindowScanRow> window_scan(const GraphSpec& spec, double pc_hat,
                                       const std::vector<double>& eps_list, const MCConfig& cfg);

// p = (1 + 5/(2 m^2) + B/m^3) / (m - 1).
double induction_probability(int m, double b);

struct BallGrowthReport {
  double p = 0.0;
  std::vector<Estimate> levels;      // |dB(k)|
  std::vector<Estimate> cumulative;  // |B(k)|
  std::vector<double> ratio;         // levels[k] / levels[k-1], NaN where undefined
  std::vector<double> ratio_error;
  double stop_threshold = 0.0;       // 2^(m/2) / m^3
  std::optional<int> stop_k;         // first k with E|B(k)| >= threshold
  // Every defined ratio before stop_k (or up to kmax) satisfies ratio + z se >= 1.
  bool ratios_at_least_one = false;
};

BallGrowthReport ball_growth_mc(const GraphSpec& spec, double p, int kmax, const MCConfig& cfg);

struct GoodPairCensus {
  double p = 0.0;
  double eps = 0.0;
  ProbeRadii radii;
  double ball_mean_r0 = 0.0;
  Estimate good;  // Bernoulli mean over pairs
  Estimate cond1;
  Estimate cond2;
  Estimate cond3;
  Estimate disjoint;
  Estimate s_count;
  double target = 0.0;  // (2 eps)^2
  double ratio = 0.0;   // good.mean / target
  std::vector<VertexId> x;
  std::vector<VertexId> y;
  std::vector<GoodPairVerdict> verdicts;
};

// ball_mean_r0 <= 0 triggers a pre-pass of cfg.trials intrinsic balls on stream 4.
GoodPairCensus good_pair_census(const GraphSpec& spec, double p, double eps, ProbeRadii radii,
                                std::uint64_t pair_samples, double ball_mean_r0,
                                const MCConfig& cfg);

struct SprinkleTrial {
  std::uint64_t round1_c1 = 0;
  std::uint64_t union_c1 = 0;
  std::uint64_t round1_open = 0;
  std::uint64_t union_open = 0;
};

struct SprinkleReport {
  SprinklePlan plan;
  std::vector<SprinkleTrial> trials;
  double median_union_c1_over_2eps_v = 0.0;
  double min_gain = 0.0;
  double median_gain = 0.0;
  Estimate union_open;
};

SprinkleReport sprinkle_experiment(const GraphSpec& spec, double pc_hat, double eps, double theta,
                                   const MCConfig& cfg);

enum class Regime { subcritical, critical, supercritical };
Regime parse_regime(std::string_view text);
const char* to_string(Regime regime);

struct GnpReport {
  std::uint64_t n = 0;
  double eps = 0.0;
  Regime regime = Regime::supercritical;
  double p = 0.0;
  std::vector<SweepRecord> sweeps;
  // Regime normalization of C1: 2 eps n, 2 eps^-2 ln(eps^3 n) or n^(2/3).
  double c1_scale = 0.0;
  double median_c1_normalized = 0.0;
  double median_c2_over_c1 = 0.0;
};

GnpReport gnp_phase_check(std::uint64_t n, double eps, Regime regime, const MCConfig& cfg);

}  // namespace percolab
