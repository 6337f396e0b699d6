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
#include <unordered_set>
#include <utility>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/sampler.hpp"

namespace percolab {

// Memory budget in bytes, from PERCOLAB_MEM_BUDGET_MB (default 4096).
std::uint64_t memory_budget_bytes();

// Largest graphs accepted by full sweeps.
inline constexpr int kMaxSweepDimension = 26;
inline constexpr std::uint64_t kMaxSweepCompleteVertices = 100'000;
// Complete graphs with more edges than this are swept by geometric skipping.
inline constexpr std::uint64_t kSkipSamplingEdgeThreshold = std::uint64_t{1} << 22;

struct ClusterResult {
  std::uint64_t size = 0;
  // True iff exploration reached the cap and stopped; size is then a lower
  // bound on |C(v)|.
  bool truncated = false;
};

// |dB_v(k)| and |B_v(k)| for k = 0..kmax, in the intrinsic (open-path) metric.
struct BallGrowth {
  std::vector<std::uint64_t> levels;
  std::vector<std::uint64_t> cumulative;
};

// Reusable BFS scratch bound to one graph. Visited marks use epoch stamps so
// starting a new exploration is O(1); huge graphs fall back to a hash set.
class Explorer {
 public:
  explicit Explorer(const GraphSpec& spec);

  const GraphSpec& spec() const noexcept { return spec_; }

  // cap = 0 means unlimited.
  ClusterResult explore_cluster(const EdgeSampler& sampler, VertexId v, std::uint64_t cap = 0);
  BallGrowth intrinsic_ball(const EdgeSampler& sampler, VertexId v, int kmax);
  // Ball B_v(radius), vertices in BFS order. Stops early once the ball holds
  // more than size_cap vertices (0 = unlimited); the returned flag reports
  // whether that happened.
  std::pair<std::vector<VertexId>, bool> ball(const EdgeSampler& sampler, VertexId v, int radius,
                                              std::uint64_t size_cap = 0);
  // Members of C(v), in BFS order.
  std::vector<VertexId> cluster(const EdgeSampler& sampler, VertexId v);

 private:
  void reset();
  bool mark(VertexId v);
  // BFS up to `radius` levels (-1 = unbounded) or `cap` vertices (0 = none).
  // Returns per-level counts; queue_ holds the visited vertices.
  std::vector<std::uint64_t> bfs(const EdgeSampler& sampler, VertexId v, int radius,
                                 std::uint64_t cap, bool& truncated);

  GraphSpec spec_;
  bool dense_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::unordered_set<VertexId> sparse_;
  std::vector<VertexId> queue_;
};

ClusterResult explore_cluster(const GraphSpec& spec, const EdgeSampler& sampler, VertexId v,
                              std::uint64_t cap = 0);
BallGrowth intrinsic_ball(const GraphSpec& spec, const EdgeSampler& sampler, VertexId v, int kmax);

// Component statistics of one configuration.
struct SweepSummary {
  std::uint64_t vertex_count = 0;
  std::uint64_t open_edge_count = 0;
  std::uint64_t c1 = 0;
  std::uint64_t c2 = 0;  // 0 when there is a single component
  // Smallest vertex of the component reported as C1; among equally large
  // components the one with the smaller minimal vertex wins.
  VertexId c1_min_vertex = 0;
  // (size, number of components of that size), sizes strictly decreasing.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> size_histogram;

  std::uint64_t component_count() const noexcept;
  // V^{-1} sum_j |C_j|^2, an unbiased estimate of E|C(0)| on transitive graphs.
  double susceptibility() const noexcept;
};

// Number of vertices in components of size >= k.
std::uint64_t z_at_least(const SweepSummary& summary, std::uint64_t k);

// Union-find over vertex ids with path halving and union by size.
class ClusterForest {
 public:
  explicit ClusterForest(std::uint64_t vertex_count);

  std::uint32_t find(std::uint32_t v) noexcept {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  bool unite(std::uint32_t a, std::uint32_t b) noexcept;

  std::uint64_t vertex_count() const noexcept { return parent_.size(); }
  std::uint64_t component_size(std::uint32_t v) noexcept { return size_[find(v)]; }
  SweepSummary summarize(std::uint64_t open_edges);

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

// Bytes a full sweep of spec needs; throws BudgetError above the budget or the
// size caps.
std::uint64_t check_sweep_budget(const GraphSpec& spec);

// Calls f(u, v) for every open edge. Hypercubes and small complete graphs
// query the sampler edge by edge in canonical order; complete graphs above
// kSkipSamplingEdgeThreshold draw geometric gaps from the sampler's
// auxiliary stream instead, which yields an i.i.d. Bernoulli(p) edge set
// whose realization differs from per-edge queries.
template <class F>
void for_each_open_edge(const GraphSpec& spec, const EdgeSampler& sampler, F&& f);

// Union-find forest of the configuration; callers read labels or sizes.
ClusterForest sweep_forest(const GraphSpec& spec, const EdgeSampler& sampler,
                           std::uint64_t* open_edges = nullptr);
SweepSummary full_sweep(const GraphSpec& spec, const EdgeSampler& sampler);

// Two-round decomposition: p2 = theta * eps / m and
// p1 + (1 - p1) p2 = p = pc (1 + eps).
struct SprinklePlan {
  double eps = 0.0;
  double theta = 0.0;
  double p = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
};

SprinklePlan sprinkle_plan(std::uint64_t degree, double pc_estimate, double eps, double theta);

struct SprinkledSweep {
  SweepSummary round1;
  SweepSummary combined;  // union of round 1 (stream 1) and round 2 (stream 2)
};

SprinkledSweep sprinkled_sweep(const GraphSpec& spec, const SprinklePlan& plan,
                               std::uint64_t master_seed, std::uint64_t trial);

// Probe radii defaults r = ceil(eps^-1 ln ln V), r0 = ceil(r ln V / ln ln V).
struct ProbeRadii {
  int r = 0;
  int r0 = 0;
};
ProbeRadii default_probe_radii(double eps, std::uint64_t vertex_count);

struct GoodPairParams {
  int r = 0;
  int r0 = 0;
  double eps = 0.0;
  double ball_mean_r0 = 0.0;  // external estimate of E|B(r0)|
};

// Outcome of the (r, r0)-good test for one pair. The disjoint-occurrence
// requirement on the counted edges is realized by demanding that the balls of
// radius 2r + r0 around x and y be vertex-disjoint; when they are not, S = 0.
struct GoodPairVerdict {
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  std::uint64_t s_count = 0;
  double s_threshold = 0.0;        // V^-1 m eps^-2 (E|B(r0)|)^2
  double cluster_threshold = 0.0;  // (eps^3 V)^(1/4) eps^-2
  double ball_product_cap = 0.0;   // eps^-2 (E|B(r0)|)^2
  bool balls_disjoint = false;     // B_x(2r+r0) and B_y(2r+r0) disjoint
  GoodPairParams params;

  bool good() const noexcept { return cond1 && cond2 && cond3; }
};

GoodPairVerdict good_pair_probe(const GraphSpec& spec, const EdgeSampler& sampler, VertexId x,
                                VertexId y, const GoodPairParams& params);

}  // namespace percolab

#include "percolab/detail/open_edges.hpp"
