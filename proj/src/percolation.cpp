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

#include "percolab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <unordered_map>

#include "percolab/error.hpp"

namespace percolab {
namespace {

constexpr std::uint64_t kDenseExplorerLimit = std::uint64_t{1} << 24;

bool skip_sampled(const GraphSpec& spec, const EdgeSampler& sampler) {
  return !spec.is_hypercube() && spec.edge_count() > kSkipSamplingEdgeThreshold &&
         !sampler.always_open();
}

}  // namespace

std::uint64_t memory_budget_bytes() {
  std::uint64_t megabytes = 4096;
  if (const char* env = std::getenv("PERCOLAB_MEM_BUDGET_MB"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const auto parsed = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || parsed == 0) {
      throw ConfigError(std::string("PERCOLAB_MEM_BUDGET_MB must be a positive integer, got '") +
                        env + "'");
    }
    megabytes = parsed;
  }
  return megabytes << 20;
}

// ---------------------------------------------------------------------------
// Explorer

Explorer::Explorer(const GraphSpec& spec)
    : spec_(spec), dense_(spec.vertex_count() <= kDenseExplorerLimit) {
  if (dense_) stamp_.assign(spec.vertex_count(), 0);
}

void Explorer::reset() {
  queue_.clear();
  if (!dense_) {
    sparse_.clear();
    return;
  }
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

bool Explorer::mark(VertexId v) {
  if (!dense_) return sparse_.insert(v).second;
  if (stamp_[v] == epoch_) return false;
  stamp_[v] = epoch_;
  return true;
}

std::vector<std::uint64_t> Explorer::bfs(const EdgeSampler& sampler, VertexId v, int radius,
                                         std::uint64_t cap, bool& truncated) {
  if (v >= spec_.vertex_count()) {
    throw ConfigError("vertex " + std::to_string(v) + " out of range for " + spec_.to_string());
  }
  reset();
  mark(v);
  queue_.push_back(v);
  std::vector<std::uint64_t> levels{1};
  truncated = cap != 0 && queue_.size() >= cap;
  if (truncated) return levels;

  const std::uint64_t degree = spec_.degree();
  std::size_t head = 0;
  for (int depth = 0; radius < 0 || depth < radius; ++depth) {
    const std::size_t level_end = queue_.size();
    std::uint64_t found = 0;
    for (; head < level_end; ++head) {
      const VertexId x = queue_[head];
      for (std::uint64_t i = 0; i < degree; ++i) {
        const VertexId y = spec_.neighbor(x, i);
        if (dense_ ? stamp_[y] == epoch_ : sparse_.contains(y)) continue;
        if (!sampler.open(spec_.edge_to_neighbor(x, i))) continue;
        mark(y);
        queue_.push_back(y);
        ++found;
        if (cap != 0 && queue_.size() >= cap) {
          truncated = true;
          levels.push_back(found);
          return levels;
        }
      }
    }
    if (found == 0) break;
    levels.push_back(found);
  }
  return levels;
}

ClusterResult Explorer::explore_cluster(const EdgeSampler& sampler, VertexId v, std::uint64_t cap) {
  bool truncated = false;
  bfs(sampler, v, -1, cap, truncated);
  return {queue_.size(), truncated};
}

BallGrowth Explorer::intrinsic_ball(const EdgeSampler& sampler, VertexId v, int kmax) {
  if (kmax < 0) throw ConfigError("kmax must be non-negative");
  bool truncated = false;
  auto levels = bfs(sampler, v, kmax, 0, truncated);
  levels.resize(static_cast<std::size_t>(kmax) + 1, 0);
  BallGrowth growth{std::move(levels), {}};
  growth.cumulative.resize(growth.levels.size());
  std::uint64_t running = 0;
  for (std::size_t k = 0; k < growth.levels.size(); ++k) {
    running += growth.levels[k];
    growth.cumulative[k] = running;
  }
  return growth;
}

std::pair<std::vector<VertexId>, bool> Explorer::ball(const EdgeSampler& sampler, VertexId v,
                                                      int radius, std::uint64_t size_cap) {
  bool truncated = false;
  bfs(sampler, v, radius, size_cap == 0 ? 0 : size_cap + 1, truncated);
  return {queue_, truncated};
}

std::vector<VertexId> Explorer::cluster(const EdgeSampler& sampler, VertexId v) {
  bool truncated = false;
  bfs(sampler, v, -1, 0, truncated);
  return queue_;
}

ClusterResult explore_cluster(const GraphSpec& spec, const EdgeSampler& sampler, VertexId v,
                              std::uint64_t cap) {
  Explorer explorer(spec);
  return explorer.explore_cluster(sampler, v, cap);
}

BallGrowth intrinsic_ball(const GraphSpec& spec, const EdgeSampler& sampler, VertexId v, int kmax) {
  Explorer explorer(spec);
  return explorer.intrinsic_ball(sampler, v, kmax);
}

// ---------------------------------------------------------------------------
// Sweeps

std::uint64_t SweepSummary::component_count() const noexcept {
  std::uint64_t total = 0;
  for (const auto& [size, count] : size_histogram) total += count;
  return total;
}

double SweepSummary::susceptibility() const noexcept {
  double total = 0.0;
  for (const auto& [size, count] : size_histogram) {
    total += static_cast<double>(count) * static_cast<double>(size) * static_cast<double>(size);
  }
  return vertex_count == 0 ? 0.0 : total / static_cast<double>(vertex_count);
}

std::uint64_t z_at_least(const SweepSummary& summary, std::uint64_t k) {
  if (k < 1) throw ConfigError("z_at_least needs k >= 1");
  std::uint64_t total = 0;
  for (const auto& [size, count] : summary.size_histogram) {
    if (size < k) break;
    total += size * count;
  }
  return total;
}

ClusterForest::ClusterForest(std::uint64_t vertex_count)
    : parent_(vertex_count), size_(vertex_count, 1) {
  for (std::uint64_t v = 0; v < vertex_count; ++v) parent_[v] = static_cast<std::uint32_t>(v);
}

bool ClusterForest::unite(std::uint32_t a, std::uint32_t b) noexcept {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

SweepSummary ClusterForest::summarize(std::uint64_t open_edges) {
  SweepSummary summary;
  summary.vertex_count = vertex_count();
  summary.open_edge_count = open_edges;
  std::vector<bool> seen(vertex_count(), false);
  std::vector<std::uint64_t> sizes;
  for (std::uint32_t v = 0; v < vertex_count(); ++v) {
    const auto root = find(v);
    if (seen[root]) continue;
    seen[root] = true;  // v is the smallest vertex of this component
    sizes.push_back(size_[root]);
    if (size_[root] > summary.c1) {
      summary.c1 = size_[root];
      summary.c1_min_vertex = v;
    }
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  summary.c2 = sizes.size() > 1 ? sizes[1] : 0;
  for (const auto size : sizes) {
    if (!summary.size_histogram.empty() && summary.size_histogram.back().first == size) {
      ++summary.size_histogram.back().second;
    } else {
      summary.size_histogram.emplace_back(size, 1);
    }
  }
  return summary;
}

std::uint64_t check_sweep_budget(const GraphSpec& spec) {
  if (spec.is_hypercube() && spec.dimension() > kMaxSweepDimension) {
    throw BudgetError("full sweeps support hypercube dimension <= 26, got " +
                      std::to_string(spec.dimension()));
  }
  if (!spec.is_hypercube() && spec.vertex_count() > kMaxSweepCompleteVertices) {
    throw BudgetError("full sweeps support complete graphs with n <= 100000");
  }
  // parent + size words, the seen bitmap and the size list.
  const std::uint64_t bytes = spec.vertex_count() * 17;
  if (bytes > memory_budget_bytes()) {
    throw BudgetError("full sweep of " + spec.to_string() + " needs " + std::to_string(bytes >> 20) +
                      " MiB, above PERCOLAB_MEM_BUDGET_MB");
  }
  return bytes;
}

ClusterForest sweep_forest(const GraphSpec& spec, const EdgeSampler& sampler,
                           std::uint64_t* open_edges) {
  check_sweep_budget(spec);
  ClusterForest forest(spec.vertex_count());
  std::uint64_t opened = 0;
  for_each_open_edge(spec, sampler, [&](VertexId u, VertexId v) {
    forest.unite(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    ++opened;
  });
  if (open_edges != nullptr) *open_edges = opened;
  return forest;
}

SweepSummary full_sweep(const GraphSpec& spec, const EdgeSampler& sampler) {
  std::uint64_t opened = 0;
  auto forest = sweep_forest(spec, sampler, &opened);
  return forest.summarize(opened);
}

// ---------------------------------------------------------------------------
// Sprinkling

SprinklePlan sprinkle_plan(std::uint64_t degree, double pc_estimate, double eps, double theta) {
  if (degree == 0) throw ConfigError("sprinkling needs a positive degree");
  if (!(theta >= 0.0)) throw ConfigError("theta must be non-negative");
  SprinklePlan plan;
  plan.eps = eps;
  plan.theta = theta;
  plan.p = pc_estimate * (1.0 + eps);
  if (!(plan.p >= 0.0 && plan.p <= 1.0)) {
    throw ConfigError("target probability pc (1 + eps) = " + std::to_string(plan.p) +
                      " outside [0, 1]");
  }
  plan.p2 = theta * eps / static_cast<double>(degree);
  if (plan.p2 < 0.0 || (plan.p2 > 0.0 && plan.p2 >= plan.p)) {
    throw ConfigError("infeasible sprinkling plan: p2 = " + std::to_string(plan.p2) +
                      " must lie in [0, p)");
  }
  plan.p1 = (plan.p - plan.p2) / (1.0 - plan.p2);
  return plan;
}

SprinkledSweep sprinkled_sweep(const GraphSpec& spec, const SprinklePlan& plan,
                               std::uint64_t master_seed, std::uint64_t trial) {
  check_sweep_budget(spec);
  const EdgeSampler first(master_seed, trial, 1, plan.p1);
  const EdgeSampler second(master_seed, trial, 2, plan.p2);
  const std::uint64_t n = spec.vertex_count();

  ClusterForest forest(n);
  std::uint64_t opened = 0;
  std::vector<std::uint64_t> first_edges;  // skip-sampled round-1 pairs, increasing
  const bool keep_first = skip_sampled(spec, first) || skip_sampled(spec, second);
  for_each_open_edge(spec, first, [&](VertexId u, VertexId v) {
    forest.unite(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    ++opened;
    if (keep_first) first_edges.push_back(u * n + v);
  });
  if (keep_first) std::sort(first_edges.begin(), first_edges.end());

  SprinkledSweep result;
  result.round1 = forest.summarize(opened);
  if (keep_first) {
    for_each_open_edge(spec, second, [&](VertexId u, VertexId v) {
      if (std::binary_search(first_edges.begin(), first_edges.end(), u * n + v)) return;
      forest.unite(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
      ++opened;
    });
  } else {
    for_each_open_edge(spec, second, [&](VertexId u, VertexId v) {
      if (first.open(spec.canonical_edge(u, v))) return;
      forest.unite(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
      ++opened;
    });
  }
  result.combined = forest.summarize(opened);
  return result;
}

// ---------------------------------------------------------------------------
// Good pairs

ProbeRadii default_probe_radii(double eps, std::uint64_t vertex_count) {
  if (!(eps > 0.0)) throw ConfigError("probe radii need eps > 0");
  const double log_v = std::log(static_cast<double>(vertex_count));
  const double log_log_v = std::log(log_v);
  if (!(log_log_v > 0.0)) throw ConfigError("probe radii need ln ln V > 0 (V >= 3)");
  ProbeRadii radii;
  radii.r = static_cast<int>(std::ceil(log_log_v / eps));
  radii.r0 = static_cast<int>(std::ceil(radii.r * log_v / log_log_v));
  return radii;
}

GoodPairVerdict good_pair_probe(const GraphSpec& spec, const EdgeSampler& sampler, VertexId x,
                                VertexId y, const GoodPairParams& params) {
  if (x == y) throw ConfigError("good-pair probe needs x != y");
  if (!(params.eps > 0.0)) throw ConfigError("good-pair probe needs eps > 0");
  if (!(params.ball_mean_r0 > 0.0)) throw ConfigError("good-pair probe needs E|B(r0)| > 0");
  if (params.r < 0 || params.r0 < 0) throw ConfigError("probe radii must be non-negative");

  const double volume = static_cast<double>(spec.vertex_count());
  const double eps = params.eps;
  const double ball_sq = params.ball_mean_r0 * params.ball_mean_r0;
  GoodPairVerdict verdict;
  verdict.params = params;
  verdict.cluster_threshold = std::pow(eps * eps * eps * volume, 0.25) / (eps * eps);
  verdict.ball_product_cap = ball_sq / (eps * eps);
  verdict.s_threshold = static_cast<double>(spec.degree()) * ball_sq / (volume * eps * eps);

  Explorer explorer(spec);

  // (1) non-empty boundaries at radius r and disjoint r-balls.
  const auto growth_x = explorer.intrinsic_ball(sampler, x, params.r);
  const auto growth_y = explorer.intrinsic_ball(sampler, y, params.r);
  if (growth_x.levels.back() > 0 && growth_y.levels.back() > 0) {
    const auto [ball_x, tx] = explorer.ball(sampler, x, params.r);
    const auto [ball_y, ty] = explorer.ball(sampler, y, params.r);
    const std::unordered_set<VertexId> members(ball_y.begin(), ball_y.end());
    verdict.cond1 = std::none_of(ball_x.begin(), ball_x.end(),
                                 [&](VertexId v) { return members.contains(v); });
  }

  // (2) both clusters reach the size threshold.
  const auto needed = static_cast<std::uint64_t>(std::ceil(verdict.cluster_threshold));
  verdict.cond2 = explorer.explore_cluster(sampler, x, needed).size >= needed &&
                  explorer.explore_cluster(sampler, y, needed).size >= needed;

  // (3) count candidate edges between the (2r + r0)-balls.
  const int outer = 2 * params.r + params.r0;
  const int inner = params.r + params.r0;
  const auto [ball_x, tx] = explorer.ball(sampler, x, outer);
  const auto [ball_y, ty] = explorer.ball(sampler, y, outer);
  const std::unordered_set<VertexId> in_y(ball_y.begin(), ball_y.end());
  verdict.balls_disjoint = std::none_of(ball_x.begin(), ball_x.end(),
                                        [&](VertexId v) { return in_y.contains(v); });
  if (verdict.balls_disjoint) {
    const auto cap = static_cast<std::uint64_t>(std::floor(verdict.ball_product_cap));
    std::unordered_map<VertexId, std::uint64_t> ball_sizes;
    auto inner_size = [&](VertexId u) {
      if (auto it = ball_sizes.find(u); it != ball_sizes.end()) return it->second;
      // Sizes above the cap fail the product test regardless of the partner.
      const auto [members, over] = explorer.ball(sampler, u, inner, cap);
      const std::uint64_t size = members.size();
      ball_sizes.emplace(u, size);
      return size;
    };
    for (const VertexId u : ball_x) {
      for (std::uint64_t i = 0; i < spec.degree(); ++i) {
        const VertexId partner = spec.neighbor(u, i);
        if (!in_y.contains(partner)) continue;
        const double product =
            static_cast<double>(inner_size(u)) * static_cast<double>(inner_size(partner));
        if (product <= verdict.ball_product_cap) ++verdict.s_count;
      }
    }
  }
  verdict.cond3 = static_cast<double>(verdict.s_count) >= verdict.s_threshold;
  return verdict;
}

}  // namespace percolab
