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

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>

#include "percolab/error.hpp"
#include "percolab/percolation.hpp"

using namespace percolab;

namespace {

// Adjacency matrix of one sampled configuration, built from per-edge queries.
struct Matrix {
  std::size_t n;
  std::vector<char> open;

  Matrix(const GraphSpec& g, const EdgeSampler& s) : n(g.vertex_count()), open(n * n, 0) {
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = 0; v < n; ++v) {
        if (u != v && g.adjacent(u, v) && s.open(g.canonical_edge(u, v))) open[u * n + v] = 1;
      }
    }
  }

  std::vector<int> distances(VertexId x) const {
    std::vector<int> d(n, -1);
    std::deque<VertexId> q{x};
    d[x] = 0;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop_front();
      for (VertexId v = 0; v < n; ++v) {
        if (open[u * n + v] && d[v] < 0) {
          d[v] = d[u] + 1;
          q.push_back(v);
        }
      }
    }
    return d;
  }

  std::uint64_t cluster_size(VertexId x) const {
    const auto d = distances(x);
    return std::count_if(d.begin(), d.end(), [](int k) { return k >= 0; });
  }
};

std::vector<std::uint64_t> sizes_of(const SweepSummary& s) {
  std::vector<std::uint64_t> out;
  for (const auto& [size, count] : s.size_histogram) out.insert(out.end(), count, size);
  return out;
}

}  // namespace

TEST_CASE("cluster exploration trivial cases") {
  const auto q5 = GraphSpec::hypercube(5);
  for (VertexId v : {0u, 7u, 31u}) {
    CHECK(explore_cluster(q5, EdgeSampler(1, 0, 0, 0.0), v).size == 1);
    CHECK(explore_cluster(q5, EdgeSampler(1, 0, 0, 1.0), v).size == 32);
  }
  CHECK_THROWS_AS(explore_cluster(q5, EdgeSampler(1, 0, 0, 0.5), 32), ConfigError);
  const auto capped = explore_cluster(q5, EdgeSampler(1, 0, 0, 1.0), 0, 10);
  CHECK(capped.size == 10);
  CHECK(capped.truncated);
  const auto whole = explore_cluster(q5, EdgeSampler(1, 0, 0, 1.0), 0, 33);
  CHECK(whole.size == 32);
  CHECK_FALSE(whole.truncated);
}

TEST_CASE("cluster and balls match adjacency-matrix oracle on Q3") {
  const auto q3 = GraphSpec::hypercube(3);
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    for (double p : {0.3, 0.5}) {
      const EdgeSampler s(99, trial, 0, p);
      const Matrix oracle(q3, s);
      for (VertexId v = 0; v < 8; ++v) {
        CHECK(explore_cluster(q3, s, v).size == oracle.cluster_size(v));
        const auto d = oracle.distances(v);
        const auto ball = intrinsic_ball(q3, s, v, 4);
        for (int k = 0; k <= 4; ++k) {
          CHECK(ball.levels[k] == static_cast<std::uint64_t>(std::count(d.begin(), d.end(), k)));
        }
      }
    }
  }
}

TEST_CASE("intrinsic ball basics") {
  const auto q6 = GraphSpec::hypercube(6);
  CHECK(intrinsic_ball(q6, EdgeSampler(1, 0, 0, 0.4), 5, 0).levels == std::vector<std::uint64_t>{1});
  const auto full = intrinsic_ball(q6, EdgeSampler(1, 0, 0, 1.0), 0, 6);
  for (int k = 0; k <= 6; ++k) CHECK(full.levels[k] == binomial(6, k));
  CHECK(full.cumulative.back() == 64);
  const auto none = intrinsic_ball(q6, EdgeSampler(1, 0, 0, 0.0), 0, 3);
  CHECK(none.levels == std::vector<std::uint64_t>{1, 0, 0, 0});
}

TEST_CASE("ball cumulative stabilizes at the cluster size") {
  const auto q10 = GraphSpec::hypercube(10);
  Explorer explorer(q10);
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    const EdgeSampler s(3, trial, 0, 0.12);
    const auto ball = explorer.intrinsic_ball(s, 0, 40);
    const auto size = explorer.explore_cluster(s, 0).size;
    for (std::size_t k = 1; k < ball.levels.size(); ++k) {
      CHECK(ball.cumulative[k] == ball.cumulative[k - 1] + ball.levels[k]);
      if (ball.levels[k] == 0) CHECK(ball.cumulative[k] == size);
    }
  }
}

TEST_CASE("full sweep trivial cases") {
  const auto q4 = GraphSpec::hypercube(4);
  const auto closed = full_sweep(q4, EdgeSampler(1, 0, 0, 0.0));
  CHECK(closed.c1 == 1);
  CHECK(closed.c2 == 1);
  CHECK(closed.component_count() == 16);
  const auto open = full_sweep(q4, EdgeSampler(1, 0, 0, 1.0));
  CHECK(open.c1 == 16);
  CHECK(open.c2 == 0);
  CHECK(open.open_edge_count == q4.edge_count());
  CHECK(z_at_least(open, 1) == 16);
  CHECK(z_at_least(open, 17) == 0);
  CHECK_THROWS_AS(z_at_least(open, 0), ConfigError);
}

TEST_CASE("full sweep agrees with exploration from every vertex") {
  for (int m : {3, 6, 10}) {
    const auto g = GraphSpec::hypercube(m);
    Explorer explorer(g);
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
      const EdgeSampler s(17, trial, 0, 1.3 / m);
      std::uint64_t opened = 0;
      auto forest = sweep_forest(g, s, &opened);
      const auto summary = forest.summarize(opened);
      std::vector<std::uint64_t> from_bfs;
      std::vector<bool> seen(g.vertex_count(), false);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto size = explorer.explore_cluster(s, v).size;
        CHECK(forest.component_size(static_cast<std::uint32_t>(v)) == size);
        if (seen[v]) continue;
        for (const auto u : explorer.cluster(s, v)) seen[u] = true;
        from_bfs.push_back(size);
      }
      std::sort(from_bfs.rbegin(), from_bfs.rend());
      CHECK(sizes_of(summary) == from_bfs);
      CHECK(summary.c1 == from_bfs[0]);
      CHECK(std::accumulate(from_bfs.begin(), from_bfs.end(), std::uint64_t{0}) == g.vertex_count());
      std::uint64_t open_count = 0;
      g.for_each_edge([&](VertexId, VertexId, EdgeId e) { open_count += s.open(e); });
      CHECK(summary.open_edge_count == open_count);
    }
  }
}

TEST_CASE("largest component tie break prefers the smaller minimal vertex") {
  // Two isolated edges of K_4 have equal size; C1 must report vertex 0's.
  const auto k4 = GraphSpec::complete(4);
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    const EdgeSampler s(5, trial, 0, 0.3);
    const auto summary = full_sweep(k4, s);
    const Matrix oracle(k4, s);
    VertexId best = 0;
    std::uint64_t best_size = 0;
    for (VertexId v = 0; v < 4; ++v) {
      if (oracle.cluster_size(v) > best_size) {
        best_size = oracle.cluster_size(v);
        best = v;
      }
    }
    CHECK(summary.c1 == best_size);
    CHECK(summary.c1_min_vertex == best);
  }
}

TEST_CASE("susceptibility from a sweep") {
  SweepSummary s;
  s.vertex_count = 10;
  s.size_histogram = {{5, 1}, {2, 2}, {1, 1}};
  CHECK(s.susceptibility() == doctest::Approx((25.0 + 4 + 4 + 1) / 10));
  CHECK(z_at_least(s, 2) == 9);
  CHECK(s.component_count() == 4);
}

TEST_CASE("monotone coupling of sweeps") {
  const auto q8 = GraphSpec::hypercube(8);
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    std::uint64_t previous = 0;
    for (double p : {0.05, 0.1, 0.125, 0.15, 0.2, 0.4}) {
      const auto c1 = full_sweep(q8, EdgeSampler(8, trial, 0, p)).c1;
      CHECK(c1 >= previous);
      previous = c1;
    }
  }
}

TEST_CASE("sweep budget") {
  CHECK_THROWS_AS(check_sweep_budget(GraphSpec::hypercube(27)), BudgetError);
  CHECK_THROWS_AS(check_sweep_budget(GraphSpec::complete(100001)), BudgetError);
  CHECK(check_sweep_budget(GraphSpec::hypercube(10)) > 0);
  setenv("PERCOLAB_MEM_BUDGET_MB", "1", 1);
  CHECK_THROWS_AS(check_sweep_budget(GraphSpec::hypercube(20)), BudgetError);
  setenv("PERCOLAB_MEM_BUDGET_MB", "abc", 1);
  CHECK_THROWS_AS(memory_budget_bytes(), ConfigError);
  unsetenv("PERCOLAB_MEM_BUDGET_MB");
  CHECK(memory_budget_bytes() == std::uint64_t{4096} << 20);
}

TEST_CASE("skip-sampled complete graph has the right edge density") {
  const auto g = GraphSpec::complete(5000);  // E > 2^22
  REQUIRE(g.edge_count() > kSkipSamplingEdgeThreshold);
  const double p = 2e-4;
  double total = 0.0;
  const int trials = 40;
  for (int trial = 0; trial < trials; ++trial) {
    std::uint64_t opened = 0;
    VertexId last_u = 0, last_v = 0;
    bool ordered = true;
    for_each_open_edge(g, EdgeSampler(4, trial, 0, p), [&](VertexId u, VertexId v) {
      if (!(u < v) || v >= 5000) ordered = false;
      if (opened > 0 && !(u > last_u || (u == last_u && v > last_v))) ordered = false;
      last_u = u;
      last_v = v;
      ++opened;
    });
    CHECK(ordered);
    total += static_cast<double>(opened);
  }
  const double mean = total / trials;
  const double expected = p * static_cast<double>(g.edge_count());
  const double sigma = std::sqrt(expected / trials);
  CHECK(std::abs(mean - expected) < 4 * sigma);
}

TEST_CASE("sprinkle plan") {
  const auto plan = sprinkle_plan(16, 1.0 / 15, 0.2, 0.1);
  CHECK(plan.p2 == 0.1 * 0.2 / 16);
  CHECK(std::abs((1 - plan.p1) * (1 - plan.p2) - (1 - plan.p)) <= 1e-15);
  CHECK(std::abs(plan.p1 + (1 - plan.p1) * plan.p2 - plan.p) <= 1e-15);
  const auto none = sprinkle_plan(16, 1.0 / 15, 0.2, 0.0);
  CHECK(none.p2 == 0.0);
  CHECK(none.p1 == none.p);
  CHECK_THROWS_AS(sprinkle_plan(4, 0.01, 0.2, 5.0), ConfigError);
  CHECK_THROWS_AS(sprinkle_plan(4, 0.9, 0.2, 0.1), ConfigError);
}

TEST_CASE("sprinkled sweeps") {
  const auto q8 = GraphSpec::hypercube(8);
  const auto none = sprinkle_plan(8, 0.15, 0.2, 0.0);
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const auto s = sprinkled_sweep(q8, none, 3, trial);
    CHECK(s.round1.size_histogram == s.combined.size_histogram);
    CHECK(s.round1.open_edge_count == s.combined.open_edge_count);
  }
  // Degenerate split: everything comes from stream 2 at p.
  SprinklePlan all{0.0, 0.0, 0.15, 0.0, 0.15};
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const auto s = sprinkled_sweep(q8, all, 3, trial);
    const auto direct = full_sweep(q8, EdgeSampler(3, trial, 2, 0.15));
    CHECK(s.combined.size_histogram == direct.size_histogram);
    CHECK(s.round1.c1 == 1);
  }
  const auto plan = sprinkle_plan(8, 0.15, 0.2, 1.0);
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const auto s = sprinkled_sweep(q8, plan, 3, trial);
    CHECK(s.combined.c1 >= s.round1.c1);
    CHECK(s.combined.open_edge_count >= s.round1.open_edge_count);
  }
}

TEST_CASE("sprinkled union on a skip-sampled complete graph") {
  const auto g = GraphSpec::complete(4000);
  const auto plan = sprinkle_plan(g.degree(), 1.0 / 3999, 0.5, 0.5);
  const auto s = sprinkled_sweep(g, plan, 2, 0);
  CHECK(s.combined.c1 >= s.round1.c1);
  const double expected = plan.p * static_cast<double>(g.edge_count());
  CHECK(std::abs(static_cast<double>(s.combined.open_edge_count) - expected) <
        5 * std::sqrt(expected));
}

TEST_CASE("per-edge union probability equals p") {
  const auto plan = sprinkle_plan(10, 0.1, 0.2, 0.5);
  const EdgeSampler one(6, 0, 1, plan.p1);
  const EdgeSampler two(6, 0, 2, plan.p2);
  const std::uint64_t n = 1'000'000;
  std::uint64_t opened = 0;
  for (std::uint64_t i = 0; i < n; ++i) opened += one.open(EdgeId{i}) || two.open(EdgeId{i});
  const double sigma = std::sqrt(plan.p * (1 - plan.p) / n);
  CHECK(std::abs(static_cast<double>(opened) / n - plan.p) < 4 * sigma);
}

TEST_CASE("probe radii") {
  const auto r = default_probe_radii(0.25, std::uint64_t{1} << 14);
  const double lv = std::log(16384.0);
  CHECK(r.r == static_cast<int>(std::ceil(std::log(lv) / 0.25)));
  CHECK(r.r0 == static_cast<int>(std::ceil(r.r * lv / std::log(lv))));
  CHECK_THROWS_AS(default_probe_radii(0.0, 1024), ConfigError);
  CHECK_THROWS_AS(default_probe_radii(0.2, 2), ConfigError);
}

TEST_CASE("good-pair probe trivial cases") {
  const auto q8 = GraphSpec::hypercube(8);
  const GoodPairParams params{2, 3, 0.2, 5.0};
  const auto closed = good_pair_probe(q8, EdgeSampler(1, 0, 0, 0.0), 0, 255, params);
  CHECK_FALSE(closed.cond1);
  CHECK_FALSE(closed.good());
  const auto adjacent = good_pair_probe(q8, EdgeSampler(1, 0, 0, 1.0), 0, 1, params);
  CHECK_FALSE(adjacent.cond1);
  CHECK_FALSE(adjacent.good());
  CHECK_FALSE(adjacent.balls_disjoint);
  CHECK(adjacent.s_count == 0);
  CHECK_THROWS_AS(good_pair_probe(q8, EdgeSampler(1, 0, 0, 0.5), 3, 3, params), ConfigError);
}

TEST_CASE("good-pair S counts boundary edges between disjoint balls") {
  // With r = 0 and r0 = 0 the balls are single vertices; at p = 0 every
  // ambient edge between x and y qualifies when the ball product cap is >= 1.
  const auto q4 = GraphSpec::hypercube(4);
  const GoodPairParams params{0, 0, 1.0, 1.0};
  const auto v = good_pair_probe(q4, EdgeSampler(1, 0, 0, 0.0), 0, 1, params);
  CHECK(v.balls_disjoint);
  CHECK(v.s_count == 1);
  CHECK(v.ball_product_cap == 1.0);
  CHECK(v.s_threshold == doctest::Approx(4.0 / 16));
  CHECK(v.cond3);
  CHECK(v.cond1);
  CHECK_FALSE(v.cond2);
  CHECK_FALSE(v.good());
}
