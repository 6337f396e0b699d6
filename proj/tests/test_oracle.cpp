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

#include <cmath>
#include <numeric>

#include "percolab/error.hpp"
#include "percolab/oracle.hpp"

using namespace percolab;

namespace {

// Independent enumeration: two-point matrix of a small graph by union-find over
// every edge subset.
std::vector<double> two_point_matrix(const GraphSpec& g, double p) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (VertexId v = u + 1; v < g.vertex_count(); ++v) {
      if (g.adjacent(u, v)) edges.emplace_back(u, v);
    }
  }
  const std::size_t n = g.vertex_count();
  const int e = static_cast<int>(edges.size());
  std::vector<double> tau(n * n, 0.0);
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a];
      return a;
    };
    double weight = 1.0;
    for (int i = 0; i < e; ++i) {
      if ((mask >> i) & 1u) {
        weight *= p;
        parent[find(edges[i].first)] = find(edges[i].second);
      } else {
        weight *= 1.0 - p;
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (find(a) == find(b)) tau[a * n + b] += weight;
      }
    }
  }
  return tau;
}

}  // namespace

TEST_CASE("exact functional basics") {
  const auto q2 = GraphSpec::hypercube(2);
  for (double p : {0.0, 0.2, 0.7, 1.0}) {
    CHECK(exact_functional(q2, p, [](const OpenSubgraph&) { return 1.0; }) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(exact_functional(q2, 0.3, [](const OpenSubgraph& g) {
          return static_cast<double>(g.open_edge_count());
        }) == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(exact_two_point(q2, 1.0, 0, 0b11) == 1.0);
  CHECK_THROWS_AS(exact_chi(GraphSpec::hypercube(4), 0.5, 0), BudgetError);
  EnumerationBudget tight;
  tight.max_edges = 3;
  CHECK_THROWS_AS(exact_chi(q2, 0.5, 0, tight), BudgetError);
}

TEST_CASE("indicator and complement sum to one") {
  const auto q3 = GraphSpec::hypercube(3);
  for (double p : {0.1, 0.5, 0.9}) {
    const double a = exact_two_point(q3, p, 0, 7);
    const double b = exact_functional(q3, p, [](const OpenSubgraph& g) {
      const auto labels = g.component_labels();
      return labels[0] == labels[7] ? 0.0 : 1.0;
    });
    CHECK(a + b == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("hand-computed values") {
  for (double p : {0.0, 0.25, 0.6, 1.0}) {
    CHECK(exact_chi(GraphSpec::hypercube(1), p, 0) == doctest::Approx(1 + p).epsilon(1e-14));
    // 4-cycle: direct edge, or the three-edge detour.
    CHECK(exact_two_point(GraphSpec::hypercube(2), p, 0, 1) ==
          doctest::Approx(p + (1 - p) * p * p * p).epsilon(1e-14));
  }
  for (VertexId x = 0; x < 8; ++x) {
    CHECK(exact_triangle(GraphSpec::hypercube(3), 0.0, x, x) == 1.0);
    CHECK(exact_triangle(GraphSpec::hypercube(3), 0.0, x, x ^ 1) == 0.0);
  }
  CHECK(exact_tail(GraphSpec::hypercube(3), 0.4, 0, 1) == doctest::Approx(1.0));
  CHECK(exact_tail(GraphSpec::hypercube(3), 0.0, 0, 2) == 0.0);
}

TEST_CASE("oracle agrees with independent enumeration") {
  for (const auto& g : {GraphSpec::hypercube(2), GraphSpec::hypercube(3), GraphSpec::complete(5)}) {
    for (double p : {0.15, 0.3, 0.55}) {
      const auto tau = two_point_matrix(g, p);
      const std::size_t n = g.vertex_count();
      for (VertexId x = 0; x < n; ++x) {
        double chi = 0.0;
        for (VertexId u = 0; u < n; ++u) chi += tau[x * n + u];
        CHECK(exact_chi(g, p, x) == doctest::Approx(chi).epsilon(1e-12));
      }
      for (VertexId y = 0; y < n; ++y) {
        double tri = 0.0;
        for (VertexId u = 0; u < n; ++u) {
          for (VertexId v = 0; v < n; ++v) tri += tau[u] * tau[u * n + v] * tau[v * n + y];
        }
        CHECK(exact_triangle(g, p, 0, y) == doctest::Approx(tri).epsilon(1e-12));
        CHECK(exact_two_point(g, p, 0, y) == doctest::Approx(tau[y]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ball levels") {
  const auto q3 = GraphSpec::hypercube(3);
  const auto full = exact_ball_levels(q3, 1.0, 0, 4);
  CHECK(full == std::vector<double>{1, 3, 3, 1, 0});
  const auto levels = exact_ball_levels(q3, 0.3, 0, 3);
  CHECK(levels[0] == doctest::Approx(1.0));
  CHECK(levels[1] == doctest::Approx(0.9));
  const auto all = exact_ball_levels(q3, 0.3, 0, 7);
  const double total = std::accumulate(all.begin(), all.end(), 0.0);
  CHECK(total == doctest::Approx(exact_chi(q3, 0.3, 0)).epsilon(1e-12));
}

TEST_CASE("tiny probabilities do not underflow") {
  const auto g = GraphSpec::complete(7);  // 21 edges
  const double p = 1e-20;
  CHECK(exact_chi(g, p, 0) == doctest::Approx(1.0 + 6 * p));
  CHECK(exact_functional(g, p, [](const OpenSubgraph& s) {
          return s.open_edge_count() == 21 ? 1.0 : 0.0;
        }) == 0.0);
}

TEST_CASE("nbw brute force") {
  const auto t1 = nbw_brute(5, 1);
  for (VertexId v = 0; v < 32; ++v) CHECK(t1[v] == (hamming_distance(v, 0) == 1 ? 0.2 : 0.0));

  const auto t2 = nbw_brute(3, 2);
  for (VertexId v = 0; v < 8; ++v) {
    CHECK(t2[v] == doctest::Approx(hamming_distance(v, 0) == 2 ? 2.0 / 6 : 0.0));
  }
  const auto t3 = nbw_brute(3, 3);
  for (VertexId v = 0; v < 8; ++v) {
    const int w = hamming_distance(v, 0);
    CHECK(t3[v] == doctest::Approx(w == 1 ? 1.0 / 6 : (w == 3 ? 0.5 : 0.0)));
  }
  CHECK(nbw_brute_counts(4, 0)[0] == 1);
  CHECK_THROWS_AS(nbw_brute(10, 10), BudgetError);
  CHECK_THROWS_AS(nbw_brute(1, 2), ConfigError);
}
