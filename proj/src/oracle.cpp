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

#include "percolab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <string>

#include "percolab/error.hpp"

namespace percolab {
namespace {

std::vector<std::pair<VertexId, VertexId>> edge_list(const GraphSpec& spec,
                                                     const EnumerationBudget& budget) {
  if (spec.edge_count() > static_cast<std::uint64_t>(budget.max_edges)) {
    throw BudgetError("enumeration over " + std::to_string(spec.edge_count()) +
                      " edges exceeds the budget of " + std::to_string(budget.max_edges));
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  spec.for_each_edge([&](VertexId u, VertexId v, EdgeId) { edges.emplace_back(u, v); });
  return edges;
}

// Probability of one subset with k open edges, for k = 0..E.
std::vector<double> subset_weights(int edges, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p outside [0, 1]");
  std::vector<double> weights(edges + 1, 0.0);
  if (p == 0.0) {
    weights[0] = 1.0;
  } else if (p == 1.0) {
    weights[edges] = 1.0;
  } else {
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    for (int k = 0; k <= edges; ++k) weights[k] = std::exp(k * log_p + (edges - k) * log_q);
  }
  return weights;
}

void check_vertex(const GraphSpec& spec, VertexId v) {
  if (v >= spec.vertex_count()) throw ConfigError("vertex out of range for the oracle");
}

}  // namespace

OpenSubgraph::OpenSubgraph(const GraphSpec& spec,
                           const std::vector<std::pair<VertexId, VertexId>>& edges,
                           std::uint32_t mask)
    : mask_(mask), adjacency_(spec.vertex_count()) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (((mask >> i) & 1U) == 0) continue;
    adjacency_[edges[i].first].push_back(edges[i].second);
    adjacency_[edges[i].second].push_back(edges[i].first);
  }
}

int OpenSubgraph::open_edge_count() const noexcept { return std::popcount(mask_); }

std::vector<VertexId> OpenSubgraph::component_labels() const {
  const auto n = adjacency_.size();
  std::vector<VertexId> label(n, n);
  for (VertexId s = 0; s < n; ++s) {
    if (label[s] != n) continue;
    label[s] = s;
    std::vector<VertexId> stack{s};
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto w : adjacency_[u]) {
        if (label[w] == n) {
          label[w] = s;
          stack.push_back(w);
        }
      }
    }
  }
  return label;
}

std::vector<int> OpenSubgraph::distances_from(VertexId x) const {
  std::vector<int> dist(adjacency_.size(), -1);
  std::deque<VertexId> queue{x};
  dist[x] = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto w : adjacency_[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<double> exact_functional_vector(const GraphSpec& spec, double p, std::size_t width,
                                            const VectorFunctional& f,
                                            const EnumerationBudget& budget) {
  const auto edges = edge_list(spec, budget);
  const int e = static_cast<int>(edges.size());
  const auto weights = subset_weights(e, p);
  // Accumulate per subset-size class, then weight each class once.
  std::vector<std::vector<double>> by_size(e + 1, std::vector<double>(width, 0.0));
  std::vector<double> values(width);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << e); ++mask) {
    const int k = std::popcount(mask);
    if (weights[k] == 0.0) continue;
    std::fill(values.begin(), values.end(), 0.0);
    f(OpenSubgraph(spec, edges, mask), values);
    for (std::size_t i = 0; i < width; ++i) by_size[k][i] += values[i];
  }
  std::vector<double> total(width, 0.0);
  for (int k = 0; k <= e; ++k) {
    for (std::size_t i = 0; i < width; ++i) total[i] += weights[k] * by_size[k][i];
  }
  return total;
}

double exact_functional(const GraphSpec& spec, double p, const ConfigurationFunctional& f,
                        const EnumerationBudget& budget) {
  return exact_functional_vector(
      spec, p, 1, [&](const OpenSubgraph& g, std::vector<double>& out) { out[0] = f(g); },
      budget)[0];
}

double exact_chi(const GraphSpec& spec, double p, VertexId x, const EnumerationBudget& budget) {
  check_vertex(spec, x);
  return exact_functional(
      spec, p,
      [x](const OpenSubgraph& g) {
        const auto labels = g.component_labels();
        return static_cast<double>(std::count(labels.begin(), labels.end(), labels[x]));
      },
      budget);
}

double exact_two_point(const GraphSpec& spec, double p, VertexId x, VertexId y,
                       const EnumerationBudget& budget) {
  check_vertex(spec, x);
  check_vertex(spec, y);
  return exact_functional(
      spec, p,
      [x, y](const OpenSubgraph& g) {
        const auto labels = g.component_labels();
        return labels[x] == labels[y] ? 1.0 : 0.0;
      },
      budget);
}

double exact_tail(const GraphSpec& spec, double p, VertexId x, std::uint64_t k,
                  const EnumerationBudget& budget) {
  check_vertex(spec, x);
  return exact_functional(
      spec, p,
      [x, k](const OpenSubgraph& g) {
        const auto labels = g.component_labels();
        const auto size = std::count(labels.begin(), labels.end(), labels[x]);
        return static_cast<std::uint64_t>(size) >= k ? 1.0 : 0.0;
      },
      budget);
}

double exact_triangle(const GraphSpec& spec, double p, VertexId x, VertexId y,
                      const EnumerationBudget& budget) {
  check_vertex(spec, x);
  check_vertex(spec, y);
  const auto n = spec.vertex_count();
  const auto tau = exact_functional_vector(
      spec, p, n * n,
      [n](const OpenSubgraph& g, std::vector<double>& out) {
        const auto labels = g.component_labels();
        for (VertexId a = 0; a < n; ++a) {
          for (VertexId b = 0; b < n; ++b) out[a * n + b] = labels[a] == labels[b] ? 1.0 : 0.0;
        }
      },
      budget);
  double total = 0.0;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) total += tau[x * n + u] * tau[u * n + v] * tau[v * n + y];
  }
  return total;
}

std::vector<double> exact_ball_levels(const GraphSpec& spec, double p, VertexId x, int kmax,
                                      const EnumerationBudget& budget) {
  check_vertex(spec, x);
  if (kmax < 0) throw ConfigError("kmax must be non-negative");
  return exact_functional_vector(
      spec, p, static_cast<std::size_t>(kmax) + 1,
      [x, kmax](const OpenSubgraph& g, std::vector<double>& out) {
        for (const int d : g.distances_from(x)) {
          if (d >= 0 && d <= kmax) out[d] += 1.0;
        }
      },
      budget);
}

std::vector<std::uint64_t> nbw_brute_counts(int m, int t, const EnumerationBudget& budget) {
  if (m < 2 || m > 20) throw ConfigError("nbw_brute supports 2 <= m <= 20");
  if (t < 0) throw ConfigError("walk length must be non-negative");
  // m (m-1)^(t-1) paths, checked against the budget before enumerating.
  double paths = t == 0 ? 1.0 : m * std::pow(m - 1.0, t - 1);
  if (paths > static_cast<double>(budget.max_paths)) {
    throw BudgetError("nbw_brute(" + std::to_string(m) + ", " + std::to_string(t) +
                      ") enumerates more than " + std::to_string(budget.max_paths) + " paths");
  }
  std::vector<std::uint64_t> counts(std::uint64_t{1} << m, 0);
  // Depth-first over (vertex, last axis) with an explicit stack.
  struct Frame {
    VertexId v;
    int last;
    int depth;
  };
  std::vector<Frame> stack{{0, -1, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.depth == t) {
      ++counts[f.v];
      continue;
    }
    for (int axis = 0; axis < m; ++axis) {
      if (axis == f.last) continue;
      stack.push_back({f.v ^ (VertexId{1} << axis), axis, f.depth + 1});
    }
  }
  return counts;
}

std::vector<double> nbw_brute(int m, int t, const EnumerationBudget& budget) {
  const auto counts = nbw_brute_counts(m, t, budget);
  const double paths = t == 0 ? 1.0 : m * std::pow(m - 1.0, t - 1);
  std::vector<double> distribution(counts.size());
  for (std::size_t v = 0; v < counts.size(); ++v) {
    distribution[v] = static_cast<double>(counts[v]) / paths;
  }
  return distribution;
}

}  // namespace percolab
