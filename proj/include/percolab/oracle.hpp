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
#include <functional>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

struct EnumerationBudget {
  int max_edges = 25;
  std::uint64_t max_paths = 100'000'000;
};

// One edge subset of a small graph, with its open subgraph materialized.
class OpenSubgraph {
 public:
  OpenSubgraph(const GraphSpec& spec, const std::vector<std::pair<VertexId, VertexId>>& edges,
               std::uint32_t mask);

  std::uint32_t mask() const noexcept { return mask_; }
  int open_edge_count() const noexcept;
  const std::vector<VertexId>& adjacent(VertexId v) const { return adjacency_[v]; }
  std::uint64_t vertex_count() const noexcept { return adjacency_.size(); }

  // Component label per vertex (smallest member).
  std::vector<VertexId> component_labels() const;
  // Open-path distance from x, -1 where unreachable.
  std::vector<int> distances_from(VertexId x) const;

 private:
  std::uint32_t mask_;
  std::vector<std::vector<VertexId>> adjacency_;
};

using ConfigurationFunctional = std::function<double(const OpenSubgraph&)>;
using VectorFunctional = std::function<void(const OpenSubgraph&, std::vector<double>&)>;

// E_p[f] = sum over all edge subsets S of p^|S| (1-p)^(E-|S|) f(S). Weights
// are formed in log space once per subset size.
double exact_functional(const GraphSpec& spec, double p, const ConfigurationFunctional& f,
                        const EnumerationBudget& budget = {});
// Same for a functional with `width` outputs; f adds its values into the
// zero-initialized buffer it receives.
std::vector<double> exact_functional_vector(const GraphSpec& spec, double p, std::size_t width,
                                            const VectorFunctional& f,
                                            const EnumerationBudget& budget = {});

double exact_chi(const GraphSpec& spec, double p, VertexId x, const EnumerationBudget& budget = {});
double exact_two_point(const GraphSpec& spec, double p, VertexId x, VertexId y,
                       const EnumerationBudget& budget = {});
double exact_tail(const GraphSpec& spec, double p, VertexId x, std::uint64_t k,
                  const EnumerationBudget& budget = {});
double exact_triangle(const GraphSpec& spec, double p, VertexId x, VertexId y,
                      const EnumerationBudget& budget = {});
// E|dB_x(k)| for k = 0..kmax.
std::vector<double> exact_ball_levels(const GraphSpec& spec, double p, VertexId x, int kmax,
                                      const EnumerationBudget& budget = {});

// Number of non-backtracking paths of length t from 0 ending at each vertex
// of {0,1}^m, by explicit enumeration.
std::vector<std::uint64_t> nbw_brute_counts(int m, int t, const EnumerationBudget& budget = {});
// Endpoint distribution of the uniform non-backtracking walk.
std::vector<double> nbw_brute(int m, int t, const EnumerationBudget& budget = {});

}  // namespace percolab
