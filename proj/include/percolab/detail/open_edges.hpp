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

#include <cmath>

// Included from percolab/percolation.hpp.

namespace percolab {

template <class F>
void for_each_open_edge(const GraphSpec& spec, const EdgeSampler& sampler, F&& f) {
  if (!sampler.always_open() && sampler.threshold() == 0) return;
  if (spec.is_hypercube() || spec.edge_count() <= kSkipSamplingEdgeThreshold ||
      sampler.always_open()) {
    spec.for_each_edge([&](VertexId u, VertexId v, EdgeId e) {
      if (sampler.open(e)) f(u, v);
    });
    return;
  }

  // Geometric skipping over the lexicographic pair order of K_n.
  const std::uint64_t n = spec.vertex_count();
  const std::uint64_t edges = spec.edge_count();
  const double log_closed = std::log1p(-sampler.p());
  std::uint64_t position = 0;
  std::uint64_t draw = 0;
  VertexId row = 0;
  std::uint64_t row_start = 0;
  std::uint64_t row_length = n - 1;
  while (position < edges) {
    const double gap = std::floor(std::log(sampler.auxiliary_uniform(draw++)) / log_closed);
    if (gap >= static_cast<double>(edges - position)) break;
    position += static_cast<std::uint64_t>(gap);
    while (position >= row_start + row_length) {
      row_start += row_length;
      ++row;
      row_length = n - 1 - row;
    }
    f(row, row + 1 + (position - row_start));
    ++position;
  }
}

}  // namespace percolab
