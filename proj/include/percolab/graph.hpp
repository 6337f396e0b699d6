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

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace percolab {

using VertexId = std::uint64_t;

// Canonical index of an undirected edge. Hypercube edges are keyed by
// base * m + axis where base is the endpoint whose bit `axis` is clear, so the
// occupied indices are a subset of [0, m * 2^m). Complete-graph edges use the
// lexicographic rank of the pair (min, max) and fill [0, n(n-1)/2) exactly.
struct EdgeId {
  std::uint64_t index = 0;

  friend constexpr auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

inline constexpr int kMaxHypercubeDimension = 30;

enum class GraphKind { hypercube, complete };

// Implicit vertex-transitive graph: the hypercube {0,1}^m or the complete
// graph K_n. Vertices are 0..V-1; hypercube vertices are m-bit masks.
class GraphSpec {
 public:
  static GraphSpec hypercube(int m);
  static GraphSpec complete(std::uint64_t n);
  // Accepts "hypercube:<m>" or "complete:<n>".
  static GraphSpec parse(std::string_view text);

  GraphKind kind() const noexcept { return kind_; }
  bool is_hypercube() const noexcept { return kind_ == GraphKind::hypercube; }
  // Hypercube dimension m; throws ConfigError for complete graphs.
  int dimension() const;

  std::uint64_t vertex_count() const noexcept;
  std::uint64_t degree() const noexcept;
  std::uint64_t edge_count() const noexcept;
  // One past the largest canonical edge index.
  std::uint64_t edge_index_bound() const noexcept;
  std::string to_string() const;

  // i-th neighbor of v, i < degree(). Hypercube neighbors are ordered by
  // axis, complete-graph neighbors by vertex id. No range checks.
  VertexId neighbor(VertexId v, std::uint64_t i) const noexcept {
    if (kind_ == GraphKind::hypercube) return v ^ (VertexId{1} << i);
    return i < v ? i : i + 1;
  }
  // Canonical id of the edge between v and its i-th neighbor. No range checks.
  EdgeId edge_to_neighbor(VertexId v, std::uint64_t i) const noexcept {
    if (kind_ == GraphKind::hypercube) {
      const VertexId base = v & ~(VertexId{1} << i);
      return EdgeId{base * param_ + i};
    }
    const VertexId u = i < v ? i : i + 1;
    return pair_rank(std::min(u, v), std::max(u, v));
  }

  std::vector<VertexId> neighbors(VertexId v) const;
  bool adjacent(VertexId u, VertexId v) const noexcept;
  EdgeId canonical_edge(VertexId u, VertexId v) const;
  // Endpoints (lower, upper) of a canonical edge id.
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const;

  // Visits every edge once, in increasing canonical index order.
  template <class F>
  void for_each_edge(F&& f) const {
    if (kind_ == GraphKind::hypercube) {
      const VertexId vertices = vertex_count();
      const int m = static_cast<int>(param_);
      for (VertexId base = 0; base < vertices; ++base) {
        for (int axis = 0; axis < m; ++axis) {
          const VertexId bit = VertexId{1} << axis;
          if (base & bit) continue;
          f(base, base | bit, EdgeId{base * param_ + static_cast<std::uint64_t>(axis)});
        }
      }
      return;
    }
    std::uint64_t index = 0;
    for (VertexId a = 0; a < param_; ++a) {
      for (VertexId b = a + 1; b < param_; ++b) f(a, b, EdgeId{index++});
    }
  }

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;

 private:
  GraphSpec(GraphKind kind, std::uint64_t param) : kind_(kind), param_(param) {}

  EdgeId pair_rank(VertexId a, VertexId b) const noexcept {
    return EdgeId{a * (2 * param_ - a - 1) / 2 + (b - a - 1)};
  }
  void check_vertex(VertexId v) const;

  GraphKind kind_;
  std::uint64_t param_;  // m for the hypercube, n for K_n
};

inline int hamming_distance(VertexId u, VertexId v) noexcept {
  return std::popcount(u ^ v);
}

// Exact C(n, k) for 0 <= n <= 64. Throws NumericError for larger n; returns 0
// when k is outside [0, n].
std::uint64_t binomial(int n, int k);

// C(n, k) as a double. Exact-then-rounded for n <= 64; for larger n a running
// product in long double (relative error well below 1e-15).
double binomial_real(int n, int k);

// Number of vertices u of weight w1 at Hamming distance w2 from a fixed vertex
// of weight w in {0,1}^m (a structure constant of the Hamming scheme).
std::uint64_t intersection_number(int m, int w, int w1, int w2);

}  // namespace percolab
