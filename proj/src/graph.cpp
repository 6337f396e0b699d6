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

#include "percolab/graph.hpp"

#include <charconv>
#include <cmath>

#include "percolab/error.hpp"

namespace percolab {
namespace {

constexpr std::uint64_t kMaxCompleteVertices = std::uint64_t{1} << 31;

template <class Int>
Int parse_integer(std::string_view text, std::string_view what) {
  Int value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

GraphSpec GraphSpec::hypercube(int m) {
  if (m < 1 || m > kMaxHypercubeDimension) {
    throw ConfigError("hypercube dimension must be in [1, 30], got " + std::to_string(m));
  }
  return GraphSpec(GraphKind::hypercube, static_cast<std::uint64_t>(m));
}

GraphSpec GraphSpec::complete(std::uint64_t n) {
  if (n < 2 || n > kMaxCompleteVertices) {
    throw ConfigError("complete graph needs 2 <= n <= 2^31, got " + std::to_string(n));
  }
  return GraphSpec(GraphKind::complete, n);
}

GraphSpec GraphSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("graph must look like hypercube:<m> or complete:<n>, got '" +
                      std::string(text) + "'");
  }
  const auto family = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  if (family == "hypercube") return hypercube(parse_integer<int>(arg, "dimension"));
  if (family == "complete") return complete(parse_integer<std::uint64_t>(arg, "vertex count"));
  throw ConfigError("unknown graph family '" + std::string(family) + "'");
}

int GraphSpec::dimension() const {
  if (!is_hypercube()) throw ConfigError("dimension() requires a hypercube");
  return static_cast<int>(param_);
}

std::uint64_t GraphSpec::vertex_count() const noexcept {
  return is_hypercube() ? (std::uint64_t{1} << param_) : param_;
}

std::uint64_t GraphSpec::degree() const noexcept {
  return is_hypercube() ? param_ : param_ - 1;
}

std::uint64_t GraphSpec::edge_count() const noexcept {
  return is_hypercube() ? param_ * (std::uint64_t{1} << (param_ - 1))
                        : param_ * (param_ - 1) / 2;
}

std::uint64_t GraphSpec::edge_index_bound() const noexcept {
  return is_hypercube() ? param_ * vertex_count() : edge_count();
}

std::string GraphSpec::to_string() const {
  return (is_hypercube() ? "hypercube:" : "complete:") + std::to_string(param_);
}

void GraphSpec::check_vertex(VertexId v) const {
  if (v >= vertex_count()) {
    throw ConfigError("vertex " + std::to_string(v) + " out of range for " + to_string());
  }
}

std::vector<VertexId> GraphSpec::neighbors(VertexId v) const {
  check_vertex(v);
  std::vector<VertexId> out;
  out.reserve(degree());
  for (std::uint64_t i = 0; i < degree(); ++i) out.push_back(neighbor(v, i));
  return out;
}

bool GraphSpec::adjacent(VertexId u, VertexId v) const noexcept {
  const auto vertices = vertex_count();
  if (u >= vertices || v >= vertices || u == v) return false;
  return is_hypercube() ? std::has_single_bit(u ^ v) : true;
}

EdgeId GraphSpec::canonical_edge(VertexId u, VertexId v) const {
  if (!adjacent(u, v)) {
    throw ConfigError("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                      " are not adjacent in " + to_string());
  }
  if (is_hypercube()) {
    const auto axis = static_cast<std::uint64_t>(std::countr_zero(u ^ v));
    return EdgeId{std::min(u, v) * param_ + axis};
  }
  return pair_rank(std::min(u, v), std::max(u, v));
}

std::pair<VertexId, VertexId> GraphSpec::endpoints(EdgeId e) const {
  if (e.index >= edge_index_bound()) {
    throw ConfigError("edge index " + std::to_string(e.index) + " out of range");
  }
  if (is_hypercube()) {
    const VertexId base = e.index / param_;
    const VertexId bit = VertexId{1} << (e.index % param_);
    if (base & bit) throw ConfigError("edge index " + std::to_string(e.index) + " is unoccupied");
    return {base, base | bit};
  }
  // Row a holds the n - 1 - a pairs (a, b > a).
  VertexId a = 0;
  std::uint64_t rest = e.index;
  while (rest >= param_ - 1 - a) {
    rest -= param_ - 1 - a;
    ++a;
  }
  return {a, a + 1 + rest};
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 64) {
    throw NumericError("exact binomial supports 0 <= n <= 64, got n = " + std::to_string(n));
  }
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at every step.
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(acc);
}

double binomial_real(int n, int k) {
  if (n < 0) throw NumericError("binomial_real needs n >= 0");
  if (k < 0 || k > n) return 0.0;
  if (n <= 64) return static_cast<double>(binomial(n, k));
  k = std::min(k, n - k);
  long double acc = 1.0L;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  }
  return static_cast<double>(acc);
}

std::uint64_t intersection_number(int m, int w, int w1, int w2) {
  if (w < 0 || w1 < 0 || w2 < 0 || w > m || w1 > m || w2 > m) return 0;
  const int twice_j = w + w1 - w2;
  if (twice_j < 0 || twice_j % 2 != 0) return 0;
  const int j = twice_j / 2;  // ones of u that overlap the ones of the fixed vertex
  if (j > w || w1 - j < 0 || w1 - j > m - w) return 0;
  return binomial(w, j) * binomial(m - w, w1 - j);
}

}  // namespace percolab
