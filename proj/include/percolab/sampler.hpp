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

#include <array>
#include <cstdint>

#include "percolab/graph.hpp"

namespace percolab {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., SC'11), the counter-based
// generator used by Random123, cuRAND and numpy.
constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

// Bit-exact open criterion threshold: round(p * 2^64), with p >= 1 handled by
// the sampler as "always open".
std::uint64_t open_threshold(double p);

// Deterministic per-edge Bernoulli(p) states for one percolation
// configuration. An edge is open iff
//   PRF(master_seed, trial, stream, edge index) < round(p * 2^64)
// so repeated queries agree and samplers that differ only in p are coupled
// monotonically. |P(open) - p| <= 2^-65.
class EdgeSampler {
 public:
  // Streams must stay below 2^15.
  EdgeSampler(std::uint64_t master_seed, std::uint64_t trial, std::uint32_t stream, double p);

  std::uint64_t master_seed() const noexcept { return seed_; }
  std::uint64_t trial() const noexcept { return trial_; }
  std::uint32_t stream() const noexcept { return stream_; }
  double p() const noexcept { return p_; }
  std::uint64_t threshold() const noexcept { return threshold_; }
  bool always_open() const noexcept { return always_open_; }

  // Raw 64-bit PRF value of an edge.
  std::uint64_t draw(EdgeId e) const noexcept { return evaluate(e.index, 0); }

  bool open(EdgeId e) const noexcept {
    if (always_open_) return true;
    if (threshold_ == 0) return false;
    return draw(e) < threshold_;
  }

  // Same PRF values, different retention probability.
  EdgeSampler with_probability(double p) const {
    return EdgeSampler(seed_, trial_, stream_, p);
  }

  // PRF values from a domain disjoint from the edge draws; used for skip
  // sampling and for picking random vertices inside a trial.
  std::uint64_t auxiliary(std::uint64_t counter) const noexcept {
    return evaluate(counter, 1);
  }
  // Uniform double in (0, 1] built from the top 53 bits of auxiliary(counter).
  double auxiliary_uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>((auxiliary(counter) >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t evaluate(std::uint64_t index, std::uint32_t domain) const noexcept {
    const PhiloxCounter ctr{static_cast<std::uint32_t>(index),
                            static_cast<std::uint32_t>((index >> 32) & 0xFFFFu) |
                                (stream_ << 16) | (domain << 31),
                            static_cast<std::uint32_t>(trial_),
                            static_cast<std::uint32_t>(trial_ >> 32)};
    const PhiloxKey key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
    const auto out = philox4x32_10(ctr, key);
    return (std::uint64_t{out[1]} << 32) | out[0];
  }

  std::uint64_t seed_;
  std::uint64_t trial_;
  std::uint32_t stream_;
  double p_;
  std::uint64_t threshold_;
  bool always_open_;
};

}  // namespace percolab
