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

#include "percolab/sampler.hpp"

#include <cmath>
#include <string>

#include "percolab/error.hpp"

namespace percolab {

std::uint64_t open_threshold(double p) {
  if (!(p > 0.0)) return 0;
  if (p >= 1.0) return ~std::uint64_t{0};
  // p < 1 is at most 1 - 2^-53, so the scaled value stays below 2^64.
  return static_cast<std::uint64_t>(std::nearbyint(std::ldexp(p, 64)));
}

EdgeSampler::EdgeSampler(std::uint64_t master_seed, std::uint64_t trial, std::uint32_t stream,
                         double p)
    : seed_(master_seed),
      trial_(trial),
      stream_(stream),
      p_(p),
      threshold_(open_threshold(p)),
      always_open_(p >= 1.0) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("retention probability must lie in [0, 1], got " + std::to_string(p));
  }
  if (stream >= (1u << 15)) throw ConfigError("sampler stream must be below 2^15");
}

}  // namespace percolab
