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

#include "percolab/error.hpp"
#include "percolab/sampler.hpp"

using namespace percolab;

TEST_CASE("philox4x32-10 known answers") {
  // Random123 kat_vectors.
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("thresholds") {
  CHECK(open_threshold(0.0) == 0);
  CHECK(open_threshold(0.5) == (std::uint64_t{1} << 63));
  CHECK(open_threshold(0.25) == (std::uint64_t{1} << 62));
  CHECK_THROWS_AS(EdgeSampler(1, 0, 0, -0.1), ConfigError);
  CHECK_THROWS_AS(EdgeSampler(1, 0, 0, 1.5), ConfigError);
  CHECK_THROWS_AS(EdgeSampler(1, 0, 1u << 15, 0.5), ConfigError);
}

TEST_CASE("p = 0 and p = 1 are deterministic") {
  for (std::uint64_t seed : {0ULL, 1ULL, 0xdeadbeefULL}) {
    const EdgeSampler closed(seed, 3, 0, 0.0);
    const EdgeSampler open(seed, 3, 0, 1.0);
    for (std::uint64_t i = 0; i < 10000; ++i) {
      CHECK_FALSE(closed.open(EdgeId{i}));
      CHECK(open.open(EdgeId{i}));
    }
  }
}

TEST_CASE("open fraction is Bernoulli(p) within four sigma") {
  const EdgeSampler sampler(2024, 0, 0, 0.3);
  std::uint64_t opened = 0;
  const std::uint64_t n = 1'000'000;
  for (std::uint64_t i = 0; i < n; ++i) opened += sampler.open(EdgeId{i}) ? 1 : 0;
  CHECK(std::abs(static_cast<double>(opened) / n - 0.3) < 0.002);
}

TEST_CASE("repeated queries agree and streams differ") {
  const EdgeSampler a(7, 11, 1, 0.5);
  const EdgeSampler b(7, 11, 2, 0.5);
  const EdgeSampler c(7, 12, 1, 0.5);
  int differ_stream = 0;
  int differ_trial = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    CHECK(a.draw(EdgeId{i}) == a.draw(EdgeId{i}));
    differ_stream += a.draw(EdgeId{i}) != b.draw(EdgeId{i});
    differ_trial += a.draw(EdgeId{i}) != c.draw(EdgeId{i});
    CHECK(a.auxiliary(i) != a.draw(EdgeId{i}));
  }
  CHECK(differ_stream == 1000);
  CHECK(differ_trial == 1000);
}

TEST_CASE("monotone coupling across p") {
  const EdgeSampler low(5, 9, 0, 0.2);
  const auto high = low.with_probability(0.35);
  for (std::uint64_t i = 0; i < 100000; ++i) {
    if (low.open(EdgeId{i})) CHECK(high.open(EdgeId{i}));
  }
}

TEST_CASE("auxiliary uniforms lie in (0, 1]") {
  const EdgeSampler s(1, 2, 3, 0.5);
  double total = 0.0;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const double u = s.auxiliary_uniform(i);
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
    total += u;
  }
  CHECK(total / 100000 == doctest::Approx(0.5).epsilon(0.01));
}
