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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace percolab::cli {

enum ExitCode : int { kSuccess = 0, kConfigFailure = 1, kBudgetFailure = 2, kSelftestFailure = 3 };

// Every flag of the tool. Options a subcommand does not read are still echoed
// into the manifest so that a run is fully described by its manifest.
struct Settings {
  std::string subcommand;
  std::string graph = "hypercube:12";
  std::optional<double> p;
  std::optional<double> pc;
  std::vector<double> eps;
  double lambda = 0.1;
  double theta = 0.1;
  double slack = 0.0;  // 0: 1/m
  double b = 10.0;
  double omega = 10.0;
  double z = 3.0;
  std::optional<int> r;
  std::optional<int> r0;
  int kmax = 10;
  std::uint64_t k = 4;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t cap = 0;
  std::uint64_t trials_per_probe = 20000;
  std::uint64_t probe_budget = 0;  // 0: 16 x trials_per_probe
  std::uint64_t pairs = 100;
  std::uint64_t x = 0;
  std::uint64_t y = 1;
  int m = 10;
  int t = 10;
  std::uint64_t n = 50000;
  std::string regime = "auto";
  std::string out = "percolab-out";
  std::string format = "both";
  std::string config;

  nlohmann::json to_json() const;
};

// Parses argv (flags override an optional --config JSON file). Throws
// ConfigError on invalid input; returns nullopt when help was printed.
std::optional<Settings> parse_arguments(int argc, const char* const* argv);

// Entry point of the percolab tool; returns the process exit status.
int run(int argc, const char* const* argv);

struct SelfCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast invariant suite behind `percolab selftest`.
std::vector<SelfCheck> run_selftest(unsigned threads);

}  // namespace percolab::cli
