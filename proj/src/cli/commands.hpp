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

#include <string>

#include "cli.hpp"
#include "output.hpp"
#include "percolab/estimators.hpp"
#include "percolab/graph.hpp"

namespace percolab::cli {

struct Context {
  const Settings& settings;
  RunOutput& output;
  nlohmann::json resolved = nlohmann::json::object();
  std::string summary;
  int exit_code = kSuccess;

  MCConfig mc() const;
  GraphSpec graph() const;
};

void command_nbw(Context& ctx);
void command_mix(Context& ctx);
void command_conditions(Context& ctx);
void command_pc(Context& ctx);
void command_window(Context& ctx);
void command_triangle(Context& ctx);
void command_balls(Context& ctx);
void command_sprinkle(Context& ctx);
void command_goodpairs(Context& ctx);
void command_er(Context& ctx);
void command_oracle(Context& ctx);
void command_selftest(Context& ctx);

}  // namespace percolab::cli
