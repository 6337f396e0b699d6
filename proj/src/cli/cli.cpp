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

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "commands.hpp"
#include "output.hpp"
#include "percolab/error.hpp"

#ifndef PERCOLAB_VERSION
#define PERCOLAB_VERSION "unknown"
#endif

namespace percolab::cli {
namespace {

using CommandFn = void (*)(Context&);

const std::map<std::string, CommandFn>& commands() {
  static const std::map<std::string, CommandFn> table = {
      {"nbw", command_nbw},           {"mix", command_mix},
      {"conditions", command_conditions}, {"pc", command_pc},
      {"window", command_window},     {"triangle", command_triangle},
      {"balls", command_balls},       {"sprinkle", command_sprinkle},
      {"goodpairs", command_goodpairs}, {"er", command_er},
      {"oracle", command_oracle},     {"selftest", command_selftest},
  };
  return table;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

std::string config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

std::string scalar_text(const nlohmann::json& value, const std::string& key) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer() || value.is_number_unsigned()) return value.dump();
  if (value.is_number_float()) return format_number(value.get<double>());
  throw ConfigError("config key '" + key + "' must be a string, number or array of numbers");
}

// Appends "--key value" for every config entry not given on the command line.
void merge_config_file(std::vector<std::string>& args) {
  const std::string path = config_path(args);
  if (path.empty()) return;
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot read config file " + path);
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!config.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : config.items()) {
    if (key == "config" || key == "subcommand") continue;
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (has_flag(args, flag)) continue;
    std::string text;
    if (value.is_array()) {
      for (const auto& item : value) text += (text.empty() ? "" : ",") + scalar_text(item, key);
    } else {
      text = scalar_text(value, key);
    }
    args.push_back(flag);
    args.push_back(text);
  }
}

}  // namespace

nlohmann::json Settings::to_json() const {
  auto optional = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"graph", graph},
          {"p", optional(p)},
          {"pc", optional(pc)},
          {"eps", eps},
          {"lambda", lambda},
          {"theta", theta},
          {"slack", slack},
          {"b", b},
          {"omega", omega},
          {"z", z},
          {"r", optional(r)},
          {"r0", optional(r0)},
          {"kmax", kmax},
          {"k", k},
          {"trials", trials},
          {"seed", seed},
          {"threads", threads},
          {"cap", cap},
          {"trials_per_probe", trials_per_probe},
          {"probe_budget", probe_budget},
          {"pairs", pairs},
          {"x", x},
          {"y", y},
          {"m", m},
          {"t", t},
          {"n", n},
          {"regime", regime},
          {"out", out},
          {"format", format},
          {"config", config}};
}

std::optional<Settings> parse_arguments(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  merge_config_file(args);

  Settings s;
  double p = 0.0;
  double pc = 0.0;
  int r = 0;
  int r0 = 0;
  std::vector<std::string> names;
  for (const auto& [name, fn] : commands()) names.push_back(name);

  CLI::App app{"Percolation laboratory for hypercubes and complete graphs", "percolab"};
  app.add_option("subcommand", s.subcommand, "One of: " + CLI::detail::join(names, ", "))
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--graph", s.graph, "hypercube:<m> or complete:<n>");
  app.add_option("--p", p, "Retention probability");
  app.add_option("--pc", pc, "Critical point estimate (solved from --lambda when absent)");
  app.add_option("--eps", s.eps, "Relative offset(s) from pc, comma separated")->delimiter(',');
  app.add_option("--lambda", s.lambda, "Critical window parameter, chi(pc) = lambda V^(1/3)");
  app.add_option("--theta", s.theta, "Sprinkling fraction, p2 = theta eps / m");
  app.add_option("--slack", s.slack, "Mixing slack delta (0 selects 1/m)");
  app.add_option("--b", s.b, "Constant B of the induction probability");
  app.add_option("--omega", s.omega, "Critical window quantile parameter");
  app.add_option("--z", s.z, "Confidence multiplier");
  app.add_option("--r", r, "Good-pair radius r");
  app.add_option("--r0", r0, "Good-pair radius r0");
  app.add_option("--kmax", s.kmax, "Largest intrinsic radius");
  app.add_option("--k", s.k, "Cluster size threshold");
  app.add_option("--trials", s.trials, "Monte Carlo trials or sweeps");
  app.add_option("--seed", s.seed, "Master seed");
  app.add_option("--threads", s.threads, "Worker threads");
  app.add_option("--cap", s.cap, "Exploration cap (0 = none)");
  app.add_option("--trials-per-probe", s.trials_per_probe, "Initial trials per pc probe");
  app.add_option("--probe-budget", s.probe_budget, "Trial budget per pc probe (0 = 16x)");
  app.add_option("--pairs", s.pairs, "Sampled vertex pairs");
  app.add_option("--x", s.x, "First vertex");
  app.add_option("--y", s.y, "Second vertex");
  app.add_option("--m", s.m, "Hypercube dimension for analytics");
  app.add_option("--t", s.t, "Walk horizon");
  app.add_option("--n", s.n, "Vertex count for the complete-graph baseline");
  app.add_option("--regime", s.regime, "sub, crit, super or auto");
  app.add_option("--out", s.out, "Output directory");
  app.add_option("--format", s.format, "csv, jsonl or both")
      ->check(CLI::IsMember({"csv", "jsonl", "both"}));
  app.add_option("--config", s.config, "JSON file of flag defaults");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  if (app.count("--p")) s.p = p;
  if (app.count("--pc")) s.pc = pc;
  if (app.count("--r")) s.r = r;
  if (app.count("--r0")) s.r0 = r0;
  if (s.threads < 1) throw ConfigError("--threads must be >= 1");
  if (s.trials < 1) throw ConfigError("--trials must be >= 1");
  return s;
}

MCConfig Context::mc() const {
  MCConfig cfg;
  cfg.trials = settings.trials;
  cfg.master_seed = settings.seed;
  cfg.cap = settings.cap;
  cfg.z = settings.z;
  cfg.threads = settings.threads;
  return cfg;
}

GraphSpec Context::graph() const { return GraphSpec::parse(settings.graph); }

int run(int argc, const char* const* argv) {
  std::optional<Settings> settings;
  std::optional<RunOutput> output;
  try {
    settings = parse_arguments(argc, argv);
    if (!settings) return kSuccess;
    output.emplace(settings->out, settings->subcommand, settings->format);
  } catch (const std::exception& e) {
    std::cerr << "percolab: " << e.what() << '\n';
    return kConfigFailure;
  }

  const std::string started = utc_timestamp();
  Context ctx{*settings, *output, nlohmann::json::object(), {}, kSuccess};
  std::string error;
  try {
    commands().at(settings->subcommand)(ctx);
  } catch (const BudgetError& e) {
    error = std::string("budget exceeded: ") + e.what();
    ctx.exit_code = kBudgetFailure;
  } catch (const std::exception& e) {
    error = e.what();
    ctx.exit_code = kConfigFailure;
  }

  nlohmann::json manifest = {{"SCHEMA_VERSION", kSchemaVersion},
                             {"subcommand", settings->subcommand},
                             {"version", PERCOLAB_VERSION},
                             {"master_seed", settings->seed},
                             {"config", settings->to_json()},
                             {"resolved", ctx.resolved},
                             {"summary", ctx.summary},
                             {"exit_code", ctx.exit_code},
                             {"started_at", started}};
  if (!error.empty()) manifest["error"] = error;
  try {
    output->finish(std::move(manifest));
  } catch (const std::exception& e) {
    std::cerr << "percolab: " << e.what() << '\n';
    return kConfigFailure;
  }
  if (!error.empty()) {
    std::cerr << "percolab: " << error << '\n';
  } else {
    std::cout << settings->subcommand << ": " << ctx.summary << '\n';
  }
  return ctx.exit_code;
}

}  // namespace percolab::cli
