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

#include "commands.hpp"

#include <cmath>
#include <limits>

#include "percolab/error.hpp"
#include "percolab/nbw.hpp"
#include "percolab/oracle.hpp"

namespace percolab::cli {
namespace {

using nlohmann::json;

std::string num(double v) { return format_number(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

json estimate_json(const Estimate& e) {
  return {{"mean", e.mean}, {"stderr", e.std_error}, {"n", e.n},
          {"min", e.min},   {"max", e.max},          {"lower_bound", e.lower_bound}};
}

int dimension_of(const GraphSpec& g) {
  if (!g.is_hypercube()) throw ConfigError("this subcommand needs a hypercube graph");
  return g.dimension();
}

double resolve_slack(Context& ctx, int m) {
  const double slack = ctx.settings.slack > 0.0 ? ctx.settings.slack : 1.0 / m;
  ctx.resolved["slack"] = slack;
  return slack;
}

double resolve_pc(Context& ctx, const GraphSpec& g) {
  if (ctx.settings.pc) {
    ctx.resolved["pc"] = *ctx.settings.pc;
    ctx.resolved["pc_source"] = "given";
    return *ctx.settings.pc;
  }
  PcSolveOptions options;
  options.initial_trials = ctx.settings.trials_per_probe;
  options.max_trials_per_probe = ctx.settings.probe_budget;
  const auto report = pc_solve(g, ctx.settings.lambda, ctx.mc(), options);
  ctx.resolved["pc"] = report.pc_hat;
  ctx.resolved["pc_source"] = "solved";
  ctx.resolved["pc_probes"] = report.probes.size();
  ctx.resolved["pc_budget_exhausted"] = report.budget_exhausted;
  return report.pc_hat;
}

std::vector<double> resolve_eps(Context& ctx, std::vector<double> fallback) {
  auto eps = ctx.settings.eps.empty() ? std::move(fallback) : ctx.settings.eps;
  ctx.resolved["eps"] = eps;
  return eps;
}

double resolve_single_eps(Context& ctx, double fallback) {
  const auto eps = resolve_eps(ctx, {fallback});
  if (eps.size() != 1) throw ConfigError("this subcommand takes a single --eps value");
  return eps.front();
}

}  // namespace

// ---------------------------------------------------------------------------

void command_nbw(Context& ctx) {
  const int m = ctx.settings.m;
  const int horizon = ctx.settings.t;
  if (horizon < 0) throw ConfigError("--t must be non-negative");
  const auto kernel = nbw_kernel(m, horizon);
  CsvTable table({{"t", "steps"},
                  {"w", "bits"},
                  {"q", "probability"},
                  {"point_prob", "probability"},
                  {"nb_paths", "paths"}});
  for (int t = 0; t <= horizon; ++t) {
    for (int w = 0; w <= m; ++w) {
      const double q = kernel.weight_probability(t, w);
      const double point = nbw_point_prob(kernel, t, w);
      const double paths = t == 0 ? (w == 0 ? 1.0 : 0.0) : nb_path_count(kernel, t, w);
      table.add_row({num(t), num(w), num(q), num(point), num(paths)});
      ctx.output.record({{"record", "kernel"}, {"t", t}, {"w", w}, {"q", q},
                         {"point_prob", point}, {"nb_paths", paths}});
    }
  }
  ctx.output.table(std::move(table));
  ctx.resolved["m"] = m;
  ctx.resolved["t"] = horizon;
  ctx.summary = "kernel m=" + num(m) + " t<=" + num(horizon) +
                ", p^t(0,e1) at t=" + num(horizon) + ": " +
                num(horizon >= 1 ? nbw_point_prob(kernel, horizon, 1) : 0.0);
}

void command_mix(Context& ctx) {
  const int m = ctx.settings.m;
  const double slack = resolve_slack(ctx, m);
  const auto report = uniform_mixing_time(m, slack);
  CsvTable table({{"t", "steps"}, {"uniformity", "1"}});
  for (std::size_t t = 0; t < report.trace.size(); ++t) {
    table.add_row({num(static_cast<std::uint64_t>(t)), num(report.trace[t])});
    ctx.output.record({{"record", "trace"}, {"t", t}, {"uniformity", report.trace[t]}});
  }
  ctx.output.record({{"record", "result"}, {"m", m}, {"slack", slack}, {"t_mix", report.t_mix}});
  ctx.output.table(std::move(table));
  ctx.resolved["t_mix"] = report.t_mix;
  ctx.summary = "T_mix(m=" + num(m) + ", slack=" + num(slack) + ") = " + num(report.t_mix);
}

void command_conditions(Context& ctx) {
  const int m = ctx.settings.m;
  const double slack = resolve_slack(ctx, m);
  const int t_mix = uniform_mixing_time(m, slack).t_mix;
  const double p = ctx.settings.p ? *ctx.settings.p : PcExpansion::eval(m);
  const double p_lace = induction_probability(m, ctx.settings.b);
  const auto profile = condition3_profile(m, t_mix);
  const double c2 = condition2(m, p, t_mix);
  const double c3 = *std::max_element(profile.begin(), profile.end());
  const double norm = m * (m - 1.0) / 2.0;
  const double even = lace_sum_even(m, p_lace, t_mix) * norm;
  const double odd = lace_sum_odd(m, p_lace, t_mix) * norm;
  for (std::size_t w = 0; w < profile.size(); ++w) {
    ctx.output.record({{"record", "condition3_class"}, {"w", w}, {"value", profile[w]}});
  }
  ctx.output.record({{"record", "result"}, {"m", m}, {"t_mix", t_mix}, {"p", p},
                     {"condition2", c2}, {"condition3", c3}, {"p_lace", p_lace},
                     {"lace_even_scaled", even}, {"lace_odd_scaled", odd}});
  CsvTable table({{"m", "1"},
                  {"slack", "1"},
                  {"t_mix", "steps"},
                  {"p", "probability"},
                  {"condition2", "1"},
                  {"condition3", "1"},
                  {"condition3_log_v", "1"},
                  {"p_lace", "probability"},
                  {"lace_even_scaled", "1"},
                  {"lace_odd_scaled", "1"}});
  table.add_row({num(m), num(slack), num(t_mix), num(p), num(c2), num(c3),
                 num(c3 * m * std::log(2.0)), num(p_lace), num(even), num(odd)});
  ctx.output.table(std::move(table));
  ctx.resolved["t_mix"] = t_mix;
  ctx.resolved["p"] = p;
  ctx.resolved["p_lace"] = p_lace;
  ctx.summary = "m=" + num(m) + " T_mix=" + num(t_mix) + " condition2=" + num(c2) +
                " condition3=" + num(c3);
}

void command_pc(Context& ctx) {
  const auto g = ctx.graph();
  PcSolveOptions options;
  options.initial_trials = ctx.settings.trials_per_probe;
  options.max_trials_per_probe = ctx.settings.probe_budget;
  const auto report = pc_solve(g, ctx.settings.lambda, ctx.mc(), options);
  CsvTable table({{"probe", "1"},
                  {"p", "probability"},
                  {"chi_mean", "vertices"},
                  {"chi_stderr", "vertices"},
                  {"trials", "trials"},
                  {"verdict", "1"},
                  {"lower_bound", "1"}});
  for (std::size_t i = 0; i < report.probes.size(); ++i) {
    const auto& probe = report.probes[i];
    table.add_row({num(static_cast<std::uint64_t>(i)), num(probe.p), num(probe.chi.mean),
                   num(probe.chi.std_error), num(probe.chi.n), num(probe.verdict),
                   probe.chi.lower_bound ? "1" : "0"});
    ctx.output.record({{"record", "probe"}, {"index", i}, {"p", probe.p},
                       {"chi", estimate_json(probe.chi)}, {"verdict", probe.verdict}});
  }
  const double expansion = g.is_hypercube() ? PcExpansion::eval(g.dimension()) : 0.0;
  ctx.output.record({{"record", "result"},
                     {"lambda", report.lambda},
                     {"target", report.target},
                     {"pc_hat", report.pc_hat},
                     {"lo", report.lo},
                     {"hi", report.hi},
                     {"tolerance", report.tolerance},
                     {"converged", report.converged},
                     {"budget_exhausted", report.budget_exhausted},
                     {"expansion_3_terms", expansion}});
  ctx.output.table(std::move(table));
  ctx.resolved["target"] = report.target;
  ctx.resolved["tolerance"] = report.tolerance;
  ctx.resolved["pc_hat"] = report.pc_hat;
  ctx.summary = "pc_hat=" + num(report.pc_hat) + " bracket=[" + num(report.lo) + ", " +
                num(report.hi) + "] probes=" + num(static_cast<std::uint64_t>(report.probes.size())) +
                (report.budget_exhausted ? " (probe budget exhausted)" : "");
}

void command_window(Context& ctx) {
  const auto g = ctx.graph();
  const double pc = resolve_pc(ctx, g);
  const auto eps = resolve_eps(ctx, {-0.2, 0.0, 0.2});
  const auto rows = window_scan(g, pc, eps, ctx.mc());
  const auto v = g.vertex_count();
  const double vd = static_cast<double>(v);
  const double omega = ctx.settings.omega;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CsvTable table({{"eps", "1"},
                  {"p", "probability"},
                  {"k0", "vertices"},
                  {"sweeps", "sweeps"},
                  {"median_c1", "vertices"},
                  {"median_c1_over_2epsV", "1"},
                  {"median_c2_over_epsV", "1"},
                  {"mean_chi", "vertices"},
                  {"mean_chi_over_4eps2V", "1"},
                  {"median_c1_over_V23", "1"},
                  {"median_z_over_2epsV", "1"},
                  {"frac_subcritical_band", "1"},
                  {"frac_critical_band", "1"}});
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.sweeps.size(); ++i) {
      const auto& s = row.sweeps[i];
      ctx.output.record({{"record", "sweep"}, {"eps", row.eps}, {"trial", i}, {"c1", s.c1},
                         {"c2", s.c2}, {"chi", s.chi}, {"z_k0", s.z_k0}});
    }
    const bool signed_eps = row.eps != 0.0;
    const auto chi = row.chi_values();
    const double mean_chi = estimate_of(chi).mean;
    double sub_band = nan;
    if (row.eps < 0.0) {
      const double a = -row.eps;
      sub_band = fraction_within(row.c1_values(), 1.0 / (3600 * a * a),
                                 3.0 * std::log(a * a * a * vd) / (a * a));
    }
    const double crit_band =
        row.eps == 0.0 ? fraction_within(row.c1_over_v23(v), 1.0 / omega, omega) : nan;
    table.add_row({num(row.eps), num(row.p), num(row.k0),
                   num(static_cast<std::uint64_t>(row.sweeps.size())), num(median(row.c1_values())),
                   signed_eps ? num(median(row.c1_over_2eps_v(v))) : num(nan),
                   signed_eps ? num(median(row.c2_over_eps_v(v))) : num(nan), num(mean_chi),
                   signed_eps ? num(mean_chi / (4 * row.eps * row.eps * vd)) : num(nan),
                   num(median(row.c1_over_v23(v))),
                   row.k0 > 0.0 ? num(median(row.z_over_2eps_v(v))) : num(nan), num(sub_band),
                   num(crit_band)});
  }
  ctx.output.table(std::move(table));
  ctx.summary = "window scan of " + g.to_string() + " at pc=" + num(pc) + " over " +
                num(static_cast<std::uint64_t>(eps.size())) + " eps values";
}

void command_triangle(Context& ctx) {
  const auto g = ctx.graph();
  const double p = ctx.settings.p ? *ctx.settings.p : resolve_pc(ctx, g);
  ctx.resolved["p"] = p;
  const auto report = triangle_condition_report(g, p, ctx.mc());
  CsvTable table({{"distance", "bits"},
                  {"y", "vertex"},
                  {"nabla_mean", "1"},
                  {"nabla_stderr", "1"},
                  {"trials", "trials"}});
  for (const auto& row : report.rows) {
    table.add_row({num(row.distance), num(row.y), num(row.value.mean), num(row.value.std_error),
                   num(row.value.n)});
    ctx.output.record({{"record", "class"}, {"distance", row.distance}, {"y", row.y},
                       {"nabla", estimate_json(row.value)}});
  }
  ctx.output.record({{"record", "result"},
                     {"p", p},
                     {"chi", estimate_json(report.chi)},
                     {"diagonal_excess", report.diagonal_excess},
                     {"offdiagonal_max", report.offdiagonal_max},
                     {"chi_cubed_over_v", report.chi_cubed_over_v},
                     {"implied_c", report.implied_c}});
  ctx.output.table(std::move(table));
  ctx.summary = "off-diagonal max=" + num(report.offdiagonal_max) +
                " diagonal excess=" + num(report.diagonal_excess) +
                " chi^3/V=" + num(report.chi_cubed_over_v);
}

void command_balls(Context& ctx) {
  const auto g = ctx.graph();
  const double p = ctx.settings.p ? *ctx.settings.p
                                   : induction_probability(dimension_of(g), ctx.settings.b);
  ctx.resolved["p"] = p;
  const auto report = ball_growth_mc(g, p, ctx.settings.kmax, ctx.mc());
  CsvTable table({{"k", "steps"},
                  {"boundary_mean", "vertices"},
                  {"boundary_stderr", "vertices"},
                  {"ball_mean", "vertices"},
                  {"ball_stderr", "vertices"},
                  {"ratio", "1"},
                  {"ratio_stderr", "1"}});
  for (std::size_t k = 0; k < report.levels.size(); ++k) {
    table.add_row({num(static_cast<std::uint64_t>(k)), num(report.levels[k].mean),
                   num(report.levels[k].std_error), num(report.cumulative[k].mean),
                   num(report.cumulative[k].std_error), num(report.ratio[k]),
                   num(report.ratio_error[k])});
    ctx.output.record({{"record", "level"}, {"k", k},
                       {"boundary", estimate_json(report.levels[k])},
                       {"ball", estimate_json(report.cumulative[k])},
                       {"ratio", num(report.ratio[k])}});
  }
  ctx.output.record({{"record", "result"},
                     {"p", p},
                     {"stop_threshold", report.stop_threshold},
                     {"stop_k", report.stop_k ? json(*report.stop_k) : json(nullptr)},
                     {"ratios_at_least_one", report.ratios_at_least_one}});
  ctx.output.table(std::move(table));
  ctx.summary = "p=" + num(p) + " stop k=" + (report.stop_k ? num(*report.stop_k) : "none") +
                " ratios>=1: " + (report.ratios_at_least_one ? "yes" : "no");
}

void command_sprinkle(Context& ctx) {
  const auto g = ctx.graph();
  const double pc = resolve_pc(ctx, g);
  const double eps = resolve_single_eps(ctx, 0.2);
  const auto report = sprinkle_experiment(g, pc, eps, ctx.settings.theta, ctx.mc());
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const auto& t = report.trials[i];
    ctx.output.record({{"record", "trial"}, {"trial", i}, {"round1_c1", t.round1_c1},
                       {"union_c1", t.union_c1}, {"round1_open", t.round1_open},
                       {"union_open", t.union_open}});
  }
  const double expected_open = static_cast<double>(g.edge_count()) * report.plan.p;
  CsvTable table({{"p", "probability"},
                  {"p1", "probability"},
                  {"p2", "probability"},
                  {"trials", "trials"},
                  {"median_union_c1_over_2epsV", "1"},
                  {"min_gain", "1"},
                  {"median_gain", "1"},
                  {"union_open_mean", "edges"},
                  {"union_open_stderr", "edges"},
                  {"expected_open", "edges"}});
  table.add_row({num(report.plan.p), num(report.plan.p1), num(report.plan.p2),
                 num(static_cast<std::uint64_t>(report.trials.size())),
                 num(report.median_union_c1_over_2eps_v), num(report.min_gain),
                 num(report.median_gain), num(report.union_open.mean),
                 num(report.union_open.std_error), num(expected_open)});
  ctx.output.table(std::move(table));
  ctx.resolved["p"] = report.plan.p;
  ctx.resolved["p1"] = report.plan.p1;
  ctx.resolved["p2"] = report.plan.p2;
  ctx.summary = "median union C1/(2 eps V)=" + num(report.median_union_c1_over_2eps_v) +
                " min gain=" + num(report.min_gain);
}

void command_goodpairs(Context& ctx) {
  const auto g = ctx.graph();
  const double eps = resolve_single_eps(ctx, 0.25);
  const double p = ctx.settings.p ? *ctx.settings.p : resolve_pc(ctx, g) * (1.0 + eps);
  ctx.resolved["p"] = p;
  auto radii = default_probe_radii(eps, g.vertex_count());
  if (ctx.settings.r) radii.r = *ctx.settings.r;
  if (ctx.settings.r0) radii.r0 = *ctx.settings.r0;
  ctx.resolved["r"] = radii.r;
  ctx.resolved["r0"] = radii.r0;
  const auto census = good_pair_census(g, p, eps, radii, ctx.settings.pairs, 0.0, ctx.mc());
  ctx.resolved["ball_mean_r0"] = census.ball_mean_r0;
  for (std::size_t i = 0; i < census.verdicts.size(); ++i) {
    const auto& v = census.verdicts[i];
    ctx.output.record({{"record", "pair"}, {"index", i}, {"x", census.x[i]}, {"y", census.y[i]},
                       {"cond1", v.cond1}, {"cond2", v.cond2}, {"cond3", v.cond3},
                       {"s_count", v.s_count}, {"s_threshold", v.s_threshold},
                       {"balls_disjoint", v.balls_disjoint}, {"good", v.good()}});
  }
  CsvTable table({{"p", "probability"},
                  {"eps", "1"},
                  {"r", "steps"},
                  {"r0", "steps"},
                  {"ball_mean_r0", "vertices"},
                  {"pairs", "pairs"},
                  {"good_fraction", "1"},
                  {"good_stderr", "1"},
                  {"cond1_fraction", "1"},
                  {"cond2_fraction", "1"},
                  {"cond3_fraction", "1"},
                  {"disjoint_fraction", "1"},
                  {"mean_s", "edges"},
                  {"target", "1"},
                  {"ratio", "1"}});
  table.add_row({num(p), num(eps), num(radii.r), num(radii.r0), num(census.ball_mean_r0),
                 num(census.good.n), num(census.good.mean), num(census.good.std_error),
                 num(census.cond1.mean), num(census.cond2.mean), num(census.cond3.mean),
                 num(census.disjoint.mean), num(census.s_count.mean), num(census.target),
                 num(census.ratio)});
  ctx.output.table(std::move(table));
  ctx.summary = "good fraction=" + num(census.good.mean) + " target (2 eps)^2=" +
                num(census.target) + " ratio=" + num(census.ratio);
}

void command_er(Context& ctx) {
  const double eps = resolve_single_eps(ctx, 0.2);
  Regime regime;
  if (ctx.settings.regime == "auto") {
    regime = eps < 0.0 ? Regime::subcritical
                       : (eps > 0.0 ? Regime::supercritical : Regime::critical);
  } else {
    regime = parse_regime(ctx.settings.regime);
  }
  ctx.resolved["regime"] = to_string(regime);
  const auto report = gnp_phase_check(ctx.settings.n, eps, regime, ctx.mc());
  for (std::size_t i = 0; i < report.sweeps.size(); ++i) {
    const auto& s = report.sweeps[i];
    ctx.output.record({{"record", "sweep"}, {"trial", i}, {"c1", s.c1}, {"c2", s.c2},
                       {"chi", s.chi}});
  }
  CsvTable table({{"n", "vertices"},
                  {"eps", "1"},
                  {"regime", "1"},
                  {"p", "probability"},
                  {"sweeps", "sweeps"},
                  {"c1_scale", "vertices"},
                  {"median_c1_normalized", "1"},
                  {"median_c2_over_c1", "1"}});
  table.add_row({num(report.n), num(eps), to_string(regime), num(report.p),
                 num(static_cast<std::uint64_t>(report.sweeps.size())), num(report.c1_scale),
                 num(report.median_c1_normalized), num(report.median_c2_over_c1)});
  ctx.output.table(std::move(table));
  ctx.resolved["p"] = report.p;
  ctx.summary = std::string(to_string(regime)) + " n=" + num(report.n) +
                " median C1/scale=" + num(report.median_c1_normalized) +
                " median C2/C1=" + num(report.median_c2_over_c1);
}

void command_oracle(Context& ctx) {
  const auto g = ctx.graph();
  const double p = ctx.settings.p ? *ctx.settings.p : 0.3;
  ctx.resolved["p"] = p;
  const VertexId x = ctx.settings.x;
  CsvTable table({{"quantity", "1"}, {"argument", "1"}, {"value", "1"}});
  auto add = [&](const std::string& quantity, std::uint64_t argument, double value) {
    table.add_row({quantity, num(argument), num(value)});
    ctx.output.record({{"record", "exact"}, {"quantity", quantity}, {"argument", argument},
                       {"value", value}});
  };
  const double chi = exact_chi(g, p, x);
  add("chi", x, chi);
  add("tail", ctx.settings.k, exact_tail(g, p, x, ctx.settings.k));
  for (VertexId y = 0; y < g.vertex_count(); ++y) add("two_point", y, exact_two_point(g, p, x, y));
  for (VertexId y = 0; y < g.vertex_count(); ++y) add("triangle", y, exact_triangle(g, p, x, y));
  const auto levels = exact_ball_levels(g, p, x, ctx.settings.kmax);
  for (std::size_t k = 0; k < levels.size(); ++k) add("ball_level", k, levels[k]);
  ctx.output.table(std::move(table));
  ctx.summary = "exact chi=" + num(chi) + " on " + g.to_string() + " at p=" + num(p);
}

void command_selftest(Context& ctx) {
  const auto checks = run_selftest(ctx.settings.threads);
  CsvTable table({{"check", "1"}, {"passed", "1"}, {"detail", "1"}});
  std::size_t failed = 0;
  for (const auto& c : checks) {
    table.add_row({c.name, c.passed ? "true" : "false", c.detail});
    ctx.output.record({{"record", "check"}, {"name", c.name}, {"passed", c.passed},
                       {"detail", c.detail}});
    if (!c.passed) ++failed;
  }
  ctx.output.table(std::move(table));
  ctx.exit_code = failed == 0 ? kSuccess : kSelftestFailure;
  ctx.summary = num(static_cast<std::uint64_t>(checks.size() - failed)) + "/" +
                num(static_cast<std::uint64_t>(checks.size())) + " checks passed";
}

}  // namespace percolab::cli
