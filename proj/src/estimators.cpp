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

#include "percolab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "percolab/parallel.hpp"

namespace percolab {
namespace {

constexpr std::uint32_t kDefaultStream = 0;
constexpr std::uint32_t kBallPrepassStream = 4;
constexpr std::uint32_t kPairStream = 5;

void check_config(const MCConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (!(cfg.z > 0.0)) throw ConfigError("confidence multiplier z must be positive");
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(std::string(what) + " = " + std::to_string(p) + " outside [0, 1]");
  }
}

RunningStats cluster_sizes(const GraphSpec& spec, double p, std::uint64_t first,
                           std::uint64_t count, const MCConfig& cfg) {
  return accumulate_trials(
      first, count, cfg.threads, [&] { return Explorer(spec); },
      [&](std::uint64_t trial, Explorer& explorer) {
        const EdgeSampler sampler(cfg.master_seed, trial, kDefaultStream, p);
        return static_cast<double>(explorer.explore_cluster(sampler, 0, cfg.cap).size);
      });
}

// floor(draw * bound / 2^64), an unbiased enough index for bound << 2^64.
std::uint64_t scale_draw(std::uint64_t draw, std::uint64_t bound) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(draw) * bound) >> 64);
}

Estimate bernoulli_estimate(const std::vector<double>& values) { return estimate_of(values); }

}  // namespace

// ---------------------------------------------------------------------------

double PcExpansion::coefficient(int i) {
  if (i < 1 || i > 4) throw ConfigError("expansion coefficients exist for i = 1..4");
  return kCoefficients[i - 1];
}

double PcExpansion::eval(double m, int terms) {
  if (terms < 0 || terms > 4) throw ConfigError("expansion terms must be in 0..4");
  double total = 0.0;
  double power = 1.0;
  for (int i = 1; i <= terms; ++i) {
    power /= m;
    total += kCoefficients[i - 1] * power;
  }
  return total;
}

Estimate chi_mc(const GraphSpec& spec, double p, const MCConfig& cfg) {
  check_config(cfg);
  check_probability(p, "p");
  auto estimate = cluster_sizes(spec, p, 0, cfg.trials, cfg).estimate();
  estimate.lower_bound = cfg.cap != 0;
  return estimate;
}

Estimate tail_mc(const GraphSpec& spec, double p, std::uint64_t k, const MCConfig& cfg) {
  check_config(cfg);
  check_probability(p, "p");
  if (k < 1) throw ConfigError("tail_mc needs k >= 1");
  return accumulate_trials(
             0, cfg.trials, cfg.threads, [&] { return Explorer(spec); },
             [&](std::uint64_t trial, Explorer& explorer) {
               const EdgeSampler sampler(cfg.master_seed, trial, kDefaultStream, p);
               return explorer.explore_cluster(sampler, 0, k).size >= k ? 1.0 : 0.0;
             })
      .estimate();
}

// ---------------------------------------------------------------------------

CriticalSolveReport pc_solve(const GraphSpec& spec, double lambda, const MCConfig& cfg,
                             const PcSolveOptions& options) {
  check_config(cfg);
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in (0, 1)");
  const double degree = static_cast<double>(spec.degree());
  if (degree < 2.0) throw ConfigError("pc_solve needs degree >= 2");

  CriticalSolveReport report;
  report.lambda = lambda;
  report.target = lambda * std::cbrt(static_cast<double>(spec.vertex_count()));
  report.tolerance = options.tolerance > 0.0 ? options.tolerance : std::pow(degree, -4.0);
  const std::uint64_t initial = options.initial_trials ? options.initial_trials : cfg.trials;
  const std::uint64_t budget =
      std::max(initial, options.max_trials_per_probe ? options.max_trials_per_probe : 16 * initial);

  // Screening pass with truncated exploration. Truncation only lowers cluster
  // sizes, so a capped lower confidence bound above the target is a valid
  // "above" verdict. Without any truncation the capped run equals the
  // uncapped one and is reused as is.
  const std::uint64_t screen_cap =
      cfg.cap != 0 ? cfg.cap
                   : static_cast<std::uint64_t>(std::ceil(std::max(256.0, 64.0 * report.target)));
  auto probe = [&](double p) {
    PcProbe result{p, {}, 0};
    MCConfig screen = cfg;
    screen.cap = screen_cap;
    RunningStats stats = cluster_sizes(spec, p, 0, initial, screen);
    const bool truncated = stats.estimate().max >= static_cast<double>(screen_cap);
    if (truncated && cfg.cap == 0) {
      result.chi = stats.estimate();
      result.chi.lower_bound = true;
      if (result.chi.mean - cfg.z * result.chi.std_error > report.target) {
        result.verdict = 1;
        report.probes.push_back(result);
        return result.verdict;
      }
      stats = cluster_sizes(spec, p, 0, initial, cfg);
    }
    while (true) {
      result.chi = stats.estimate();
      result.chi.lower_bound = cfg.cap != 0;
      const double half_width = cfg.z * result.chi.std_error;
      if (result.chi.mean - half_width > report.target) {
        result.verdict = 1;
        break;
      }
      if (result.chi.mean + half_width < report.target) {
        result.verdict = -1;
        break;
      }
      const std::uint64_t done = stats.count();
      if (done >= budget) break;
      stats.merge(cluster_sizes(spec, p, done, std::min(done, budget - done), cfg));
    }
    report.probes.push_back(result);
    return result.verdict;
  };

  report.lo = 1.0 / (2.0 * (degree - 1.0));
  report.hi = std::min(1.0, 2.0 / (degree - 1.0));
  if (probe(report.lo) != -1 || probe(report.hi) != 1) {
    throw BracketError("initial bracket [" + std::to_string(report.lo) + ", " +
                       std::to_string(report.hi) + "] does not straddle chi = " +
                       std::to_string(report.target));
  }
  while (report.hi - report.lo > report.tolerance &&
         static_cast<int>(report.probes.size()) < options.max_probes) {
    const double mid = 0.5 * (report.lo + report.hi);
    const int verdict = probe(mid);
    if (verdict == 0) {
      report.budget_exhausted = true;
      report.pc_hat = mid;
      return report;
    }
    (verdict > 0 ? report.hi : report.lo) = mid;
  }
  report.converged = report.hi - report.lo <= report.tolerance;
  report.pc_hat = 0.5 * (report.lo + report.hi);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct TriangleScratch {
  explicit TriangleScratch(const GraphSpec& spec)
      : explorer(spec), counts(spec.vertex_count(), 0) {}
  Explorer explorer;
  std::vector<std::uint32_t> counts;  // indexed by omega2 root
};

}  // namespace

Estimate triangle_mc(const GraphSpec& spec, double p, VertexId x, VertexId y,
                     const MCConfig& cfg) {
  check_config(cfg);
  check_probability(p, "p");
  if (x >= spec.vertex_count() || y >= spec.vertex_count()) {
    throw ConfigError("triangle endpoints out of range");
  }
  check_sweep_budget(spec);
  return accumulate_trials(
             0, cfg.trials, cfg.threads, [&] { return TriangleScratch(spec); },
             [&](std::uint64_t trial, TriangleScratch& scratch) {
               const EdgeSampler first(cfg.master_seed, trial, 1, p);
               const EdgeSampler middle(cfg.master_seed, trial, 2, p);
               const EdgeSampler last(cfg.master_seed, trial, 3, p);
               auto forest = sweep_forest(spec, middle);
               const auto cluster_y = scratch.explorer.cluster(last, y);
               for (const VertexId v : cluster_y) {
                 ++scratch.counts[forest.find(static_cast<std::uint32_t>(v))];
               }
               const auto cluster_x = scratch.explorer.cluster(first, x);
               double total = 0.0;
               for (const VertexId u : cluster_x) {
                 total += scratch.counts[forest.find(static_cast<std::uint32_t>(u))];
               }
               for (const VertexId v : cluster_y) {
                 scratch.counts[forest.find(static_cast<std::uint32_t>(v))] = 0;
               }
               return total;
             })
      .estimate();
}

TriangleConditionReport triangle_condition_report(const GraphSpec& spec, double pc_hat,
                                                  const MCConfig& cfg) {
  TriangleConditionReport report;
  report.p = pc_hat;
  report.chi = chi_mc(spec, pc_hat, cfg);
  const int classes = spec.is_hypercube() ? spec.dimension() : 1;
  for (int w = 0; w <= classes; ++w) {
    const VertexId y = spec.is_hypercube() ? (VertexId{1} << w) - 1 : static_cast<VertexId>(w);
    report.rows.push_back({w, y, triangle_mc(spec, pc_hat, 0, y, cfg)});
  }
  report.diagonal_excess = report.rows.front().value.mean - 1.0;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    report.offdiagonal_max = std::max(report.offdiagonal_max, report.rows[i].value.mean);
  }
  const double chi = report.chi.mean;
  report.chi_cubed_over_v = chi * chi * chi / static_cast<double>(spec.vertex_count());
  report.implied_c = report.offdiagonal_max / report.chi_cubed_over_v;
  return report;
}

std::vector<ChiOdeRow> chi_ode_check(const GraphSpec& spec, double pc_hat, double chi_pc,
                                     const std::vector<double>& p_list, const MCConfig& cfg) {
  if (!(chi_pc > 0.0)) throw ConfigError("chi(pc) must be positive");
  const double degree = static_cast<double>(spec.degree());
  std::vector<ChiOdeRow> rows;
  for (const double p : p_list) {
    if (!(p < pc_hat)) throw ConfigError("chi_ode_check needs every p below pc");
    ChiOdeRow row;
    row.p = p;
    row.chi = chi_mc(spec, p, cfg);
    row.predicted = 1.0 / (degree * (pc_hat - p) + 1.0 / chi_pc);
    row.ratio = row.chi.mean / row.predicted;
    row.integrated_lhs = 1.0 / chi_pc - 1.0 / row.chi.mean;
    row.integrated_rhs = -degree * (pc_hat - p);
    const double lhs_error = row.chi.std_error / (row.chi.mean * row.chi.mean);
    row.integrated_holds = row.integrated_lhs + cfg.z * lhs_error >= row.integrated_rhs;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

double window_k0(double eps, std::uint64_t vertex_count) {
  if (eps == 0.0) return 0.0;
  const double a = std::abs(eps);
  return std::pow(a * a * a * static_cast<double>(vertex_count), 0.25) / (a * a);
}

namespace {

template <class F>
std::vector<double> map_sweeps(const std::vector<SweepRecord>& sweeps, F&& f) {
  std::vector<double> out;
  out.reserve(sweeps.size());
  for (const auto& s : sweeps) out.push_back(f(s));
  return out;
}

SweepRecord record_of(const SweepSummary& summary, double k0) {
  SweepRecord record{summary.c1, summary.c2, summary.susceptibility(), 0};
  if (k0 > 0.0) record.z_k0 = z_at_least(summary, static_cast<std::uint64_t>(std::ceil(k0)));
  return record;
}

}  // namespace

std::vector<double> WindowScanRow::c1_over_2eps_v(std::uint64_t v) const {
  const double scale = 2.0 * eps * static_cast<double>(v);
  return map_sweeps(sweeps, [&](const SweepRecord& s) { return s.c1 / scale; });
}
std::vector<double> WindowScanRow::c2_over_eps_v(std::uint64_t v) const {
  const double scale = eps * static_cast<double>(v);
  return map_sweeps(sweeps, [&](const SweepRecord& s) { return s.c2 / scale; });
}
std::vector<double> WindowScanRow::chi_over_4eps2_v(std::uint64_t v) const {
  const double scale = 4.0 * eps * eps * static_cast<double>(v);
  return map_sweeps(sweeps, [&](const SweepRecord& s) { return s.chi / scale; });
}
std::vector<double> WindowScanRow::c1_over_v23(std::uint64_t v) const {
  const double scale = std::pow(static_cast<double>(v), 2.0 / 3.0);
  return map_sweeps(sweeps, [&](const SweepRecord& s) { return s.c1 / scale; });
}
std::vector<double> WindowScanRow::z_over_2eps_v(std::uint64_t v) const {
  const double scale = 2.0 * eps * static_cast<double>(v);
  return map_sweeps(sweeps, [&](const SweepRecord& s) { return s.z_k0 / scale; });
}
std::vector<double> WindowScanRow::c1_values() const {
  return map_sweeps(sweeps, [](const SweepRecord& s) { return static_cast<double>(s.c1); });
}
std::vector<double> WindowScanRow::chi_values() const {
  return map_sweeps(sweeps, [](const SweepRecord& s) { return s.chi; });
}

std::vector<WindowScanRow> window_scan(const GraphSpec& spec, double pc_hat,
                                       const std::vector<double>& eps_list, const MCConfig& cfg) {
  check_config(cfg);
  check_sweep_budget(spec);
  std::vector<WindowScanRow> rows;
  for (const double eps : eps_list) {
    WindowScanRow row;
    row.eps = eps;
    row.p = pc_hat * (1.0 + eps);
    check_probability(row.p, "pc (1 + eps)");
    row.k0 = window_k0(eps, spec.vertex_count());
    row.sweeps = collect_trials<SweepRecord>(
        cfg.trials, cfg.threads, [] { return 0; },
        [&](std::uint64_t trial, int&) {
          const EdgeSampler sampler(cfg.master_seed, trial, kDefaultStream, row.p);
          return record_of(full_sweep(spec, sampler), row.k0);
        });
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------

double induction_probability(int m, double b) {
  if (m < 2) throw ConfigError("induction probability needs m >= 2");
  const double md = m;
  return (1.0 + 5.0 / (2.0 * md * md) + b / (md * md * md)) / (md - 1.0);
}

BallGrowthReport ball_growth_mc(const GraphSpec& spec, double p, int kmax, const MCConfig& cfg) {
  check_config(cfg);
  check_probability(p, "p");
  if (kmax < 1) throw ConfigError("ball growth needs kmax >= 1");
  const auto growth = collect_trials<BallGrowth>(
      cfg.trials, cfg.threads, [&] { return Explorer(spec); },
      [&](std::uint64_t trial, Explorer& explorer) {
        const EdgeSampler sampler(cfg.master_seed, trial, kDefaultStream, p);
        return explorer.intrinsic_ball(sampler, 0, kmax);
      });

  const auto levels = static_cast<std::size_t>(kmax) + 1;
  std::vector<RunningStats> level_stats(levels);
  std::vector<RunningStats> cumulative_stats(levels);
  for (const auto& g : growth) {
    for (std::size_t k = 0; k < levels; ++k) {
      level_stats[k].add(static_cast<double>(g.levels[k]));
      cumulative_stats[k].add(static_cast<double>(g.cumulative[k]));
    }
  }

  BallGrowthReport report;
  report.p = p;
  const double degree = static_cast<double>(spec.degree());
  report.stop_threshold =
      std::sqrt(static_cast<double>(spec.vertex_count())) / (degree * degree * degree);
  report.ratios_at_least_one = true;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < levels; ++k) {
    report.levels.push_back(level_stats[k].estimate());
    report.cumulative.push_back(cumulative_stats[k].estimate());
    if (!report.stop_k && report.cumulative[k].mean >= report.stop_threshold) {
      report.stop_k = static_cast<int>(k);
    }
    const bool defined = k > 0 && report.levels[k - 1].mean > 0.0;
    if (!defined) {
      report.ratio.push_back(nan);
      report.ratio_error.push_back(nan);
      continue;
    }
    const auto& now = report.levels[k];
    const auto& before = report.levels[k - 1];
    const double ratio = now.mean / before.mean;
    const double rel_now = now.mean > 0.0 ? now.std_error / now.mean : 0.0;
    const double rel_before = before.std_error / before.mean;
    const double error = ratio * std::hypot(rel_now, rel_before);
    report.ratio.push_back(ratio);
    report.ratio_error.push_back(error);
    const bool before_stop = !report.stop_k || static_cast<int>(k) <= *report.stop_k;
    if (before_stop && ratio + cfg.z * error < 1.0) report.ratios_at_least_one = false;
  }
  return report;
}

// ---------------------------------------------------------------------------

GoodPairCensus good_pair_census(const GraphSpec& spec, double p, double eps, ProbeRadii radii,
                                std::uint64_t pair_samples, double ball_mean_r0,
                                const MCConfig& cfg) {
  check_config(cfg);
  check_probability(p, "p");
  if (!(eps > 0.0)) throw ConfigError("good-pair census needs eps > 0");
  if (4.0 * eps * eps > 1.0) throw ConfigError("(2 eps)^2 > 1 is not a valid regime");
  if (pair_samples < 1) throw ConfigError("good-pair census needs at least one pair");
  const std::uint64_t v = spec.vertex_count();

  GoodPairCensus census;
  census.p = p;
  census.eps = eps;
  census.radii = radii;
  census.target = 4.0 * eps * eps;
  if (ball_mean_r0 <= 0.0) {
    ball_mean_r0 = accumulate_trials(
                       0, cfg.trials, cfg.threads, [&] { return Explorer(spec); },
                       [&](std::uint64_t trial, Explorer& explorer) {
                         const EdgeSampler sampler(cfg.master_seed, trial, kBallPrepassStream, p);
                         return static_cast<double>(
                             explorer.intrinsic_ball(sampler, 0, radii.r0).cumulative.back());
                       })
                       .mean();
  }
  census.ball_mean_r0 = ball_mean_r0;
  const GoodPairParams params{radii.r, radii.r0, eps, ball_mean_r0};

  census.x.resize(pair_samples);
  census.y.resize(pair_samples);
  for (std::uint64_t i = 0; i < pair_samples; ++i) {
    const EdgeSampler picker(cfg.master_seed, i, kPairStream, 0.0);
    census.x[i] = scale_draw(picker.auxiliary(0), v);
    census.y[i] = scale_draw(picker.auxiliary(1), v - 1);
    if (census.y[i] >= census.x[i]) ++census.y[i];
  }
  census.verdicts = collect_trials<GoodPairVerdict>(
      pair_samples, cfg.threads, [] { return 0; },
      [&](std::uint64_t i, int&) {
        const EdgeSampler sampler(cfg.master_seed, i, kDefaultStream, p);
        return good_pair_probe(spec, sampler, census.x[i], census.y[i], params);
      });
  const auto& verdicts = census.verdicts;

  auto column = [&](auto f) {
    std::vector<double> values;
    values.reserve(verdicts.size());
    for (const auto& verdict : verdicts) values.push_back(f(verdict));
    return bernoulli_estimate(values);
  };
  census.good = column([](const GoodPairVerdict& g) { return g.good() ? 1.0 : 0.0; });
  census.cond1 = column([](const GoodPairVerdict& g) { return g.cond1 ? 1.0 : 0.0; });
  census.cond2 = column([](const GoodPairVerdict& g) { return g.cond2 ? 1.0 : 0.0; });
  census.cond3 = column([](const GoodPairVerdict& g) { return g.cond3 ? 1.0 : 0.0; });
  census.disjoint = column([](const GoodPairVerdict& g) { return g.balls_disjoint ? 1.0 : 0.0; });
  census.s_count = column([](const GoodPairVerdict& g) { return static_cast<double>(g.s_count); });
  census.ratio = census.good.mean / census.target;
  return census;
}

// ---------------------------------------------------------------------------

SprinkleReport sprinkle_experiment(const GraphSpec& spec, double pc_hat, double eps, double theta,
                                   const MCConfig& cfg) {
  check_config(cfg);
  SprinkleReport report;
  report.plan = sprinkle_plan(spec.degree(), pc_hat, eps, theta);
  check_sweep_budget(spec);
  report.trials = collect_trials<SprinkleTrial>(
      cfg.trials, cfg.threads, [] { return 0; },
      [&](std::uint64_t trial, int&) {
        const auto sweep = sprinkled_sweep(spec, report.plan, cfg.master_seed, trial);
        return SprinkleTrial{sweep.round1.c1, sweep.combined.c1, sweep.round1.open_edge_count,
                             sweep.combined.open_edge_count};
      });

  std::vector<double> normalized;
  std::vector<double> gains;
  std::vector<double> opened;
  const double scale = 2.0 * eps * static_cast<double>(spec.vertex_count());
  for (const auto& t : report.trials) {
    normalized.push_back(static_cast<double>(t.union_c1) / scale);
    gains.push_back(static_cast<double>(t.union_c1) / static_cast<double>(t.round1_c1));
    opened.push_back(static_cast<double>(t.union_open));
  }
  report.median_union_c1_over_2eps_v =
      eps > 0.0 ? median(normalized) : std::numeric_limits<double>::quiet_NaN();
  report.min_gain = *std::min_element(gains.begin(), gains.end());
  report.median_gain = median(gains);
  report.union_open = estimate_of(opened);
  return report;
}

// ---------------------------------------------------------------------------

Regime parse_regime(std::string_view text) {
  if (text == "sub" || text == "subcritical") return Regime::subcritical;
  if (text == "crit" || text == "critical") return Regime::critical;
  if (text == "super" || text == "supercritical") return Regime::supercritical;
  throw ConfigError("unknown regime '" + std::string(text) + "' (sub, crit or super)");
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::subcritical: return "subcritical";
    case Regime::critical: return "critical";
    case Regime::supercritical: return "supercritical";
  }
  return "unknown";
}

GnpReport gnp_phase_check(std::uint64_t n, double eps, Regime regime, const MCConfig& cfg) {
  check_config(cfg);
  if (regime == Regime::subcritical && !(eps < 0.0)) {
    throw ConfigError("subcritical regime needs eps < 0");
  }
  if (regime == Regime::supercritical && !(eps > 0.0)) {
    throw ConfigError("supercritical regime needs eps > 0");
  }
  const auto spec = GraphSpec::complete(n);
  GnpReport report;
  report.n = n;
  report.eps = eps;
  report.regime = regime;
  report.p = (1.0 + eps) / static_cast<double>(n);
  check_probability(report.p, "(1 + eps) / n");
  const double nd = static_cast<double>(n);
  switch (regime) {
    case Regime::supercritical: report.c1_scale = 2.0 * eps * nd; break;
    case Regime::critical: report.c1_scale = std::pow(nd, 2.0 / 3.0); break;
    case Regime::subcritical: {
      const double a = -eps;
      report.c1_scale = 2.0 * std::log(a * a * a * nd) / (a * a);
      if (!(report.c1_scale > 0.0)) throw ConfigError("subcritical scale needs eps^3 n > 1");
      break;
    }
  }
  check_sweep_budget(spec);
  report.sweeps = collect_trials<SweepRecord>(
      cfg.trials, cfg.threads, [] { return 0; },
      [&](std::uint64_t trial, int&) {
        const EdgeSampler sampler(cfg.master_seed, trial, kDefaultStream, report.p);
        return record_of(full_sweep(spec, sampler), 0.0);
      });
  std::vector<double> normalized;
  std::vector<double> ratio;
  for (const auto& s : report.sweeps) {
    normalized.push_back(static_cast<double>(s.c1) / report.c1_scale);
    ratio.push_back(static_cast<double>(s.c2) / static_cast<double>(s.c1));
  }
  report.median_c1_normalized = median(normalized);
  report.median_c2_over_c1 = median(ratio);
  return report;
}

}  // namespace percolab
