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
#include "percolab/estimators.hpp"
#include "percolab/oracle.hpp"

using namespace percolab;

namespace {

bool within(const Estimate& e, double exact, double z = 3.0) {
  return std::abs(e.mean - exact) <= z * e.std_error + 1e-12;
}

MCConfig config(std::uint64_t trials, std::uint64_t seed, unsigned threads = 1) {
  MCConfig cfg;
  cfg.trials = trials;
  cfg.master_seed = seed;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

TEST_CASE("expansion") {
  CHECK(PcExpansion::eval(10) == doctest::Approx(0.1 + 0.01 + 0.0035));
  CHECK(PcExpansion::eval(10, 4) == doctest::Approx(0.1 + 0.01 + 0.0035 + 0.0016));
  for (int m = 2; m < 100; ++m) CHECK(PcExpansion::eval(m + 1) < PcExpansion::eval(m));
  CHECK(PcExpansion::coefficient(3) == 3.5);
  CHECK_THROWS_AS(PcExpansion::coefficient(5), ConfigError);
}

TEST_CASE("trivial chi and tail") {
  const auto q6 = GraphSpec::hypercube(6);
  const auto cfg = config(200, 1);
  const auto zero = chi_mc(q6, 0.0, cfg);
  CHECK(zero.mean == 1.0);
  CHECK(zero.std_error == 0.0);
  CHECK(zero.n == 200);
  const auto one = chi_mc(q6, 1.0, cfg);
  CHECK(one.mean == 64.0);
  CHECK(one.std_error == 0.0);
  CHECK(tail_mc(q6, 0.3, 1, cfg).mean == 1.0);
  CHECK(tail_mc(q6, 0.0, 2, cfg).mean == 0.0);
  MCConfig capped = cfg;
  capped.cap = 5;
  CHECK(chi_mc(q6, 1.0, capped).lower_bound);
  CHECK(chi_mc(q6, 1.0, capped).mean == 5.0);
  CHECK_THROWS_AS(chi_mc(q6, 0.5, config(0, 1)), ConfigError);
}

// About 600 simultaneous comparisons: a 3-sigma band would flag a few by
// chance, so the sweep uses 4 sigma. The single-point checks use 3.
TEST_CASE("estimators agree with the oracle on Q2 and Q3") {
  for (int m : {2, 3}) {
    const auto g = GraphSpec::hypercube(m);
    for (double p : {0.1, 0.25, 0.4, 0.6, 0.8}) {
      for (std::uint64_t seed : {1, 2, 3}) {
        CAPTURE(m);
        CAPTURE(p);
        CAPTURE(seed);
        const auto cfg = config(20000, seed);
        CHECK(within(chi_mc(g, p, cfg), exact_chi(g, p, 0), 4.0));
        CHECK(within(tail_mc(g, p, 3, cfg), exact_tail(g, p, 0, 3), 4.0));
        CHECK(within(triangle_mc(g, p, 0, 1, cfg), exact_triangle(g, p, 0, 1), 4.0));
        const auto balls = ball_growth_mc(g, p, m, cfg);
        const auto exact = exact_ball_levels(g, p, 0, m);
        for (int k = 0; k <= m; ++k) {
          CAPTURE(k);
          CAPTURE((balls.levels[k].mean - exact[k]) / balls.levels[k].std_error);
          CHECK(within(balls.levels[k], exact[k], 4.0));
        }
      }
    }
  }
}

TEST_CASE("triangle examples") {
  CHECK(within(triangle_mc(GraphSpec::hypercube(2), 0.4, 0, 0, config(20000, 4)),
               exact_triangle(GraphSpec::hypercube(2), 0.4, 0, 0)));
  CHECK(within(triangle_mc(GraphSpec::hypercube(3), 0.3, 0, 1, config(20000, 4)),
               exact_triangle(GraphSpec::hypercube(3), 0.3, 0, 1)));
  const auto q4 = GraphSpec::hypercube(4);
  const auto same = triangle_mc(q4, 0.0, 5, 5, config(50, 1));
  CHECK(same.mean == 1.0);
  CHECK(same.min == 1.0);
  CHECK(triangle_mc(q4, 0.0, 5, 6, config(50, 1)).max == 0.0);
}

TEST_CASE("chi is monotone in p per seed") {
  const auto q7 = GraphSpec::hypercube(7);
  double previous = 0.0;
  for (double p = 0.0; p <= 0.4; p += 0.02) {
    const double chi = chi_mc(q7, p, config(300, 9)).mean;
    CHECK(chi >= previous);
    previous = chi;
  }
}

TEST_CASE("results do not depend on the thread count") {
  const auto q9 = GraphSpec::hypercube(9);
  const auto a = chi_mc(q9, 0.13, config(5000, 3, 1));
  const auto b = chi_mc(q9, 0.13, config(5000, 3, 4));
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  const auto wa = window_scan(q9, 0.12, {-0.2, 0.0, 0.3}, config(20, 3, 1));
  const auto wb = window_scan(q9, 0.12, {-0.2, 0.0, 0.3}, config(20, 3, 3));
  for (std::size_t i = 0; i < wa.size(); ++i) {
    for (std::size_t j = 0; j < wa[i].sweeps.size(); ++j) {
      CHECK(wa[i].sweeps[j].c1 == wb[i].sweeps[j].c1);
      CHECK(wa[i].sweeps[j].chi == wb[i].sweeps[j].chi);
    }
  }
}

TEST_CASE("pc solve") {
  const auto g = GraphSpec::complete(400);
  MCConfig cfg = config(2000, 5);
  PcSolveOptions options;
  options.tolerance = 1e-5;
  const auto report = pc_solve(g, 0.5, cfg, options);
  CHECK(report.lo <= report.pc_hat);
  CHECK(report.pc_hat <= report.hi);
  CHECK(report.pc_hat > 0.3 / 400);
  CHECK(report.pc_hat < 1.5 / 400);
  CHECK(report.target == doctest::Approx(0.5 * std::cbrt(400.0)));
  for (const auto& probe : report.probes) {
    if (probe.verdict > 0) CHECK(probe.chi.mean - 3 * probe.chi.std_error > report.target);
    if (probe.verdict < 0) CHECK(probe.chi.mean + 3 * probe.chi.std_error < report.target);
  }
  const auto again = pc_solve(g, 0.5, cfg, options);
  CHECK(again.pc_hat == report.pc_hat);
  CHECK(again.probes.size() == report.probes.size());

  CHECK_THROWS_AS(pc_solve(GraphSpec::hypercube(2), 0.5, cfg), BracketError);
  CHECK_THROWS_AS(pc_solve(g, 1.5, cfg), ConfigError);
}

TEST_CASE("window normalizations") {
  CHECK(window_k0(0.2, 262144) == doctest::Approx(25.0 * std::pow(0.008 * 262144, 0.25)));
  CHECK(window_k0(-0.2, 262144) == window_k0(0.2, 262144));
  CHECK(window_k0(0.0, 262144) == 0.0);
  WindowScanRow row;
  row.eps = 0.25;
  row.sweeps = {{100, 10, 7.0, 50}};
  CHECK(row.c1_over_2eps_v(400)[0] == doctest::Approx(0.5));
  CHECK(row.c2_over_eps_v(400)[0] == doctest::Approx(0.1));
  CHECK(row.chi_over_4eps2_v(400)[0] == doctest::Approx(7.0 / 100));
  CHECK(row.z_over_2eps_v(400)[0] == doctest::Approx(0.25));
  CHECK(row.c1_over_v23(1000)[0] == doctest::Approx(1.0));
}

TEST_CASE("ball growth") {
  const auto q10 = GraphSpec::hypercube(10);
  const double p = induction_probability(10, 10.0);
  CHECK(p == doctest::Approx((1 + 0.025 + 0.01) / 9));
  const auto report = ball_growth_mc(q10, p, 4, config(20000, 2));
  CHECK(within(report.levels[1], 10 * p));
  CHECK(report.levels[0].mean == 1.0);
  CHECK(std::isnan(report.ratio[0]));
  const auto none = ball_growth_mc(q10, 0.0, 3, config(10, 2));
  CHECK(none.levels[1].mean == 0.0);
  CHECK(std::isnan(none.ratio[2]));
  CHECK(report.stop_threshold == doctest::Approx(32.0 / 1000));
  REQUIRE(report.stop_k.has_value());
  CHECK(*report.stop_k == 0);
}

TEST_CASE("good pair census") {
  const auto q8 = GraphSpec::hypercube(8);
  const auto radii = default_probe_radii(0.25, 256);
  const auto zero = good_pair_census(q8, 0.0, 0.25, radii, 20, 0.0, config(50, 1));
  CHECK(zero.good.mean == 0.0);
  CHECK(zero.target == doctest::Approx(0.25));
  CHECK_THROWS_AS(good_pair_census(q8, 0.1, 0.6, radii, 20, 0.0, config(50, 1)), ConfigError);
}

TEST_CASE("sprinkle experiment") {
  const auto q10 = GraphSpec::hypercube(10);
  const auto flat = sprinkle_experiment(q10, 0.1, 0.2, 0.0, config(50, 3));
  CHECK(flat.min_gain == 1.0);
  CHECK(flat.median_gain == 1.0);
  const auto report = sprinkle_experiment(q10, 0.1, 0.2, 0.1, config(2000, 3));
  CHECK(report.min_gain >= 1.0);
  const double expected = q10.edge_count() * report.plan.p;
  CHECK(std::abs(report.union_open.mean - expected) <= 3 * report.union_open.std_error);
}

TEST_CASE("gnp phase check") {
  const auto zero = gnp_phase_check(1000, -1.0, Regime::subcritical, config(5, 1));
  for (const auto& s : zero.sweeps) CHECK(s.c1 == 1);
  CHECK_THROWS_AS(gnp_phase_check(1000, 0.2, Regime::subcritical, config(5, 1)), ConfigError);
  CHECK(parse_regime("super") == Regime::supercritical);
  CHECK_THROWS_AS(parse_regime("hot"), ConfigError);
}

TEST_CASE("chi ode check near p = 0") {
  const auto q8 = GraphSpec::hypercube(8);
  const auto rows = chi_ode_check(q8, 0.15, 10.0, {0.0, 0.05}, config(2000, 1));
  CHECK(rows[0].chi.mean == 1.0);
  CHECK(rows[0].predicted == doctest::Approx(1.0 / (8 * 0.15 + 0.1)));
  CHECK(rows[0].integrated_holds);
  CHECK_THROWS_AS(chi_ode_check(q8, 0.15, 10.0, {0.2}, config(10, 1)), ConfigError);
}
