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

#include <cmath>
#include <string>

#include "cli.hpp"
#include "output.hpp"
#include "percolab/estimators.hpp"
#include "percolab/graph.hpp"
#include "percolab/nbw.hpp"
#include "percolab/oracle.hpp"
#include "percolab/percolation.hpp"
#include "percolab/sampler.hpp"

namespace percolab::cli {
namespace {

SelfCheck check(std::string name, bool passed, std::string detail = {}) {
  return {std::move(name), passed, std::move(detail)};
}

SelfCheck philox_known_answers() {
  const bool ok =
      philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
          PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8} &&
      philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1};
  return check("philox_known_answers", ok);
}

SelfCheck nbw_closed_forms() {
  double worst = 0.0;
  for (int m = 3; m <= 200; ++m) {
    const auto k = nbw_kernel(m, 3);
    const double base = 1.0 / (m * (m - 1.0));
    worst = std::max(worst, std::abs(nbw_point_prob(k, 2, 2) - 2 * base));
    worst = std::max(worst, std::abs(nbw_point_prob(k, 3, 1) - base));
  }
  return check("nbw_closed_forms", worst <= 1e-12, "max error " + format_number(worst));
}

SelfCheck nbw_lumping() {
  double worst = 0.0;
  for (int m = 2; m <= 6; ++m) {
    const auto k = nbw_kernel(m, 7);
    for (int t = 0; t <= 7; ++t) {
      const auto law = nbw_brute(m, t);
      for (VertexId v = 0; v < law.size(); ++v) {
        worst = std::max(worst, std::abs(law[v] - nbw_point_prob(k, t, hamming_distance(v, 0))));
      }
    }
  }
  return check("nbw_lumping", worst <= 1e-12, "max error " + format_number(worst));
}

SelfCheck nbw_path_integrality() {
  try {
    for (int m = 2; m <= 50; ++m) {
      const auto k = nbw_kernel(m, 12);
      for (int t = 1; t <= 12; ++t) {
        for (int w = 0; w <= m; ++w) nb_path_count(k, t, w);
      }
    }
  } catch (const std::exception& e) {
    return check("nbw_path_integrality", false, e.what());
  }
  return check("nbw_path_integrality", true);
}

SelfCheck intersection_sums() {
  for (int m = 1; m <= 8; ++m) {
    for (int w = 0; w <= m; ++w) {
      for (int w1 = 0; w1 <= m; ++w1) {
        std::uint64_t total = 0;
        for (int w2 = 0; w2 <= m; ++w2) total += intersection_number(m, w, w1, w2);
        if (total != binomial(m, w1)) return check("intersection_sums", false);
      }
    }
  }
  return check("intersection_sums", true);
}

SelfCheck sweep_consistency() {
  const auto g = GraphSpec::hypercube(8);
  Explorer explorer(g);
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const EdgeSampler s(11, trial, 0, 0.15);
    auto forest = sweep_forest(g, s);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (forest.component_size(static_cast<std::uint32_t>(v)) !=
          explorer.explore_cluster(s, v).size) {
        return check("sweep_consistency", false, "trial " + std::to_string(trial));
      }
    }
  }
  return check("sweep_consistency", true);
}

SelfCheck oracle_agreement() {
  const auto q3 = GraphSpec::hypercube(3);
  MCConfig cfg;
  cfg.trials = 100000;
  cfg.master_seed = 2;
  const auto chi = chi_mc(q3, 0.3, cfg);
  const double exact = exact_chi(q3, 0.3, 0);
  const double z = std::abs(chi.mean - exact) / chi.std_error;
  return check("chi_vs_oracle", z <= 3.0, "z " + format_number(z));
}

SelfCheck triangle_agreement() {
  const auto q2 = GraphSpec::hypercube(2);
  MCConfig cfg;
  cfg.trials = 100000;
  cfg.master_seed = 3;
  const auto tri = triangle_mc(q2, 0.4, 0, 0, cfg);
  const double z = std::abs(tri.mean - exact_triangle(q2, 0.4, 0, 0)) / tri.std_error;
  return check("triangle_vs_oracle", z <= 3.0, "z " + format_number(z));
}

SelfCheck sprinkle_identity() {
  const auto plan = sprinkle_plan(16, PcExpansion::eval(16), 0.2, 0.1);
  const double gap = std::abs((1 - plan.p1) * (1 - plan.p2) - (1 - plan.p));
  return check("sprinkle_identity", gap <= 1e-15 && plan.p2 == 0.1 * 0.2 / 16,
               "gap " + format_number(gap));
}

SelfCheck thread_determinism(unsigned threads) {
  const auto g = GraphSpec::hypercube(10);
  MCConfig one;
  one.trials = 3000;
  one.master_seed = 5;
  MCConfig many = one;
  many.threads = std::max(2u, threads);
  const auto a = chi_mc(g, 0.11, one);
  const auto b = chi_mc(g, 0.11, many);
  return check("thread_determinism", a.mean == b.mean && a.std_error == b.std_error);
}

}  // namespace

std::vector<SelfCheck> run_selftest(unsigned threads) {
  std::vector<SelfCheck> checks;
  auto guarded = [&](const char* name, auto fn) {
    try {
      checks.push_back(fn());
    } catch (const std::exception& e) {
      checks.push_back(check(name, false, e.what()));
    }
  };
  guarded("philox_known_answers", philox_known_answers);
  guarded("nbw_closed_forms", nbw_closed_forms);
  guarded("nbw_lumping", nbw_lumping);
  guarded("nbw_path_integrality", nbw_path_integrality);
  guarded("intersection_sums", intersection_sums);
  guarded("sweep_consistency", sweep_consistency);
  guarded("chi_vs_oracle", oracle_agreement);
  guarded("triangle_vs_oracle", triangle_agreement);
  guarded("sprinkle_identity", sprinkle_identity);
  guarded("thread_determinism", [threads] { return thread_determinism(threads); });
  return checks;
}

}  // namespace percolab::cli
