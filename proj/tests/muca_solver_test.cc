// Copyright 2026 The Flowmech Authors.
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


#include <gtest/gtest.h>

#include "flowmech/benchgen.h"
#include "flowmech/muca_solver.h"
#include "flowmech/oracle.h"
#include "test_support.h"

namespace flowmech {
namespace {

using testing::options;

MucaInstance one_item(int mult, std::vector<double> values) {
  MucaInstance inst;
  inst.items.push_back({"a", mult});
  for (std::size_t r = 0; r < values.size(); ++r) {
    inst.requests.push_back({"r" + std::to_string(r), {0}, values[r]});
  }
  validate(inst);
  return inst;
}

MucaInstance random_muca(SeededRng& rng) {
  RandomMucaSpec spec;
  spec.items = rng.uniform_int(1, 6);
  spec.requests = rng.uniform_int(0, 9);
  spec.B = rng.uniform_int(1, 6);
  spec.multiplicity_max = spec.B + rng.uniform_int(0, 3);
  spec.bundle_max = rng.uniform_int(1, spec.items);
  spec.seed = rng.uniform_int(1, 1 << 30);
  return gen_random_muca(spec);
}

void expect_sound(const MucaInstance& inst, const MucaSolution& s) {
  std::vector<int> used(inst.items.size(), 0);
  double p = 0;
  for (const MucaWinner& w : s.winners) {
    EXPECT_EQ(w.bundle, inst.requests[w.request].bundle);
    for (int u : w.bundle) ++used[u];
    p += inst.requests[w.request].value;
  }
  for (std::size_t u = 0; u < used.size(); ++u) {
    EXPECT_LE(used[u], inst.items[u].multiplicity);
    EXPECT_EQ(used[u], s.items[u].allocated);
  }
  EXPECT_TRUE(testing::near(p, s.primal_value));
  EXPECT_GE(s.dual_certificate, s.primal_value * (1 - 1e-12));
}

TEST(BundleScore, Examples) {
  MucaRequest r{"r", {0, 1}, 2.0};
  std::vector<double> w = {0.5, 0.5};
  EXPECT_DOUBLE_EQ(bundle_score(r, w), 0.5);
  r.value = 4.0;
  EXPECT_DOUBLE_EQ(bundle_score(r, w), 0.25);
  MucaRequest sub{"s", {1}, 4.0};
  EXPECT_LE(bundle_score(sub, w), bundle_score(r, w));
}

TEST(SolveMuca, ThreeRequestsOneItem) {
  MucaInstance inst = one_item(8, {3, 2, 1});
  MucaSolution s = solve_muca(inst, 0.3);
  ASSERT_EQ(s.winners.size(), 3u);
  EXPECT_EQ(s.winners[0].request_id, "r0");
  EXPECT_EQ(s.winners[1].request_id, "r1");
  EXPECT_EQ(s.winners[2].request_id, "r2");
  EXPECT_DOUBLE_EQ(s.primal_value, 6.0);
  EXPECT_EQ(s.trace.exit_reason, ExitReason::kListEmpty);
  expect_sound(inst, s);
}

TEST(SolveMuca, EmptyRequests) {
  MucaInstance inst = one_item(2, {});
  MucaSolution s = solve_muca(inst, 0.1);
  EXPECT_TRUE(s.winners.empty());
  EXPECT_EQ(s.primal_value, 0.0);
}

TEST(SolveMuca, LowerBoundInstance) {
  MucaInstance inst = gen_muca_lb(3, 4, 12);
  MucaSolution faithful = solve_muca(inst, 0.1);
  EXPECT_LE(faithful.primal_value, 10.0);
  MucaSolution sat = solve_muca(inst, options(0.1, StopRule::kUntilSaturated));
  EXPECT_LE(sat.primal_value, 10.0);
  EXPECT_DOUBLE_EQ(sat.primal_value, 10.0);
  expect_sound(inst, sat);
  OracleLimits limits;
  limits.max_requests = 40;
  EXPECT_DOUBLE_EQ(brute_force_opt_muca(inst, limits).value, 12.0);
}

class MucaProperties : public ::testing::TestWithParam<StopRule> {};

TEST_P(MucaProperties, FeasibleTraceAndCertificate) {
  SeededRng rng(GetParam() == StopRule::kWeightThreshold ? 21 : 22);
  for (int k = 0; k < 200; ++k) {
    MucaInstance inst = random_muca(rng);
    const double eps = rng.uniform(0.02, 1.0);
    MucaSolution s = solve_muca(inst, options(eps, GetParam()));
    expect_sound(inst, s);
    EXPECT_GE(s.dual_certificate, testing::naive_opt_muca(inst) * (1 - 1e-9));
    double alpha_prev = 0;
    for (const IterationRecord& rec : s.trace.records) {
      EXPECT_EQ(rec.d2, rec.primal);
      if (GetParam() == StopRule::kWeightThreshold) {
        EXPECT_GE(rec.alpha, alpha_prev * (1 - 1e-12));
      }
      alpha_prev = rec.alpha;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(StopRules, MucaProperties,
                         ::testing::Values(StopRule::kWeightThreshold,
                                           StopRule::kUntilSaturated));

TEST(SolveMuca, ValueAndSubsetBundleMonotone) {
  SeededRng rng(23);
  int checked = 0;
  for (int k = 0; k < 600; ++k) {
    MucaInstance inst = random_muca(rng);
    MucaSolution s = solve_muca(inst, options(0.1));
    for (const MucaWinner& w : s.winners) {
      MucaInstance higher = inst;
      higher.requests[w.request].value *= rng.uniform(1.0, 10.0);
      EXPECT_TRUE(solve_muca(higher, options(0.1)).won(w.request));
      MucaInstance subset = inst;
      auto& bundle = subset.requests[w.request].bundle;
      bundle.resize(rng.uniform_int(1, static_cast<int>(bundle.size())));
      EXPECT_TRUE(solve_muca(subset, options(0.1)).won(w.request));
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(SolveMuca, CertificateMatchesRecomputation) {
  SeededRng rng(24);
  for (int k = 0; k < 50; ++k) {
    MucaInstance inst = random_muca(rng);
    MucaSolution s = solve_muca(inst, 0.2);
    EXPECT_TRUE(testing::near(muca_dual_certificate(s.trace, inst, 0.2), s.dual_certificate));
  }
}

}  // namespace
}  // namespace flowmech
