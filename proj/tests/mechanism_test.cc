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
#include "flowmech/mechanism.h"
#include "flowmech/report.h"
#include "test_support.h"

namespace flowmech {
namespace {

using testing::options;

std::vector<double> grid(double hi, int points) {
  std::vector<double> g;
  for (int k = 1; k <= points; ++k) g.push_back(hi * k / points);
  return g;
}

TEST(CriticalPayment, NoCompetitionPaysNearZero) {
  NormalizedInstance n = normalize(testing::single_edge(10, 1, 5));
  CriticalValue c = critical_payment(n, options(0.1), 0);
  EXPECT_TRUE(c.winner);
  EXPECT_DOUBLE_EQ(c.tolerance, 5e-6);
  EXPECT_GE(c.payment, 0.0);
  EXPECT_LE(c.payment, c.tolerance);
  EXPECT_LE(c.probes, kMaxBisectionSteps);
}

TEST(CriticalPayment, BottleneckThresholdIsRivalValue) {
  NormalizedInstance n = normalize(testing::bottleneck_pair(5, 3));
  CriticalValue c = critical_payment(n, options(0.1), 0, 1e-6);
  EXPECT_TRUE(c.winner);
  EXPECT_GE(c.payment, 3.0);
  EXPECT_LE(c.payment, 3.0 + 1e-6);
  CriticalValue loser = critical_payment(n, options(0.1), 1);
  EXPECT_FALSE(loser.winner);
  EXPECT_EQ(loser.payment, 0.0);
}

TEST(RunMechanism, UtilitiesAndDeterminism) {
  SeededRng rng(51);
  for (int k = 0; k < 20; ++k) {
    NormalizedInstance n = normalize(gen_random(testing::draw_spec(rng, 7, 6, 1, 10)));
    UfpMechanismResult a = run_mechanism(n, options(0.1));
    UfpMechanismResult b = run_mechanism(n, options(0.1));
    EXPECT_EQ(payments_json(a.payments), payments_json(b.payments));
    for (const PaymentEntry& e : a.payments.entries) {
      EXPECT_EQ(e.critical.winner, a.solution.allocated(e.request));
      if (e.critical.winner) {
        EXPECT_GE(e.value - e.critical.payment, -e.critical.tolerance);
        EXPECT_GE(e.critical.payment, 0.0);
      } else {
        EXPECT_EQ(e.critical.payment, 0.0);
      }
    }
  }
}

TEST(UtilityAudit, BottleneckWinnerAndLoser) {
  NormalizedInstance n = normalize(testing::bottleneck_pair(5, 3));
  const double tol = 1e-6;
  std::vector<double> values = grid(10.0, 50);
  AuditReport winner = utility_audit(n, options(0.1), 0, values, {}, tol);
  EXPECT_NEAR(winner.truthful_utility, 2.0, 2 * tol);
  EXPECT_LE(winner.gain, 2 * tol);
  EXPECT_GE(winner.points.size(), 50u);
  AuditReport loser = utility_audit(n, options(0.1), 1, values, {}, tol);
  EXPECT_EQ(loser.truthful_utility, 0.0);
  EXPECT_LE(loser.best_utility, tol);
  bool overbid_won = false;
  for (const AuditPoint& p : loser.points) {
    if (p.allocated) {
      overbid_won = true;
      EXPECT_GE(p.payment, 3.0 - tol);
    }
  }
  EXPECT_TRUE(overbid_won);
}

TEST(UtilityAudit, DemandMisreportsDoNotPay) {
  SeededRng rng(52);
  for (int k = 0; k < 15; ++k) {
    NormalizedInstance n = normalize(gen_random(testing::draw_spec(rng, 6, 5, 1, 6)));
    const int r = rng.uniform_int(0, static_cast<int>(n.inner.requests.size()) - 1);
    const double d = n.inner.requests[r].demand;
    std::vector<double> demands = {d, (d + 1) / 2, 1.0};
    AuditReport a = utility_audit(n, options(0.1), r, grid(20.0, 12), demands);
    EXPECT_LE(a.gain, 2 * a.tolerance);
  }
}

TEST(Threshold, SingleCrossingOnDenseGrid) {
  SeededRng rng(53);
  int winners = 0;
  for (int k = 0; k < 40; ++k) {
    NormalizedInstance n = normalize(gen_random(testing::draw_spec(rng, 7, 6, 4, 20)));
    UfpSolution s = solve_ufp(n, options(0.5));
    for (const Allocation& a : s.allocation) {
      ++winners;
      bool won_before = false;
      for (double v : grid(2 * n.inner.requests[a.request].value, 60)) {
        NormalizedInstance probe = n;
        probe.inner.requests[a.request].value = v;
        bool won = solve_ufp(probe, options(0.5)).allocated(a.request);
        EXPECT_FALSE(won_before && !won) << "lost again at " << v;
        won_before = won_before || won;
      }
    }
  }
  EXPECT_GT(winners, 20);
}

TEST(MucaMechanism, PaymentsAndAudit) {
  MucaInstance inst;
  inst.items = {{"a", 1}, {"b", 1}};
  inst.requests = {{"ab", {0, 1}, 5.0}, {"a", {0}, 2.0}, {"b", {1}, 2.0}};
  // Scores: ab 2/5 = 0.4, a and b 1/2 = 0.5; ab wins, then both items are full.
  MucaMechanismResult m = run_mechanism(inst, options(0.1, StopRule::kUntilSaturated), 1e-6);
  ASSERT_TRUE(m.solution.won(0));
  // ab wins iff 2 / v < 1 / 2, so the threshold is 4.
  EXPECT_NEAR(m.payments.payment(0), 4.0, 1e-6);
  EXPECT_EQ(m.payments.payment(1), 0.0);
  std::vector<std::vector<int>> bundles = {{0}, {1}, {0, 1}};
  AuditReport a = utility_audit(inst, options(0.1, StopRule::kUntilSaturated), 0,
                                grid(10.0, 50), bundles, 1e-6);
  EXPECT_NEAR(a.truthful_utility, 1.0, 2e-6);
  EXPECT_LE(a.gain, 2e-6);
  AuditReport b = utility_audit(inst, options(0.1, StopRule::kUntilSaturated), 1,
                                grid(10.0, 50), bundles, 1e-6);
  EXPECT_LE(b.gain, 2e-6);
}

}  // namespace
}  // namespace flowmech
