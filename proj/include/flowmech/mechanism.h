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

// Critical-value payments for the greedy solvers.
//
// A winner pays the smallest value it could have reported, at its reported
// demand (or bundle) and with every other report fixed, and still win. The
// greedy is monotone in the reported value, so the win region is a ray and
// the threshold is found by bisection on [0, v_r]. Each probe is a full
// solver run. Losers pay nothing.

#ifndef FLOWMECH_MECHANISM_H_
#define FLOWMECH_MECHANISM_H_

#include <span>
#include <string>
#include <vector>

#include "flowmech/instance.h"
#include "flowmech/muca_solver.h"
#include "flowmech/ufp_solver.h"

namespace flowmech {

inline constexpr int kMaxBisectionSteps = 64;
inline constexpr double kDefaultRelativeTolerance = 1e-6;

struct CriticalValue {
  bool winner = false;
  double payment = 0.0;    // 0 for a loser
  double tolerance = 0.0;  // absolute; the true threshold lies in (payment - tolerance, payment]
  int probes = 0;
};

// `tolerance` <= 0 selects 1e-6 * v_r.
CriticalValue critical_payment(const NormalizedInstance& instance,
                               const SolveOptions& options, int request,
                               double tolerance = 0.0);
CriticalValue critical_payment(const MucaInstance& instance,
                               const SolveOptions& options, int request,
                               double tolerance = 0.0);

struct PaymentEntry {
  int request = -1;
  std::string request_id;
  double value = 0.0;
  CriticalValue critical;
};

struct PaymentProfile {
  std::vector<PaymentEntry> entries;  // every request, instance order
  double tolerance = 0.0;             // largest per-winner tolerance

  double payment(int request) const { return entries.at(request).critical.payment; }
};

struct UfpMechanismResult {
  UfpSolution solution;
  PaymentProfile payments;
};

struct MucaMechanismResult {
  MucaSolution solution;
  PaymentProfile payments;
};

// Solves the reported instance and prices every winner. Winners are priced
// concurrently; the result does not depend on the thread count.
UfpMechanismResult run_mechanism(const NormalizedInstance& instance,
                                 const SolveOptions& options,
                                 double tolerance = 0.0);
MucaMechanismResult run_mechanism(const MucaInstance& instance,
                                  const SolveOptions& options,
                                  double tolerance = 0.0);

struct AuditPoint {
  double value = 0.0;   // reported value
  double demand = 0.0;  // reported demand (UFP) or bundle size (MUCA)
  int bundle = -1;      // MUCA: index into the bundle grid, -1 for the true one
  bool allocated = false;
  double payment = 0.0;
  double utility = 0.0;  // true value if served, minus payment
};

struct AuditReport {
  int request = -1;
  double tolerance = 0.0;
  double truthful_utility = 0.0;
  double best_utility = 0.0;
  double gain = 0.0;  // best_utility - truthful_utility
  std::vector<AuditPoint> points;
};

// Tries every (value, demand) pair from value_grid x ({d_r} + demand_grid).
// Demand misreports must lie in [d_r, 1]; a served agent always gets its
// true value because the reported demand covers the true one. `tolerance`
// <= 0 selects 1e-6 * v_r and is used for every payment computation.
AuditReport utility_audit(const NormalizedInstance& instance,
                          const SolveOptions& options, int request,
                          std::span<const double> value_grid,
                          std::span<const double> demand_grid = {},
                          double tolerance = 0.0);

// Tries value_grid x ({U_r} + bundle_grid). An agent is served only when its
// reported bundle covers the true one.
AuditReport utility_audit(const MucaInstance& instance,
                          const SolveOptions& options, int request,
                          std::span<const double> value_grid,
                          const std::vector<std::vector<int>>& bundle_grid = {},
                          double tolerance = 0.0);

}  // namespace flowmech

#endif  // FLOWMECH_MECHANISM_H_
