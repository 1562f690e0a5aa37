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

// Primal-dual greedy for B-bounded unsplittable flow.
//
// Every edge carries a dual weight y_e = exp(eps * B * f_e / c_e) / c_e where
// f_e is the routed load. Each iteration routes the pending request whose
// shortest path p minimizes (d_r / v_r) * |p|_y, then adds d_r to the loads
// on p. The loop runs while requests are pending and
// sum_e c_e * y_e <= exp(eps * (B - 1)), evaluated as a log-sum-exp over the
// exponents so that no quantity overflows.
//
// Ties between requests go to the lowest instance index; ties between paths
// follow the ShortestPathTree rules.

#ifndef FLOWMECH_UFP_SOLVER_H_
#define FLOWMECH_UFP_SOLVER_H_

#include <limits>
#include <string>
#include <vector>

#include "flowmech/instance.h"
#include "flowmech/shortest_path.h"
#include "flowmech/trace.h"

namespace flowmech {

enum class StopRule {
  // Run while the total dual weight stays below exp(eps * (B - 1)).
  kWeightThreshold,
  // Ignore the weight threshold; only paths with enough residual capacity on
  // every edge are considered, and the loop ends when nothing pending fits.
  // Used to drive the greedy into saturation on small-B instances.
  kUntilSaturated,
};

struct SolveOptions {
  double epsilon = 0.1;
  StopRule stop_rule = StopRule::kWeightThreshold;
  int threads = 0;  // 0: FLOWMECH_THREADS or hardware concurrency
  // Check the reported certificate against the dual constraints.
  bool verify_certificate = true;
};

struct EdgeState {
  double capacity = 0.0;
  double load = 0.0;
};

struct Allocation {
  int request = -1;
  std::string request_id;
  Path path;
  double value = 0.0;
};

struct UfpSolution {
  std::vector<Allocation> allocation;  // selection order
  double primal_value = 0.0;
  // Upper bound on the fractional optimum; verified against the dual
  // constraints before it is reported.
  double dual_certificate = std::numeric_limits<double>::infinity();
  int certificate_state = 0;
  Trace trace;
  double epsilon = 0.0;
  double B = 0.0;
  StopRule stop_rule = StopRule::kWeightThreshold;
  std::vector<EdgeState> edges;

  bool allocated(int request) const;
};

// (1 / c) * exp(eps * B * f / c).
double edge_weight(double load, double capacity, double epsilon, double B);

// Throws InfeasibleParameters when B < 1 and ValidationError for epsilon
// outside (0, 1] or an invalid instance.
UfpSolution solve_ufp(const NormalizedInstance& instance, double epsilon);
UfpSolution solve_ufp(const NormalizedInstance& instance,
                      const SolveOptions& options);

// Recomputes the certificate of a UFP trace and checks the scaled dual
// (y / alpha, z_r = v_r for selected r) against every request. Throws
// InvariantViolation if a constraint fails.
double dual_certificate(const Trace& trace, const NormalizedInstance& instance,
                        double epsilon);

// Smallest epsilon for which the approximation guarantee applies:
// max(sqrt(ln m / B), 1 / B).
double recommend_epsilon(int edge_count, double B);

// sqrt(ln m / B) <= eps <= 1/6 and B >= 1 / eps.
bool guarantee_holds(int edge_count, double B, double epsilon);

// (1 + 6 eps) * e / (e - 1).
double approximation_bound(double epsilon);

}  // namespace flowmech

#endif  // FLOWMECH_UFP_SOLVER_H_
