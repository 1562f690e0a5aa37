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

#ifndef FLOWMECH_REPEAT_SOLVER_H_
#define FLOWMECH_REPEAT_SOLVER_H_

#include <limits>
#include <string>
#include <vector>

#include "flowmech/instance.h"
#include "flowmech/shortest_path.h"
#include "flowmech/trace.h"
#include "flowmech/ufp_solver.h"

namespace flowmech {

struct RepeatAllocation {
  int request = -1;
  std::string request_id;
  Path path;
  int count = 0;
  double value = 0.0;  // per copy
};

struct RepeatSolution {
  // One entry per distinct (request, path), in order of first use.
  std::vector<RepeatAllocation> allocation;
  double primal_value = 0.0;
  double dual_certificate = std::numeric_limits<double>::infinity();
  int certificate_state = 0;
  Trace trace;
  double epsilon = 0.0;
  double B = 0.0;
  std::vector<EdgeState> edges;

  int copies(int request) const;
};

// Same greedy as solve_ufp, but a routed request stays pending, so it can be
// routed again; only the weight threshold (or running out of routable
// requests) ends the loop. Each routing adds at least min_r d_r to some edge,
// so the iteration count is at most sum_e c_e / min_r d_r.
RepeatSolution solve_ufp_repeat(const NormalizedInstance& instance,
                                double epsilon);
RepeatSolution solve_ufp_repeat(const NormalizedInstance& instance,
                                const SolveOptions& options);

// min over states of D1(i) / alpha(i); the repeat dual has no z terms.
double repeat_dual_certificate(const Trace& trace);

// As above, after checking the scaled dual y / alpha against every request.
double repeat_dual_certificate(const Trace& trace,
                               const NormalizedInstance& instance,
                               double epsilon);

}  // namespace flowmech

#endif  // FLOWMECH_REPEAT_SOLVER_H_
