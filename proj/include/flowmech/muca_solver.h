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

// Bundle version of the primal-dual greedy: every request wants one copy of
// each item in a fixed bundle, so no path search is needed. Item weights are
// y_u = exp(eps * B * f_u / c_u) / c_u with B = min_u c_u.

#ifndef FLOWMECH_MUCA_SOLVER_H_
#define FLOWMECH_MUCA_SOLVER_H_

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "flowmech/instance.h"
#include "flowmech/trace.h"
#include "flowmech/ufp_solver.h"

namespace flowmech {

struct ItemState {
  int multiplicity = 0;
  int allocated = 0;
};

struct MucaWinner {
  int request = -1;
  std::string request_id;
  std::vector<int> bundle;
  double value = 0.0;
};

struct MucaSolution {
  std::vector<MucaWinner> winners;  // selection order
  double primal_value = 0.0;
  double dual_certificate = std::numeric_limits<double>::infinity();
  int certificate_state = 0;
  Trace trace;
  double epsilon = 0.0;
  double B = 0.0;
  std::vector<ItemState> items;

  bool won(int request) const;
};

// (1 / v_r) * sum_{u in U_r} y_u.
double bundle_score(const MucaRequest& request,
                    std::span<const double> item_weights);

// Ties go to the lowest request index. The saturating stop rule treats a
// bundle as eligible while each of its items has a free copy.
MucaSolution solve_muca(const MucaInstance& instance, double epsilon);
MucaSolution solve_muca(const MucaInstance& instance,
                        const SolveOptions& options);

// Recomputes and checks the certificate (y / alpha, z_r = v_r for winners).
double muca_dual_certificate(const Trace& trace, const MucaInstance& instance,
                             double epsilon);

}  // namespace flowmech

#endif  // FLOWMECH_MUCA_SOLVER_H_
