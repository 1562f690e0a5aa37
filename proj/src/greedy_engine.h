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

#ifndef FLOWMECH_SRC_GREEDY_ENGINE_H_
#define FLOWMECH_SRC_GREEDY_ENGINE_H_

#include <vector>

#include "flowmech/instance.h"
#include "flowmech/shortest_path.h"
#include "flowmech/trace.h"
#include "flowmech/ufp_solver.h"

namespace flowmech::internal {

struct EngineConfig {
  double epsilon = 0.1;
  double B = 1.0;
  StopRule stop_rule = StopRule::kWeightThreshold;
  bool repeat = false;  // selected requests stay pending
  int threads = 0;
};

struct Selection {
  int request = -1;
  Path path;  // length in true (unshifted) weight units, may be +inf
};

struct EngineResult {
  std::vector<Selection> selections;
  std::vector<double> loads;
  Trace trace;
};

// Shared loop of the single-shot and repeating path greedy. Validates
// epsilon and B.
EngineResult run_path_greedy(const UfpInstance& instance,
                             const EngineConfig& config);

void check_epsilon(double epsilon);
void check_bound(double B);

// Scaled dual of state `state`: y_e / alpha and the per-request z values
// (v_r for requests selected before that state unless `repeat`), then the
// constraint check. Throws InvariantViolation on a violated constraint.
void verify_path_certificate(const UfpInstance& instance, const Trace& trace,
                             int state, double epsilon, double B, bool repeat);

}  // namespace flowmech::internal

#endif  // FLOWMECH_SRC_GREEDY_ENGINE_H_
