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

#include "flowmech/repeat_solver.h"

#include <algorithm>

#include "greedy_engine.h"

namespace flowmech {

int RepeatSolution::copies(int request) const {
  int total = 0;
  for (const RepeatAllocation& a : allocation) {
    if (a.request == request) total += a.count;
  }
  return total;
}

RepeatSolution solve_ufp_repeat(const NormalizedInstance& instance,
                                double epsilon) {
  SolveOptions options;
  options.epsilon = epsilon;
  return solve_ufp_repeat(instance, options);
}

RepeatSolution solve_ufp_repeat(const NormalizedInstance& instance,
                                const SolveOptions& options) {
  internal::check_epsilon(options.epsilon);
  validate(instance);
  internal::check_bound(instance.B);

  internal::EngineConfig config;
  config.epsilon = options.epsilon;
  config.B = instance.B;
  config.stop_rule = options.stop_rule;
  config.repeat = true;
  config.threads = options.threads;
  internal::EngineResult run = internal::run_path_greedy(instance.inner, config);

  RepeatSolution solution;
  solution.epsilon = options.epsilon;
  solution.B = instance.B;
  for (internal::Selection& s : run.selections) {
    const Request& req = instance.inner.requests[s.request];
    solution.primal_value += req.value;
    auto it = std::find_if(solution.allocation.begin(), solution.allocation.end(),
                           [&](const RepeatAllocation& a) {
                             return a.request == s.request && a.path.edges == s.path.edges;
                           });
    if (it != solution.allocation.end()) {
      ++it->count;
    } else {
      solution.allocation.push_back({s.request, req.id, std::move(s.path), 1, req.value});
    }
  }
  for (std::size_t e = 0; e < run.loads.size(); ++e) {
    solution.edges.push_back({instance.inner.edges[e].capacity, run.loads[e]});
  }
  solution.trace = std::move(run.trace);
  CertificateBound bound = certificate_from_trace(solution.trace);
  if (options.verify_certificate) {
    internal::verify_path_certificate(instance.inner, solution.trace, bound.state,
                                      options.epsilon, instance.B, true);
  }
  solution.dual_certificate = bound.value;
  solution.certificate_state = bound.state;
  return solution;
}

double repeat_dual_certificate(const Trace& trace) {
  return certificate_from_trace(trace).value;
}

double repeat_dual_certificate(const Trace& trace,
                               const NormalizedInstance& instance,
                               double epsilon) {
  CertificateBound bound = certificate_from_trace(trace);
  internal::verify_path_certificate(instance.inner, trace, bound.state, epsilon,
                                    instance.B, true);
  return bound.value;
}

}  // namespace flowmech
