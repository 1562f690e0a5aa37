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

#include "flowmech/ufp_solver.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "greedy_engine.h"

namespace flowmech {

bool UfpSolution::allocated(int request) const {
  return std::any_of(allocation.begin(), allocation.end(),
                     [&](const Allocation& a) { return a.request == request; });
}

double edge_weight(double load, double capacity, double epsilon, double B) {
  return std::exp(epsilon * B * load / capacity) / capacity;
}

UfpSolution solve_ufp(const NormalizedInstance& instance, double epsilon) {
  SolveOptions options;
  options.epsilon = epsilon;
  return solve_ufp(instance, options);
}

UfpSolution solve_ufp(const NormalizedInstance& instance,
                      const SolveOptions& options) {
  internal::check_epsilon(options.epsilon);
  validate(instance);
  internal::check_bound(instance.B);

  internal::EngineConfig config;
  config.epsilon = options.epsilon;
  config.B = instance.B;
  config.stop_rule = options.stop_rule;
  config.threads = options.threads;
  internal::EngineResult run = internal::run_path_greedy(instance.inner, config);

  UfpSolution solution;
  solution.epsilon = options.epsilon;
  solution.B = instance.B;
  solution.stop_rule = options.stop_rule;
  for (internal::Selection& s : run.selections) {
    const Request& req = instance.inner.requests[s.request];
    solution.allocation.push_back({s.request, req.id, std::move(s.path), req.value});
    solution.primal_value += req.value;
  }
  for (std::size_t e = 0; e < run.loads.size(); ++e) {
    solution.edges.push_back({instance.inner.edges[e].capacity, run.loads[e]});
  }
  solution.trace = std::move(run.trace);
  CertificateBound bound = certificate_from_trace(solution.trace);
  if (options.verify_certificate) {
    internal::verify_path_certificate(instance.inner, solution.trace, bound.state,
                                      options.epsilon, instance.B, false);
  }
  solution.dual_certificate = bound.value;
  solution.certificate_state = bound.state;
  return solution;
}

double dual_certificate(const Trace& trace, const NormalizedInstance& instance,
                        double epsilon) {
  CertificateBound bound = certificate_from_trace(trace);
  internal::verify_path_certificate(instance.inner, trace, bound.state, epsilon,
                                    instance.B, false);
  return bound.value;
}

double recommend_epsilon(int edge_count, double B) {
  return std::max(std::sqrt(std::log(static_cast<double>(edge_count)) / B), 1.0 / B);
}

bool guarantee_holds(int edge_count, double B, double epsilon) {
  return B >= 1.0 && epsilon <= 1.0 / 6.0 &&
         epsilon >= recommend_epsilon(edge_count, B);
}

double approximation_bound(double epsilon) {
  constexpr double e = std::numbers::e;
  return (1.0 + 6.0 * epsilon) * e / (e - 1.0);
}

}  // namespace flowmech
