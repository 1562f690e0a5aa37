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

#include "flowmech/muca_solver.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flowmech/errors.h"
#include "flowmech/oracle.h"
#include "greedy_engine.h"

namespace flowmech {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kShiftWindow = 600.0;

void verify(const MucaInstance& instance, const Trace& trace, int state,
            double epsilon, double B) {
  const int k = static_cast<int>(trace.records.size());
  const double log_alpha =
      state == k ? trace.terminal_log_alpha : trace.records[state].log_alpha;
  std::vector<int> taken(instance.items.size(), 0);
  DualAssignment dual;
  dual.y.assign(instance.items.size(), 0.0);
  dual.z.assign(instance.requests.size(), 0.0);
  for (int i = 0; i < state; ++i) {
    const IterationRecord& rec = trace.records[i];
    for (int u : rec.path) ++taken[u];
    dual.z[rec.request] = instance.requests[rec.request].value;
  }
  if (log_alpha != kInf) {
    for (std::size_t u = 0; u < taken.size(); ++u) {
      const double c = instance.items[u].multiplicity;
      dual.y[u] = std::exp(epsilon * B * taken[u] / c - log_alpha) / c;
    }
  }
  auto violations = check_dual_feasible(instance, dual);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "scaled dual of state " << state << " violates the constraint of request "
        << instance.requests[violations.front().request].id;
    throw InvariantViolation(msg.str());
  }
}

}  // namespace

bool MucaSolution::won(int request) const {
  return std::any_of(winners.begin(), winners.end(),
                     [&](const MucaWinner& w) { return w.request == request; });
}

double bundle_score(const MucaRequest& request,
                    std::span<const double> item_weights) {
  double sum = 0.0;
  for (int u : request.bundle) sum += item_weights[u];
  return sum / request.value;
}

MucaSolution solve_muca(const MucaInstance& instance, double epsilon) {
  SolveOptions options;
  options.epsilon = epsilon;
  return solve_muca(instance, options);
}

MucaSolution solve_muca(const MucaInstance& instance,
                        const SolveOptions& options) {
  internal::check_epsilon(options.epsilon);
  validate(instance);
  MucaSolution solution;
  solution.epsilon = options.epsilon;
  solution.B = instance.B();
  for (const MucaItem& item : instance.items) {
    solution.items.push_back({item.multiplicity, 0});
  }
  if (instance.items.empty()) {
    solution.dual_certificate = 0.0;
    return solution;
  }
  const double B = solution.B;
  internal::check_bound(B);

  const bool saturating = options.stop_rule == StopRule::kUntilSaturated;
  const std::size_t m = instance.items.size();
  Trace& trace = solution.trace;
  trace.initial_log_d1 = std::log(static_cast<double>(m));
  trace.alpha_is_dual_bound = !saturating;

  std::vector<int> taken(m, 0);
  std::vector<double> exponent(m, 0.0), weights(m, 0.0);
  std::vector<int> pending(instance.requests.size());
  for (std::size_t r = 0; r < pending.size(); ++r) pending[r] = static_cast<int>(r);
  const double threshold = options.epsilon * (B - 1.0);
  double log_d1 = trace.initial_log_d1;
  double shift = 0.0;

  auto refresh = [&] {
    double peak = *std::max_element(exponent.begin(), exponent.end());
    if (peak - shift > kShiftWindow) shift = peak;
    for (std::size_t u = 0; u < m; ++u) {
      weights[u] = std::exp(exponent[u] - shift) / instance.items[u].multiplicity;
    }
  };
  auto fits = [&](int r) {
    return std::all_of(instance.requests[r].bundle.begin(),
                       instance.requests[r].bundle.end(),
                       [&](int u) { return taken[u] < instance.items[u].multiplicity; });
  };
  auto argmin = [&](const std::vector<int>& subset, bool filter) {
    int best = -1;
    double best_score = kInf;
    for (int r : subset) {
      if (filter && !fits(r)) continue;
      double score = bundle_score(instance.requests[r], weights);
      if (best < 0 || score < best_score) {
        best = r;
        best_score = score;
      }
    }
    return std::make_pair(best, best_score);
  };

  refresh();
  while (true) {
    if (pending.empty()) {
      trace.exit_reason = ExitReason::kListEmpty;
      break;
    }
    if (!saturating && log_d1 > threshold) {
      trace.exit_reason = ExitReason::kWeightThreshold;
      break;
    }
    auto [r, score] = argmin(pending, saturating);
    if (r < 0) {
      trace.exit_reason = ExitReason::kSaturated;
      break;
    }
    const MucaRequest& req = instance.requests[r];
    IterationRecord rec;
    rec.iteration = static_cast<int>(trace.records.size()) + 1;
    rec.request = r;
    rec.request_id = req.id;
    rec.path = req.bundle;
    rec.log_alpha = std::log(score) + shift;
    rec.alpha = std::exp(rec.log_alpha);
    for (int u : req.bundle) {
      ++taken[u];
      const int c = instance.items[u].multiplicity;
      if (taken[u] > c) {
        throw InvariantViolation("item " + instance.items[u].id +
                                 " allocated beyond its multiplicity");
      }
      exponent[u] = options.epsilon * B * taken[u] / c;
    }
    refresh();
    log_d1 = log_sum_exp(exponent);
    solution.primal_value += req.value;
    rec.log_d1 = log_d1;
    rec.d1 = std::exp(log_d1);
    rec.d2 = solution.primal_value;
    rec.primal = solution.primal_value;
    trace.records.push_back(std::move(rec));
    solution.winners.push_back({r, req.id, req.bundle, req.value});
    pending.erase(std::find(pending.begin(), pending.end(), r));
  }
  if (!pending.empty()) {
    auto [r, score] = argmin(pending, false);
    trace.terminal_log_alpha = std::log(score) + shift;
  }
  for (std::size_t u = 0; u < m; ++u) solution.items[u].allocated = taken[u];

  CertificateBound bound = certificate_from_trace(trace);
  if (options.verify_certificate) {
    verify(instance, trace, bound.state, options.epsilon, B);
  }
  solution.dual_certificate = bound.value;
  solution.certificate_state = bound.state;
  return solution;
}

double muca_dual_certificate(const Trace& trace, const MucaInstance& instance,
                             double epsilon) {
  CertificateBound bound = certificate_from_trace(trace);
  verify(instance, trace, bound.state, epsilon, instance.B());
  return bound.value;
}

}  // namespace flowmech
