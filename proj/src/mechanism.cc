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

#include "flowmech/mechanism.h"

#include <algorithm>
#include <stdexcept>

#include "flowmech/parallel.h"

namespace flowmech {
namespace {

SolveOptions probe_options(const SolveOptions& options) {
  SolveOptions probe = options;
  probe.threads = 1;
  probe.verify_certificate = false;
  return probe;
}

double resolve_tolerance(double tolerance, double value) {
  return tolerance > 0.0 ? tolerance : kDefaultRelativeTolerance * value;
}

void check_request(int request, std::size_t count) {
  if (request < 0 || static_cast<std::size_t>(request) >= count) {
    throw std::out_of_range("request index out of range");
  }
}

// `wins(v)` reruns the solver with the agent's value replaced by v.
template <typename Wins>
CriticalValue bisect_threshold(double value, double tolerance, Wins wins) {
  CriticalValue out;
  out.tolerance = tolerance;
  out.probes = 1;
  if (!wins(value)) return out;
  out.winner = true;
  double lo = 0.0, hi = value;
  for (int step = 0; step < kMaxBisectionSteps && hi - lo > tolerance; ++step) {
    double mid = lo + (hi - lo) / 2.0;
    if (!(mid > lo && mid < hi)) break;
    ++out.probes;
    (wins(mid) ? hi : lo) = mid;
  }
  out.payment = hi;
  return out;
}

double utility(bool served, double true_value, const CriticalValue& cv) {
  return (served ? true_value : 0.0) - (cv.winner ? cv.payment : 0.0);
}

void finish(AuditReport& report) {
  report.best_utility = report.truthful_utility;
  for (const AuditPoint& p : report.points) {
    report.best_utility = std::max(report.best_utility, p.utility);
  }
  report.gain = report.best_utility - report.truthful_utility;
}

template <typename Instance, typename Requests, typename Winners>
PaymentProfile price(const Instance& instance, const Requests& reqs,
                     const SolveOptions& options, double tolerance,
                     const Winners& is_winner) {
  PaymentProfile profile;
  profile.entries.resize(reqs.size());
  for (std::size_t r = 0; r < reqs.size(); ++r) {
    profile.entries[r].request = static_cast<int>(r);
    profile.entries[r].request_id = reqs[r].id;
    profile.entries[r].value = reqs[r].value;
  }
  std::vector<int> winners;
  for (std::size_t r = 0; r < reqs.size(); ++r) {
    if (is_winner(static_cast<int>(r))) winners.push_back(static_cast<int>(r));
  }
  parallel_for(winners.size(), resolve_threads(options.threads), [&](std::size_t i) {
    int r = winners[i];
    profile.entries[r].critical = critical_payment(instance, options, r, tolerance);
  });
  for (int r : winners) {
    profile.tolerance = std::max(profile.tolerance, profile.entries[r].critical.tolerance);
  }
  return profile;
}

}  // namespace

CriticalValue critical_payment(const NormalizedInstance& instance,
                               const SolveOptions& options, int request,
                               double tolerance) {
  check_request(request, instance.inner.requests.size());
  const double value = instance.inner.requests[request].value;
  const SolveOptions probe = probe_options(options);
  NormalizedInstance scratch = instance;
  return bisect_threshold(value, resolve_tolerance(tolerance, value), [&](double v) {
    scratch.inner.requests[request].value = v;
    return solve_ufp(scratch, probe).allocated(request);
  });
}

CriticalValue critical_payment(const MucaInstance& instance,
                               const SolveOptions& options, int request,
                               double tolerance) {
  check_request(request, instance.requests.size());
  const double value = instance.requests[request].value;
  const SolveOptions probe = probe_options(options);
  MucaInstance scratch = instance;
  return bisect_threshold(value, resolve_tolerance(tolerance, value), [&](double v) {
    scratch.requests[request].value = v;
    return solve_muca(scratch, probe).won(request);
  });
}

UfpMechanismResult run_mechanism(const NormalizedInstance& instance,
                                 const SolveOptions& options, double tolerance) {
  UfpMechanismResult result;
  result.solution = solve_ufp(instance, options);
  result.payments = price(instance, instance.inner.requests, options, tolerance,
                          [&](int r) { return result.solution.allocated(r); });
  return result;
}

MucaMechanismResult run_mechanism(const MucaInstance& instance,
                                  const SolveOptions& options, double tolerance) {
  MucaMechanismResult result;
  result.solution = solve_muca(instance, options);
  result.payments = price(instance, instance.requests, options, tolerance,
                          [&](int r) { return result.solution.won(r); });
  return result;
}

AuditReport utility_audit(const NormalizedInstance& instance,
                          const SolveOptions& options, int request,
                          std::span<const double> value_grid,
                          std::span<const double> demand_grid,
                          double tolerance) {
  check_request(request, instance.inner.requests.size());
  const Request truth = instance.inner.requests[request];
  AuditReport report;
  report.request = request;
  report.tolerance = resolve_tolerance(tolerance, truth.value);

  CriticalValue honest = critical_payment(instance, options, request, report.tolerance);
  report.truthful_utility = utility(honest.winner, truth.value, honest);

  std::vector<double> demands{truth.demand};
  for (double d : demand_grid) {
    if (!(d >= truth.demand && d <= 1.0)) {
      throw std::invalid_argument("demand misreports must lie in [d_r, 1]");
    }
    demands.push_back(d);
  }
  NormalizedInstance scratch = instance;
  for (double d : demands) {
    for (double v : value_grid) {
      if (!(v > 0.0)) throw std::invalid_argument("reported values must be positive");
      scratch.inner.requests[request].demand = d;
      scratch.inner.requests[request].value = v;
      CriticalValue cv = critical_payment(scratch, options, request, report.tolerance);
      AuditPoint point;
      point.value = v;
      point.demand = d;
      point.allocated = cv.winner;
      point.payment = cv.winner ? cv.payment : 0.0;
      point.utility = utility(cv.winner, truth.value, cv);
      report.points.push_back(point);
    }
  }
  finish(report);
  return report;
}

AuditReport utility_audit(const MucaInstance& instance,
                          const SolveOptions& options, int request,
                          std::span<const double> value_grid,
                          const std::vector<std::vector<int>>& bundle_grid,
                          double tolerance) {
  check_request(request, instance.requests.size());
  const MucaRequest truth = instance.requests[request];
  AuditReport report;
  report.request = request;
  report.tolerance = resolve_tolerance(tolerance, truth.value);

  CriticalValue honest = critical_payment(instance, options, request, report.tolerance);
  report.truthful_utility = utility(honest.winner, truth.value, honest);

  auto covers = [&](const std::vector<int>& reported) {
    return std::all_of(truth.bundle.begin(), truth.bundle.end(), [&](int u) {
      return std::find(reported.begin(), reported.end(), u) != reported.end();
    });
  };
  MucaInstance scratch = instance;
  for (int b = -1; b < static_cast<int>(bundle_grid.size()); ++b) {
    const std::vector<int>& bundle = b < 0 ? truth.bundle : bundle_grid[b];
    scratch.requests[request].bundle = bundle;
    validate(scratch);
    for (double v : value_grid) {
      if (!(v > 0.0)) throw std::invalid_argument("reported values must be positive");
      scratch.requests[request].value = v;
      CriticalValue cv = critical_payment(scratch, options, request, report.tolerance);
      AuditPoint point;
      point.value = v;
      point.demand = static_cast<double>(bundle.size());
      point.bundle = b;
      point.allocated = cv.winner;
      point.payment = cv.winner ? cv.payment : 0.0;
      point.utility = utility(cv.winner && covers(bundle), truth.value, cv);
      report.points.push_back(point);
    }
  }
  finish(report);
  return report;
}

}  // namespace flowmech
