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

// Exhaustive reference solvers for desk-sized instances.
//
// All searches are depth-first with a value bound and throw
// OracleLimitExceeded instead of silently truncating. Requests with the same
// endpoints, demand and value (or the same bundle and value) are treated as
// interchangeable, which keeps instances made of many identical copies
// tractable well past the default request limit.

#ifndef FLOWMECH_ORACLE_H_
#define FLOWMECH_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "flowmech/instance.h"
#include "flowmech/shortest_path.h"

namespace flowmech {

struct OracleLimits {
  int max_requests = 10;
  int max_paths = 20;  // simple paths per request
  std::int64_t max_nodes = 50'000'000;
};

// Capacity slack used by every oracle feasibility test.
inline constexpr double kOracleSlack = 1e-9;

// All simple s-t paths in depth-first order (arcs taken by increasing edge
// index). Lengths use `weights` when given, otherwise the edge count.
// Throws OracleLimitExceeded when more than `max_paths` exist.
std::vector<Path> enumerate_paths(const UfpInstance& instance, int s, int t,
                                  int max_paths,
                                  std::span<const double> weights = {});

struct RoutedRequest {
  int request = -1;
  Path path;
  int count = 1;

  bool operator==(const RoutedRequest&) const = default;
};

struct UfpOptimum {
  double value = 0.0;
  std::vector<RoutedRequest> witness;  // instance order, count == 1
};

UfpOptimum brute_force_opt_ufp(const UfpInstance& instance,
                               const OracleLimits& limits = {});

struct MucaOptimum {
  double value = 0.0;
  std::vector<int> winners;  // request indices, increasing
};

MucaOptimum brute_force_opt_muca(const MucaInstance& instance,
                                 const OracleLimits& limits = {});

struct RepeatOptimum {
  double value = 0.0;
  std::vector<RoutedRequest> witness;
  // True when the copy cap bound the search: the optimum uses every allowed
  // copy and one more copy of some request would still fit.
  bool capped = false;
};

RepeatOptimum brute_force_opt_repeat(const UfpInstance& instance,
                                     int max_total_copies,
                                     const OracleLimits& limits = {});

// Checks that every path/bundle chosen by `witness` fits: per-edge demand
// sums stay within capacity up to kOracleSlack.
bool allocation_fits(const UfpInstance& instance,
                     std::span<const RoutedRequest> witness);

struct DualAssignment {
  std::vector<double> y;  // per edge or per item
  std::vector<double> z;  // per request; empty means all zero
};

struct DualViolation {
  int request = -1;
  double slack = 0.0;  // lhs - rhs, negative
};

// Requests whose constraint z_r + d_r * len_y(p) >= v_r fails for some
// simple path p, with tolerance 1e-9 * max(1, v_r). The tightest path is
// found by shortest path, or by enumeration when `max_paths` > 0.
// Requests without any s-t path have no constraint.
std::vector<DualViolation> check_dual_feasible(const UfpInstance& instance,
                                               const DualAssignment& dual,
                                               int max_paths = 0);

// Bundle form: z_r + sum_{u in U_r} y_u >= v_r.
std::vector<DualViolation> check_dual_feasible(const MucaInstance& instance,
                                               const DualAssignment& dual);

}  // namespace flowmech

#endif  // FLOWMECH_ORACLE_H_
