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

#ifndef FLOWMECH_TRACE_H_
#define FLOWMECH_TRACE_H_

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace flowmech {

enum class ExitReason {
  kListEmpty,        // no pending request is left (or none is routable)
  kWeightThreshold,  // total dual weight passed exp(epsilon * (B - 1))
  kSaturated,        // residual-capacity mode: nothing pending fits anymore
};

std::string_view exit_reason_name(ExitReason reason);

// One greedy selection. State i is the weight vector after i selections;
// record i (1-based) is produced by the move from state i-1 to state i.
struct IterationRecord {
  int iteration = 0;
  int request = -1;  // instance index of the selected request
  std::string request_id;
  std::vector<int> path;  // edge indices, or item indices for bundles
  // Normalized length of the selection measured in state i-1. `log_alpha`
  // is authoritative; `alpha` is its exponential and may be +inf.
  double alpha = 0.0;
  double log_alpha = 0.0;
  // ln and value of sum_e c_e * y_e in state i.
  double log_d1 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;      // sum of z_r over selected requests (0 when repeating)
  double primal = 0.0;  // value collected so far
};

struct Trace {
  std::vector<IterationRecord> records;
  double initial_log_d1 = 0.0;  // ln m (every y_e starts at 1/c_e)
  // Minimum normalized length over the requests still eligible in the final
  // state, measured without capacity filtering; +inf when there are none.
  double terminal_log_alpha = std::numeric_limits<double>::infinity();
  // True when each record's alpha is a minimum over every eligible request.
  // Residual-filtered runs only guarantee that for the first record.
  bool alpha_is_dual_bound = true;
  ExitReason exit_reason = ExitReason::kListEmpty;
  std::vector<std::string> warnings;
};

struct CertificateBound {
  double value = std::numeric_limits<double>::infinity();
  int state = 0;  // 0 .. records.size()
};

// min over valid states i of D1(i) / alpha(i) + D2(i). State 0 and the final
// state are always valid; intermediate states only when alpha_is_dual_bound.
CertificateBound certificate_from_trace(const Trace& trace);

// ln(sum_i exp(x_i)); -inf for an empty range.
double log_sum_exp(const std::vector<double>& x);

}  // namespace flowmech

#endif  // FLOWMECH_TRACE_H_
