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

// Machine-readable result documents. Keys are emitted in a fixed order and
// numbers in shortest round-trip form, so equal results give equal bytes.
// Non-finite numbers are written as null.

#ifndef FLOWMECH_REPORT_H_
#define FLOWMECH_REPORT_H_

#include <string>
#include <string_view>
#include <vector>

#include "flowmech/instance.h"
#include "flowmech/mechanism.h"
#include "flowmech/muca_solver.h"
#include "flowmech/oracle.h"
#include "flowmech/repeat_solver.h"
#include "flowmech/trace.h"
#include "flowmech/ufp_solver.h"

namespace flowmech {

// {"allocated": [{"request", "path", "value"}], "primal_value",
//  "dual_certificate", "exit_reason", "epsilon", "B", "scale", "stop_rule",
//  "iterations", "guarantee", "warnings"}
std::string ufp_solution_json(const UfpSolution& solution,
                              const NormalizedInstance& instance);
// As above with "count" per allocation entry.
std::string repeat_solution_json(const RepeatSolution& solution,
                                 const NormalizedInstance& instance);
// As above with "bundle" (item ids) in place of "path".
std::string muca_solution_json(const MucaSolution& solution,
                               const MucaInstance& instance);

// One JSON object per line and record; the last line also carries
// "exit_reason". A run without records yields one summary line.
std::string trace_json_lines(const Trace& trace, bool bundles);

// {"winners": [{"request", "value", "payment"}], "tolerance"}
std::string payments_json(const PaymentProfile& payments);

std::string audit_json(const AuditReport& report, std::string_view request_id);

// {"opt", "witness": [{"request", "path", "count"?}], "capped"?}
std::string ufp_optimum_json(const UfpOptimum& optimum, const UfpInstance& instance);
std::string muca_optimum_json(const MucaOptimum& optimum, const MucaInstance& instance);
std::string repeat_optimum_json(const RepeatOptimum& optimum,
                                const UfpInstance& instance);

struct VerifyReport {
  bool feasible = true;
  double primal_value = 0.0;
  std::vector<std::string> problems;
};

// Re-checks a solution document against the instance it was computed for:
// known request ids, contiguous simple source-target walks, no request
// served twice (unless counted repeats), loads within capacity, and the
// reported primal value.
VerifyReport verify_solution(std::string_view instance_text,
                             std::string_view solution_text);
std::string verify_json(const VerifyReport& report);

}  // namespace flowmech

#endif  // FLOWMECH_REPORT_H_
