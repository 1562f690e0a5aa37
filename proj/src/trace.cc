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

#include "flowmech/trace.h"

#include <algorithm>
#include <cmath>

namespace flowmech {

std::string_view exit_reason_name(ExitReason reason) {
  switch (reason) {
    case ExitReason::kListEmpty:
      return "list-empty";
    case ExitReason::kWeightThreshold:
      return "weight-threshold";
    case ExitReason::kSaturated:
      return "saturated";
  }
  return "unknown";
}

double log_sum_exp(const std::vector<double>& x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  double peak = *std::max_element(x.begin(), x.end());
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

namespace {

double candidate(double log_d1, double log_alpha, double d2) {
  if (log_alpha == std::numeric_limits<double>::infinity()) return d2;
  return std::exp(log_d1 - log_alpha) + d2;
}

}  // namespace

CertificateBound certificate_from_trace(const Trace& trace) {
  const auto& recs = trace.records;
  const int k = static_cast<int>(recs.size());
  CertificateBound best;
  auto consider = [&](int state, double value) {
    if (value < best.value) {
      best.value = value;
      best.state = state;
    }
  };
  for (int i = 0; i <= k; ++i) {
    bool last = i == k;
    if (!last && i > 0 && !trace.alpha_is_dual_bound) continue;
    double log_d1 = i == 0 ? trace.initial_log_d1 : recs[i - 1].log_d1;
    double d2 = i == 0 ? 0.0 : recs[i - 1].d2;
    double log_alpha = last ? trace.terminal_log_alpha : recs[i].log_alpha;
    consider(i, candidate(log_d1, log_alpha, d2));
  }
  return best;
}

}  // namespace flowmech
