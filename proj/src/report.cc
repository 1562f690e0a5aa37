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

#include "flowmech/report.h"

#include <cmath>
#include <map>
#include <set>

#include "flowmech/errors.h"
#include "json.hpp"

namespace flowmech {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

std::string_view stop_rule_name(StopRule rule) {
  return rule == StopRule::kUntilSaturated ? "until-saturated" : "weight-threshold";
}

ordered_json common_tail(const Trace& trace, double epsilon, double B,
                         double primal, double certificate, bool guarantee) {
  ordered_json doc;
  doc["primal_value"] = number(primal);
  doc["dual_certificate"] = number(certificate);
  doc["exit_reason"] = exit_reason_name(trace.exit_reason);
  doc["epsilon"] = epsilon;
  doc["B"] = number(B);
  doc["iterations"] = trace.records.size();
  doc["guarantee"] = guarantee ? "holds" : "void";
  doc["warnings"] = trace.warnings;
  return doc;
}

ordered_json path_witness(const std::vector<RoutedRequest>& witness,
                          const UfpInstance& instance, bool counts) {
  ordered_json out = ordered_json::array();
  for (const RoutedRequest& w : witness) {
    ordered_json entry;
    entry["request"] = instance.requests[w.request].id;
    entry["path"] = w.path.edges;
    if (counts) entry["count"] = w.count;
    out.push_back(entry);
  }
  return out;
}

}  // namespace

std::string ufp_solution_json(const UfpSolution& solution,
                              const NormalizedInstance& instance) {
  ordered_json doc;
  doc["allocated"] = ordered_json::array();
  for (const Allocation& a : solution.allocation) {
    doc["allocated"].push_back(
        {{"request", a.request_id}, {"path", a.path.edges}, {"value", a.value}});
  }
  const bool guarantee = guarantee_holds(static_cast<int>(instance.inner.edges.size()),
                                         solution.B, solution.epsilon);
  doc.update(common_tail(solution.trace, solution.epsilon, solution.B,
                         solution.primal_value, solution.dual_certificate, guarantee));
  doc["scale"] = instance.scale;
  doc["stop_rule"] = stop_rule_name(solution.stop_rule);
  return dump(doc);
}

std::string repeat_solution_json(const RepeatSolution& solution,
                                 const NormalizedInstance& instance) {
  ordered_json doc;
  doc["allocated"] = ordered_json::array();
  for (const RepeatAllocation& a : solution.allocation) {
    doc["allocated"].push_back({{"request", a.request_id},
                                {"path", a.path.edges},
                                {"value", a.value},
                                {"count", a.count}});
  }
  const bool guarantee = guarantee_holds(static_cast<int>(instance.inner.edges.size()),
                                         solution.B, solution.epsilon);
  doc.update(common_tail(solution.trace, solution.epsilon, solution.B,
                         solution.primal_value, solution.dual_certificate, guarantee));
  doc["scale"] = instance.scale;
  return dump(doc);
}

std::string muca_solution_json(const MucaSolution& solution,
                               const MucaInstance& instance) {
  ordered_json doc;
  doc["allocated"] = ordered_json::array();
  for (const MucaWinner& w : solution.winners) {
    ordered_json bundle = ordered_json::array();
    for (int u : w.bundle) bundle.push_back(instance.items[u].id);
    doc["allocated"].push_back(
        {{"request", w.request_id}, {"bundle", bundle}, {"value", w.value}});
  }
  const bool guarantee =
      !instance.items.empty() &&
      guarantee_holds(static_cast<int>(instance.items.size()), solution.B, solution.epsilon);
  doc.update(common_tail(solution.trace, solution.epsilon, solution.B,
                         solution.primal_value, solution.dual_certificate, guarantee));
  return dump(doc);
}

std::string trace_json_lines(const Trace& trace, bool bundles) {
  std::string out;
  if (trace.records.empty()) {
    ordered_json line;
    line["iteration"] = 0;
    line["log_d1"] = number(trace.initial_log_d1);
    line["exit_reason"] = exit_reason_name(trace.exit_reason);
    return line.dump() + "\n";
  }
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const IterationRecord& r = trace.records[i];
    ordered_json line;
    line["iteration"] = r.iteration;
    line["request"] = r.request_id;
    line[bundles ? "bundle" : "path"] = r.path;
    line["alpha"] = number(r.alpha);
    line["log_alpha"] = number(r.log_alpha);
    line["d1"] = number(r.d1);
    line["log_d1"] = number(r.log_d1);
    line["d2"] = number(r.d2);
    line["primal"] = number(r.primal);
    if (i + 1 == trace.records.size()) {
      line["exit_reason"] = exit_reason_name(trace.exit_reason);
    }
    out += line.dump() + "\n";
  }
  return out;
}

std::string payments_json(const PaymentProfile& payments) {
  ordered_json doc;
  doc["winners"] = ordered_json::array();
  for (const PaymentEntry& e : payments.entries) {
    if (!e.critical.winner) continue;
    doc["winners"].push_back(
        {{"request", e.request_id}, {"value", e.value}, {"payment", e.critical.payment}});
  }
  doc["tolerance"] = payments.tolerance;
  return dump(doc);
}

std::string audit_json(const AuditReport& report, std::string_view request_id) {
  ordered_json doc;
  doc["request"] = request_id;
  doc["tolerance"] = report.tolerance;
  doc["truthful_utility"] = report.truthful_utility;
  doc["best_utility"] = report.best_utility;
  doc["gain"] = report.gain;
  doc["points"] = report.points.size();
  doc["truthful"] = report.gain <= 2.0 * report.tolerance;
  return dump(doc);
}

std::string ufp_optimum_json(const UfpOptimum& optimum, const UfpInstance& instance) {
  ordered_json doc;
  doc["opt"] = optimum.value;
  doc["witness"] = path_witness(optimum.witness, instance, false);
  return dump(doc);
}

std::string muca_optimum_json(const MucaOptimum& optimum, const MucaInstance& instance) {
  ordered_json doc;
  doc["opt"] = optimum.value;
  doc["witness"] = ordered_json::array();
  for (int r : optimum.winners) doc["witness"].push_back(instance.requests[r].id);
  return dump(doc);
}

std::string repeat_optimum_json(const RepeatOptimum& optimum,
                                const UfpInstance& instance) {
  ordered_json doc;
  doc["opt"] = optimum.value;
  doc["witness"] = path_witness(optimum.witness, instance, true);
  doc["capped"] = optimum.capped;
  return dump(doc);
}

VerifyReport verify_solution(std::string_view instance_text,
                             std::string_view solution_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(solution_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("solution: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("allocated") || !doc["allocated"].is_array()) {
    throw ValidationError("allocated", "solution needs an \"allocated\" array");
  }
  VerifyReport report;
  auto fail = [&](std::string problem) {
    report.feasible = false;
    report.problems.push_back(std::move(problem));
  };
  auto read_count = [&](const ordered_json& entry) -> int {
    if (!entry.contains("count")) return 1;
    if (!entry["count"].is_number_integer() || entry["count"].get<int>() < 1) {
      throw ValidationError("count", "must be a positive integer");
    }
    return entry["count"].get<int>();
  };

  if (looks_like_muca(instance_text)) {
    MucaInstance inst = parse_muca_instance(instance_text);
    std::vector<int> taken(inst.items.size(), 0);
    std::set<int> seen;
    for (const auto& entry : doc["allocated"]) {
      const std::string id = entry.at("request").get<std::string>();
      int r = inst.request_index(id);
      if (r < 0) {
        fail("unknown request " + id);
        continue;
      }
      if (!seen.insert(r).second) fail("request " + id + " served twice");
      std::set<std::string> reported;
      for (const auto& item : entry.at("bundle")) reported.insert(item.get<std::string>());
      std::set<std::string> expected;
      for (int u : inst.requests[r].bundle) expected.insert(inst.items[u].id);
      if (reported != expected) fail("request " + id + " bundle differs from its request");
      for (int u : inst.requests[r].bundle) ++taken[u];
      report.primal_value += inst.requests[r].value;
    }
    for (std::size_t u = 0; u < taken.size(); ++u) {
      if (taken[u] > inst.items[u].multiplicity) {
        fail("item " + inst.items[u].id + " allocated beyond its multiplicity");
      }
    }
  } else {
    UfpInstance inst = parse_ufp_instance(instance_text);
    std::vector<double> load(inst.edges.size(), 0.0);
    std::set<int> seen;
    for (const auto& entry : doc["allocated"]) {
      const std::string id = entry.at("request").get<std::string>();
      int r = inst.request_index(id);
      if (r < 0) {
        fail("unknown request " + id);
        continue;
      }
      const int count = read_count(entry);
      if (!entry.contains("count") && !seen.insert(r).second) {
        fail("request " + id + " served twice");
      }
      const Request& req = inst.requests[r];
      std::vector<int> edges = entry.at("path").get<std::vector<int>>();
      int at = req.source;
      std::set<int> visited{at};
      bool walk_ok = true;
      for (int e : edges) {
        if (e < 0 || e >= static_cast<int>(inst.edges.size())) {
          walk_ok = false;
          break;
        }
        const Edge& edge = inst.edges[e];
        if (edge.tail == at) {
          at = edge.head;
        } else if (!inst.directed && edge.head == at) {
          at = edge.tail;
        } else {
          walk_ok = false;
          break;
        }
        if (!visited.insert(at).second) {
          walk_ok = false;
          break;
        }
        load[e] += req.demand * count;
      }
      if (!walk_ok || at != req.target) {
        fail("request " + id + " path is not a simple source-target walk");
      }
      report.primal_value += req.value * count;
    }
    for (std::size_t e = 0; e < load.size(); ++e) {
      const double c = inst.edges[e].capacity;
      if (load[e] > c * (1.0 + 1e-9)) {
        fail("edge " + std::to_string(e) + " load exceeds capacity");
      }
    }
  }
  if (doc.contains("primal_value") && doc["primal_value"].is_number()) {
    const double claimed = doc["primal_value"].get<double>();
    if (std::abs(claimed - report.primal_value) > 1e-9 * std::max(1.0, claimed)) {
      fail("primal_value does not match the allocation");
    }
  }
  return report;
}

std::string verify_json(const VerifyReport& report) {
  ordered_json doc;
  doc["feasible"] = report.feasible;
  doc["primal_value"] = report.primal_value;
  doc["problems"] = report.problems;
  return dump(doc);
}

}  // namespace flowmech
