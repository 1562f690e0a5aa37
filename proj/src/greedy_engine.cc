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

#include "greedy_engine.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "flowmech/errors.h"
#include "flowmech/oracle.h"
#include "flowmech/parallel.h"

namespace flowmech::internal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Weights are kept as exp(x_e - shift) / c_e; the shift moves once the
// largest exponent runs this far ahead of it.
constexpr double kShiftWindow = 600.0;
// Below this much work per iteration the pool costs more than it saves.
constexpr long long kParallelWorkFloor = 200'000;

struct Candidate {
  int request = -1;
  double score = kInf;  // (d / v) * shifted length
  Path path;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.request < 0) return false;
  if (b.request < 0) return true;
  if (a.score != b.score) return a.score < b.score;
  return a.request < b.request;
}

class PathGreedy {
 public:
  PathGreedy(const UfpInstance& instance, const EngineConfig& config)
      : inst_(instance),
        cfg_(config),
        graph_(instance),
        saturating_(config.stop_rule == StopRule::kUntilSaturated),
        threads_(resolve_threads(config.threads)),
        loads_(instance.edges.size(), 0.0),
        exponent_(instance.edges.size(), 0.0),
        weights_(instance.edges.size(), 0.0),
        residual_(instance.edges.size(), 0.0) {
    for (std::size_t e = 0; e < weights_.size(); ++e) {
      weights_[e] = 1.0 / inst_.edges[e].capacity;
      residual_[e] = inst_.edges[e].capacity;
    }
  }

  EngineResult run() {
    EngineResult out;
    Trace& trace = out.trace;
    trace.initial_log_d1 = std::log(static_cast<double>(inst_.edges.size()));
    trace.alpha_is_dual_bound = !saturating_;

    std::vector<int> pending = routable_requests(trace);
    std::vector<int> blocked;  // saturating mode: no residual path left
    const double threshold = cfg_.epsilon * (cfg_.B - 1.0);
    double log_d1 = trace.initial_log_d1;
    const long long iteration_cap = iteration_limit();
    double primal = 0.0, d2 = 0.0;

    while (true) {
      if (pending.empty()) {
        trace.exit_reason = blocked.empty() ? ExitReason::kListEmpty
                                            : ExitReason::kSaturated;
        break;
      }
      if (!saturating_ && log_d1 > threshold) {
        trace.exit_reason = ExitReason::kWeightThreshold;
        break;
      }
      std::vector<char> unfit;
      Candidate best = evaluate(pending, saturating_, &unfit);
      if (saturating_) {
        std::vector<int> keep;
        for (std::size_t i = 0; i < pending.size(); ++i) {
          (unfit[i] ? blocked : keep).push_back(pending[i]);
        }
        pending.swap(keep);
      }
      if (best.request < 0) {
        trace.exit_reason = saturating_ ? ExitReason::kSaturated
                                        : ExitReason::kListEmpty;
        break;
      }
      if (static_cast<long long>(trace.records.size()) >= iteration_cap) {
        throw InvariantViolation("greedy exceeded its iteration bound");
      }

      const Request& req = inst_.requests[best.request];
      IterationRecord rec;
      rec.iteration = static_cast<int>(trace.records.size()) + 1;
      rec.request = best.request;
      rec.request_id = req.id;
      rec.path = best.path.edges;
      rec.log_alpha = std::log(best.score) + shift_;
      rec.alpha = std::exp(rec.log_alpha);

      route(best.path, req.demand);
      log_d1 = log_sum_exp(exponent_);
      primal += req.value;
      if (!cfg_.repeat) d2 += req.value;
      rec.log_d1 = log_d1;
      rec.d1 = std::exp(log_d1);
      rec.d2 = d2;
      rec.primal = primal;
      trace.records.push_back(std::move(rec));

      best.path.length = best.path.length * std::exp(shift_);
      out.selections.push_back({best.request, std::move(best.path)});
      if (!cfg_.repeat) {
        pending.erase(std::find(pending.begin(), pending.end(),
                                out.selections.back().request));
      }
    }

    // Terminal alpha over every request still eligible, without filtering.
    std::vector<int> rest = pending;
    rest.insert(rest.end(), blocked.begin(), blocked.end());
    std::sort(rest.begin(), rest.end());
    if (!rest.empty()) {
      Candidate last = evaluate(rest, false, nullptr);
      if (last.request >= 0) {
        trace.terminal_log_alpha = std::log(last.score) + shift_;
      }
    }
    out.loads = loads_;
    return out;
  }

 private:
  std::vector<int> routable_requests(Trace& trace) const {
    std::vector<int> out;
    std::map<int, ShortestPathTree> trees;
    std::vector<double> unit(inst_.edges.size(), 1.0);
    for (int r = 0; r < static_cast<int>(inst_.requests.size()); ++r) {
      const Request& req = inst_.requests[r];
      auto [it, fresh] = trees.try_emplace(req.source);
      if (fresh) it->second.compute(graph_, unit, req.source);
      if (it->second.reachable(req.target)) {
        out.push_back(r);
      } else {
        trace.warnings.push_back("request " + req.id +
                                 " has no path from source to target; dropped");
      }
    }
    return out;
  }

  long long iteration_limit() const {
    if (inst_.requests.empty()) return 0;
    double d_min = kInf, total = 0.0;
    for (const Request& r : inst_.requests) d_min = std::min(d_min, r.demand);
    for (const Edge& e : inst_.edges) total += e.capacity;
    double bound = std::ceil(total / d_min) + 1.0;
    if (!cfg_.repeat) bound = std::min(bound, static_cast<double>(inst_.requests.size()));
    return static_cast<long long>(std::min(bound, 9e18));
  }

  // Best request among `subset` (instance order) under the current weights.
  // With `filter`, marks in `unfit` the requests that have no residual path.
  Candidate evaluate(const std::vector<int>& subset, bool filter,
                     std::vector<char>* unfit) {
    struct Group {
      int source;
      double demand;
      std::vector<int> slots;  // positions in `subset`
    };
    std::vector<Group> groups;
    std::map<std::pair<int, double>, int> index;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      const Request& req = inst_.requests[subset[i]];
      auto key = std::make_pair(req.source, filter ? req.demand : 0.0);
      auto [it, fresh] = index.try_emplace(key, static_cast<int>(groups.size()));
      if (fresh) groups.push_back({req.source, key.second, {}});
      groups[it->second].slots.push_back(static_cast<int>(i));
    }
    if (unfit) unfit->assign(subset.size(), 0);

    std::vector<Candidate> winners(groups.size());
    auto solve_group = [&](std::size_t g) {
      thread_local ShortestPathTree tree;
      const Group& group = groups[g];
      int target = inst_.requests[subset[group.slots.front()]].target;
      for (int slot : group.slots) {
        if (inst_.requests[subset[slot]].target != target) target = -1;
      }
      ShortestPathTree::ResidualFilter rf{residual_, group.demand};
      tree.compute(graph_, weights_, group.source, target, filter ? &rf : nullptr);
      Candidate& win = winners[g];
      for (int slot : group.slots) {
        const int r = subset[slot];
        const Request& req = inst_.requests[r];
        if (!tree.reachable(req.target)) {
          if (unfit) (*unfit)[slot] = 1;
          continue;
        }
        double score = req.demand / req.value * tree.distance(req.target);
        if (win.request < 0 || score < win.score) {
          win.request = r;
          win.score = score;
          win.path = tree.path_to(req.target);
        }
      }
    };
    long long work = static_cast<long long>(groups.size()) *
                     static_cast<long long>(inst_.edges.size());
    int threads = work >= kParallelWorkFloor ? threads_ : 1;
    parallel_for(groups.size(), threads, solve_group);

    Candidate best;
    for (Candidate& c : winners) {
      if (better(c, best)) best = std::move(c);
    }
    return best;
  }

  void route(const Path& path, double demand) {
    const double rate = cfg_.epsilon * cfg_.B;
    double peak = 0.0;
    for (int e : path.edges) {
      const double c = inst_.edges[e].capacity;
      loads_[e] += demand;
      residual_[e] = c - loads_[e];
      if (loads_[e] > c * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "edge " << e << " load " << loads_[e] << " exceeds capacity " << c;
        throw InvariantViolation(msg.str());
      }
      exponent_[e] = rate * loads_[e] / c;
      peak = std::max(peak, exponent_[e]);
    }
    if (peak - shift_ > kShiftWindow) {
      shift_ = peak;
      for (std::size_t e = 0; e < weights_.size(); ++e) {
        weights_[e] = std::exp(exponent_[e] - shift_) / inst_.edges[e].capacity;
      }
    } else {
      for (int e : path.edges) {
        weights_[e] = std::exp(exponent_[e] - shift_) / inst_.edges[e].capacity;
      }
    }
  }

  const UfpInstance& inst_;
  EngineConfig cfg_;
  Graph graph_;
  bool saturating_;
  int threads_;
  std::vector<double> loads_;
  std::vector<double> exponent_;  // eps * B * f_e / c_e
  std::vector<double> weights_;   // exp(exponent - shift) / c_e
  std::vector<double> residual_;
  double shift_ = 0.0;
};

}  // namespace

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ValidationError("epsilon", "must lie in (0, 1]");
  }
}

void check_bound(double B) {
  if (!(B >= 1.0)) {
    throw InfeasibleParameters("B = " + std::to_string(B) +
                               " < 1: the feasibility guarantee does not apply");
  }
}

EngineResult run_path_greedy(const UfpInstance& instance,
                             const EngineConfig& config) {
  check_epsilon(config.epsilon);
  check_bound(config.B);
  return PathGreedy(instance, config).run();
}

void verify_path_certificate(const UfpInstance& instance, const Trace& trace,
                             int state, double epsilon, double B, bool repeat) {
  const int k = static_cast<int>(trace.records.size());
  const double log_alpha =
      state == k ? trace.terminal_log_alpha : trace.records[state].log_alpha;
  std::vector<double> loads(instance.edges.size(), 0.0);
  DualAssignment dual;
  dual.y.assign(instance.edges.size(), 0.0);
  if (!repeat) dual.z.assign(instance.requests.size(), 0.0);
  for (int i = 0; i < state; ++i) {
    const IterationRecord& rec = trace.records[i];
    const double d = instance.requests[rec.request].demand;
    for (int e : rec.path) loads[e] += d;
    if (!repeat) dual.z[rec.request] = instance.requests[rec.request].value;
  }
  if (log_alpha != kInf) {
    for (std::size_t e = 0; e < loads.size(); ++e) {
      const double c = instance.edges[e].capacity;
      dual.y[e] = std::exp(epsilon * B * loads[e] / c - log_alpha) / c;
    }
  }
  auto violations = check_dual_feasible(instance, dual);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "scaled dual of state " << state << " violates the constraint of request "
        << instance.requests[violations.front().request].id << " by "
        << -violations.front().slack;
    throw InvariantViolation(msg.str());
  }
}

}  // namespace flowmech::internal
