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

#include "flowmech/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "flowmech/errors.h"

namespace flowmech {
namespace {

bool fits(double load, double demand, double capacity) {
  return load + demand <= capacity + kOracleSlack * std::max(1.0, capacity);
}

class NodeBudget {
 public:
  explicit NodeBudget(std::int64_t limit) : limit_(limit) {}
  void tick() {
    if (++used_ > limit_) {
      throw OracleLimitExceeded("instance too large for oracle: search budget of " +
                                std::to_string(limit_) + " nodes exhausted");
    }
  }

 private:
  std::int64_t limit_;
  std::int64_t used_ = 0;
};

void check_request_limit(std::size_t count, const OracleLimits& limits) {
  if (static_cast<int>(count) > limits.max_requests) {
    throw OracleLimitExceeded("instance too large for oracle: " +
                              std::to_string(count) + " requests, limit " +
                              std::to_string(limits.max_requests));
  }
}

}  // namespace

std::vector<Path> enumerate_paths(const UfpInstance& instance, int s, int t,
                                  int max_paths,
                                  std::span<const double> weights) {
  if (!weights.empty() && weights.size() != instance.edges.size()) {
    throw std::invalid_argument("one weight per edge is required");
  }
  Graph graph(instance);
  std::vector<Path> out;
  std::vector<char> on_path(instance.vertex_count, 0);
  std::vector<int> edges;
  std::vector<int> vertices{s};
  on_path[s] = 1;

  std::function<void(int)> visit = [&](int u) {
    if (u == t) {
      Path p;
      p.edges = edges;
      p.vertices = vertices;
      p.length = 0.0;
      for (int e : edges) p.length += weights.empty() ? 1.0 : weights[e];
      if (static_cast<int>(out.size()) >= max_paths) {
        throw OracleLimitExceeded("instance too large for oracle: more than " +
                                  std::to_string(max_paths) + " simple paths");
      }
      out.push_back(std::move(p));
      return;
    }
    for (const Graph::Arc& arc : graph.out_arcs(u)) {
      if (on_path[arc.head]) continue;
      on_path[arc.head] = 1;
      edges.push_back(arc.edge);
      vertices.push_back(arc.head);
      visit(arc.head);
      vertices.pop_back();
      edges.pop_back();
      on_path[arc.head] = 0;
    }
  };
  if (s != t) visit(s);
  return out;
}

bool allocation_fits(const UfpInstance& instance,
                     std::span<const RoutedRequest> witness) {
  std::vector<double> load(instance.edges.size(), 0.0);
  for (const RoutedRequest& r : witness) {
    const Request& req = instance.requests.at(r.request);
    for (int e : r.path.edges) load.at(e) += req.demand * r.count;
  }
  for (std::size_t e = 0; e < load.size(); ++e) {
    if (!fits(load[e], 0.0, instance.edges[e].capacity)) return false;
  }
  return true;
}

UfpOptimum brute_force_opt_ufp(const UfpInstance& instance,
                               const OracleLimits& limits) {
  const auto& reqs = instance.requests;
  check_request_limit(reqs.size(), limits);
  const int k = static_cast<int>(reqs.size());

  std::vector<std::vector<Path>> paths(k);
  for (int r = 0; r < k; ++r) {
    paths[r] = enumerate_paths(instance, reqs[r].source, reqs[r].target,
                               limits.max_paths);
  }

  // Visit valuable requests first; identical requests become adjacent.
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int r) {
    return std::make_tuple(-reqs[r].value, reqs[r].source, reqs[r].target,
                           reqs[r].demand);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return key(a) < key(b); });
  std::vector<char> same_as_prev(k, 0);
  for (int i = 1; i < k; ++i) same_as_prev[i] = key(order[i]) == key(order[i - 1]);

  std::vector<double> suffix(k + 1, 0.0);
  for (int i = k - 1; i >= 0; --i) {
    suffix[i] = suffix[i + 1] + (paths[order[i]].empty() ? 0.0 : reqs[order[i]].value);
  }
  const double total = suffix[0];

  std::vector<double> load(instance.edges.size(), 0.0);
  std::vector<int> choice(k, 0), best_choice(k, -1);
  double best = -1.0;
  bool done = false;
  NodeBudget budget(limits.max_nodes);

  std::function<void(int, double)> search = [&](int i, double value) {
    budget.tick();
    if (i == k) {
      if (value > best) {
        best = value;
        best_choice = choice;
        if (best >= total) done = true;
      }
      return;
    }
    if (value + suffix[i] <= best) return;
    const int r = order[i];
    const int skip = static_cast<int>(paths[r].size());
    const int first = same_as_prev[i] ? choice[i - 1] : 0;
    for (int c = first; c <= skip && !done; ++c) {
      choice[i] = c;
      if (c == skip) {
        search(i + 1, value);
        continue;
      }
      const Path& p = paths[r][c];
      const double d = reqs[r].demand;
      bool ok = std::all_of(p.edges.begin(), p.edges.end(), [&](int e) {
        return fits(load[e], d, instance.edges[e].capacity);
      });
      if (!ok) continue;
      for (int e : p.edges) load[e] += d;
      search(i + 1, value + reqs[r].value);
      for (int e : p.edges) load[e] -= d;
    }
  };
  search(0, 0.0);

  UfpOptimum result;
  result.value = 0.0;
  std::vector<int> chosen(k, -1);
  for (int i = 0; i < k; ++i) {
    int r = order[i];
    if (best_choice[i] >= 0 && best_choice[i] < static_cast<int>(paths[r].size())) {
      chosen[r] = best_choice[i];
    }
  }
  for (int r = 0; r < k; ++r) {
    if (chosen[r] < 0) continue;
    result.witness.push_back({r, paths[r][chosen[r]], 1});
    result.value += reqs[r].value;
  }
  return result;
}

MucaOptimum brute_force_opt_muca(const MucaInstance& instance,
                                 const OracleLimits& limits) {
  const auto& reqs = instance.requests;
  check_request_limit(reqs.size(), limits);

  // Classes of interchangeable requests: same sorted bundle and value.
  struct Class {
    std::vector<int> bundle;
    double value;
    std::vector<int> members;
  };
  std::vector<Class> classes;
  for (int r = 0; r < static_cast<int>(reqs.size()); ++r) {
    std::vector<int> bundle = reqs[r].bundle;
    std::sort(bundle.begin(), bundle.end());
    auto it = std::find_if(classes.begin(), classes.end(), [&](const Class& c) {
      return c.bundle == bundle && c.value == reqs[r].value;
    });
    if (it == classes.end()) {
      classes.push_back({bundle, reqs[r].value, {r}});
    } else {
      it->members.push_back(r);
    }
  }
  std::stable_sort(classes.begin(), classes.end(),
                   [](const Class& a, const Class& b) { return a.value > b.value; });
  const int k = static_cast<int>(classes.size());
  std::vector<double> suffix(k + 1, 0.0);
  for (int i = k - 1; i >= 0; --i) {
    suffix[i] = suffix[i + 1] + classes[i].value * classes[i].members.size();
  }

  std::vector<int> left(instance.items.size());
  for (std::size_t u = 0; u < left.size(); ++u) left[u] = instance.items[u].multiplicity;
  std::vector<int> count(k, 0), best_count(k, 0);
  double best = -1.0;
  bool done = false;
  NodeBudget budget(limits.max_nodes);

  std::function<void(int, double)> search = [&](int i, double value) {
    budget.tick();
    if (i == k) {
      if (value > best) {
        best = value;
        best_count = count;
        if (best >= suffix[0]) done = true;
      }
      return;
    }
    if (value + suffix[i] <= best) return;
    const Class& c = classes[i];
    int most = static_cast<int>(c.members.size());
    for (int u : c.bundle) most = std::min(most, left[u]);
    for (int n = most; n >= 0 && !done; --n) {
      count[i] = n;
      for (int u : c.bundle) left[u] -= n;
      search(i + 1, value + n * c.value);
      for (int u : c.bundle) left[u] += n;
    }
    count[i] = 0;
  };
  search(0, 0.0);

  MucaOptimum result;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < best_count[i]; ++j) {
      result.winners.push_back(classes[i].members[j]);
      result.value += classes[i].value;
    }
  }
  std::sort(result.winners.begin(), result.winners.end());
  return result;
}

RepeatOptimum brute_force_opt_repeat(const UfpInstance& instance,
                                     int max_total_copies,
                                     const OracleLimits& limits) {
  if (max_total_copies < 0) throw std::invalid_argument("copy cap must be >= 0");
  const auto& reqs = instance.requests;
  check_request_limit(reqs.size(), limits);

  struct Pair {
    int request;
    Path path;
  };
  std::vector<Pair> pairs;
  for (int r = 0; r < static_cast<int>(reqs.size()); ++r) {
    for (Path& p : enumerate_paths(instance, reqs[r].source, reqs[r].target,
                                   limits.max_paths)) {
      pairs.push_back({r, std::move(p)});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
    return reqs[a.request].value > reqs[b.request].value;
  });
  const int k = static_cast<int>(pairs.size());
  std::vector<double> best_value_from(k + 1, 0.0);
  for (int i = k - 1; i >= 0; --i) {
    best_value_from[i] = std::max(best_value_from[i + 1], reqs[pairs[i].request].value);
  }

  std::vector<double> load(instance.edges.size(), 0.0);
  auto room = [&](const Pair& p) {
    // Largest n with load + n * d fitting on every edge of the path.
    const double d = reqs[p.request].demand;
    double n = std::numeric_limits<double>::infinity();
    for (int e : p.path.edges) {
      double c = instance.edges[e].capacity;
      double slack = c + kOracleSlack * std::max(1.0, c) - load[e];
      n = std::min(n, std::floor(slack / d));
    }
    int most = static_cast<int>(std::max(0.0, std::min(n, 1e9)));
    while (most > 0) {  // guard against the floor landing one too high
      bool ok = std::all_of(p.path.edges.begin(), p.path.edges.end(), [&](int e) {
        return fits(load[e], most * d, instance.edges[e].capacity);
      });
      if (ok) break;
      --most;
    }
    return most;
  };

  std::vector<int> count(k, 0), best_count(k, 0);
  double best = -1.0;
  NodeBudget budget(limits.max_nodes);
  std::function<void(int, int, double)> search = [&](int i, int copies_left,
                                                     double value) {
    budget.tick();
    if (value > best) {
      best = value;
      best_count = count;
    }
    if (i == k || copies_left == 0) return;
    if (value + copies_left * best_value_from[i] <= best) return;
    const Pair& p = pairs[i];
    const double d = reqs[p.request].demand;
    int most = std::min(copies_left, room(p));
    for (int n = most; n >= 0; --n) {
      count[i] = n;
      for (int e : p.path.edges) load[e] += n * d;
      search(i + 1, copies_left - n, value + n * reqs[p.request].value);
      for (int e : p.path.edges) load[e] -= n * d;
    }
    count[i] = 0;
  };
  search(0, max_total_copies, 0.0);

  RepeatOptimum result;
  int used = 0;
  for (int i = 0; i < k; ++i) {
    if (best_count[i] == 0) continue;
    result.witness.push_back({pairs[i].request, pairs[i].path, best_count[i]});
    result.value += best_count[i] * reqs[pairs[i].request].value;
    used += best_count[i];
  }
  std::stable_sort(result.witness.begin(), result.witness.end(),
                   [](const RoutedRequest& a, const RoutedRequest& b) {
                     return a.request < b.request;
                   });
  if (used == max_total_copies) {
    std::fill(load.begin(), load.end(), 0.0);
    for (const RoutedRequest& w : result.witness) {
      for (int e : w.path.edges) load[e] += w.count * reqs[w.request].demand;
    }
    result.capped = std::any_of(pairs.begin(), pairs.end(),
                                [&](const Pair& p) { return room(p) > 0; });
  }
  return result;
}

std::vector<DualViolation> check_dual_feasible(const UfpInstance& instance,
                                               const DualAssignment& dual,
                                               int max_paths) {
  if (dual.y.size() != instance.edges.size()) {
    throw std::invalid_argument("dual needs one y per edge");
  }
  if (!dual.z.empty() && dual.z.size() != instance.requests.size()) {
    throw std::invalid_argument("dual needs one z per request");
  }
  Graph graph(instance);
  std::vector<DualViolation> out;
  for (int r = 0; r < static_cast<int>(instance.requests.size()); ++r) {
    const Request& req = instance.requests[r];
    double len = std::numeric_limits<double>::infinity();
    if (max_paths > 0) {
      for (const Path& p : enumerate_paths(instance, req.source, req.target,
                                           max_paths, dual.y)) {
        len = std::min(len, p.length);
      }
      if (len == std::numeric_limits<double>::infinity()) continue;
    } else {
      auto p = shortest_path(graph, dual.y, req.source, req.target);
      if (!p) continue;
      len = p->length;
    }
    double z = dual.z.empty() ? 0.0 : dual.z[r];
    double slack = z + req.demand * len - req.value;
    if (slack < -1e-9 * std::max(1.0, req.value)) out.push_back({r, slack});
  }
  return out;
}

std::vector<DualViolation> check_dual_feasible(const MucaInstance& instance,
                                               const DualAssignment& dual) {
  if (dual.y.size() != instance.items.size()) {
    throw std::invalid_argument("dual needs one y per item");
  }
  if (!dual.z.empty() && dual.z.size() != instance.requests.size()) {
    throw std::invalid_argument("dual needs one z per request");
  }
  std::vector<DualViolation> out;
  for (int r = 0; r < static_cast<int>(instance.requests.size()); ++r) {
    const MucaRequest& req = instance.requests[r];
    double sum = 0.0;
    for (int u : req.bundle) sum += dual.y[u];
    double z = dual.z.empty() ? 0.0 : dual.z[r];
    double slack = z + sum - req.value;
    if (slack < -1e-9 * std::max(1.0, req.value)) out.push_back({r, slack});
  }
  return out;
}

}  // namespace flowmech
