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

#include "flowmech/shortest_path.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace flowmech {

Graph::Graph(const UfpInstance& instance)
    : vertex_count_(instance.vertex_count),
      directed_(instance.directed),
      edges_(instance.edges),
      offsets_(instance.vertex_count + 1, 0) {
  for (const Edge& e : edges_) {
    ++offsets_[e.tail + 1];
    if (!directed_) ++offsets_[e.head + 1];
  }
  for (int v = 0; v < vertex_count_; ++v) offsets_[v + 1] += offsets_[v];
  arcs_.resize(offsets_.back());
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (int i = 0; i < edge_count(); ++i) {
    const Edge& e = edges_[i];
    arcs_[fill[e.tail]++] = {i, e.head};
    if (!directed_) arcs_[fill[e.head]++] = {i, e.tail};
  }
}

void ShortestPathTree::compute(const Graph& graph,
                               std::span<const double> weights, int source,
                               int stop_at, const ResidualFilter* filter) {
  if (static_cast<int>(weights.size()) != graph.edge_count()) {
    throw std::invalid_argument("one weight per edge is required");
  }
  graph_ = &graph;
  source_ = source;
  const int n = graph.vertex_count();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  dist_.assign(n, kInf);
  pred_edge_.assign(n, -1);
  pred_vertex_.assign(n, -1);
  settled_.assign(n, 0);

  // (distance, push sequence, vertex); smallest first.
  using Entry = std::tuple<double, std::uint64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  std::uint64_t sequence = 0;
  dist_[source] = 0.0;
  frontier.emplace(0.0, sequence++, source);
  while (!frontier.empty()) {
    auto [d, seq, u] = frontier.top();
    frontier.pop();
    if (settled_[u] || d > dist_[u]) continue;
    settled_[u] = 1;
    if (u == stop_at) break;
    for (const Graph::Arc& arc : graph.out_arcs(u)) {
      double w = weights[arc.edge];
      if (w == kInf || settled_[arc.head]) continue;
      if (filter != nullptr) {
        double residual = filter->residual[arc.edge];
        if (filter->demand > residual + 1e-12 * std::max(1.0, residual)) {
          continue;
        }
      }
      double candidate = d + w;
      if (candidate < dist_[arc.head]) {
        dist_[arc.head] = candidate;
        pred_edge_[arc.head] = arc.edge;
        pred_vertex_[arc.head] = u;
        frontier.emplace(candidate, sequence++, arc.head);
      }
    }
  }
}

Path ShortestPathTree::path_to(int v) const {
  Path path;
  path.length = dist_[v];
  for (int at = v; at != source_; at = pred_vertex_[at]) {
    path.vertices.push_back(at);
    path.edges.push_back(pred_edge_[at]);
  }
  path.vertices.push_back(source_);
  std::reverse(path.vertices.begin(), path.vertices.end());
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

std::optional<Path> shortest_path(const Graph& graph,
                                  std::span<const double> weights, int s,
                                  int t) {
  if (s == t) throw std::invalid_argument("shortest_path requires s != t");
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be >= 0");
  }
  ShortestPathTree tree;
  tree.compute(graph, weights, s, t);
  if (!tree.reachable(t)) return std::nullopt;
  return tree.path_to(t);
}

std::optional<Path> shortest_path(const UfpInstance& instance,
                                  std::span<const double> weights, int s,
                                  int t) {
  Graph graph(instance);
  return shortest_path(graph, weights, s, t);
}

}  // namespace flowmech
