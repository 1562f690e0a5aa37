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

#ifndef FLOWMECH_SHORTEST_PATH_H_
#define FLOWMECH_SHORTEST_PATH_H_

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "flowmech/instance.h"

namespace flowmech {

// Compressed adjacency of a UfpInstance. Every vertex lists its outgoing arcs
// in increasing edge index; an undirected edge yields one arc at each end.
class Graph {
 public:
  struct Arc {
    int edge;
    int head;
  };

  explicit Graph(const UfpInstance& instance);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool directed() const { return directed_; }
  const Edge& edge(int e) const { return edges_[e]; }

  std::span<const Arc> out_arcs(int v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

 private:
  int vertex_count_;
  bool directed_;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<Arc> arcs_;
};

struct Path {
  std::vector<int> edges;     // edge indices in walk order
  std::vector<int> vertices;  // edges.size() + 1 vertices, source first
  double length = 0.0;        // left-to-right sum of the edge weights

  int source() const { return vertices.front(); }
  int target() const { return vertices.back(); }

  bool operator==(const Path&) const = default;
};

// Label-setting search from one source under nonnegative edge weights.
//
// Tie-breaking is deterministic: the frontier is ordered by (distance, push
// sequence), arcs are relaxed in increasing edge index, and a label is only
// replaced on strict improvement. Among equal-length paths the one discovered
// first in that order wins. An edge with weight +inf is treated as absent.
class ShortestPathTree {
 public:
  ShortestPathTree() = default;

  // Optional per-search edge restriction: an edge is usable only if
  // demand <= residual[e] + 1e-12 * max(1, residual[e]).
  struct ResidualFilter {
    std::span<const double> residual;
    double demand = 0.0;
  };

  // Recomputes the tree in place, reusing buffers. If `stop_at` is a vertex,
  // the search ends once that vertex is settled; labels of that vertex are
  // identical to a full search.
  void compute(const Graph& graph, std::span<const double> weights, int source,
               int stop_at = -1, const ResidualFilter* filter = nullptr);

  int source() const { return source_; }
  // Only labels of settled vertices are final; after an early stop that is
  // guaranteed for `stop_at` alone.
  bool reachable(int v) const { return dist_[v] < kUnreached; }
  double distance(int v) const { return dist_[v]; }

  // Requires reachable(v).
  Path path_to(int v) const;

 private:
  static constexpr double kUnreached = std::numeric_limits<double>::infinity();

  const Graph* graph_ = nullptr;
  int source_ = -1;
  std::vector<double> dist_;
  std::vector<int> pred_edge_;
  std::vector<int> pred_vertex_;
  std::vector<char> settled_;
};

// Minimum-weight simple s-t path, or nullopt when t is unreachable from s
// (respecting direction in directed instances). Requires s != t, one weight
// per edge, every weight >= 0; +inf marks an edge unusable.
std::optional<Path> shortest_path(const Graph& graph,
                                  std::span<const double> weights, int s,
                                  int t);
std::optional<Path> shortest_path(const UfpInstance& instance,
                                  std::span<const double> weights, int s,
                                  int t);

}  // namespace flowmech

#endif  // FLOWMECH_SHORTEST_PATH_H_
