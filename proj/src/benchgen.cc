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

#include "flowmech/benchgen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "flowmech/errors.h"
#include "flowmech/shortest_path.h"

namespace flowmech {
namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

Path path_from_edges(const UfpInstance& inst, int source, std::vector<int> edges) {
  Path p;
  p.vertices.push_back(source);
  for (int e : edges) {
    const Edge& edge = inst.edges[e];
    int at = p.vertices.back();
    p.vertices.push_back(edge.tail == at ? edge.head : edge.tail);
  }
  p.length = static_cast<double>(edges.size());
  p.edges = std::move(edges);
  return p;
}

struct Layered {
  UfpInstance instance;
  std::vector<std::vector<int>> diagonal;  // per i: edges of s_i ~> v_i -> t
};

Layered build_layered(int B, int ell, bool subdivide) {
  require(B >= 1, "B", "must be >= 1");
  require(ell >= 1, "ell", "must be >= 1");
  Layered out;
  UfpInstance& inst = out.instance;
  inst.directed = true;
  const int t = 2 * ell;
  int next_vertex = t + 1;
  const double cap = B;
  auto s = [](int i) { return i - 1; };
  auto v = [ell](int j) { return ell + j - 1; };
  out.diagonal.resize(ell);
  for (int i = 1; i <= ell; ++i) {
    for (int j = ell; j >= i; --j) {
      const int hops = subdivide ? i * ell + 1 - j : 1;
      int at = s(i);
      for (int h = 1; h <= hops; ++h) {
        int to = h == hops ? v(j) : next_vertex++;
        if (j == i) out.diagonal[i - 1].push_back(static_cast<int>(inst.edges.size()));
        inst.edges.push_back({at, to, cap});
        at = to;
      }
    }
  }
  for (int j = 1; j <= ell; ++j) {
    out.diagonal[j - 1].push_back(static_cast<int>(inst.edges.size()));
    inst.edges.push_back({v(j), t, cap});
  }
  inst.vertex_count = next_vertex;
  for (int i = 1; i <= ell; ++i) {
    for (int k = 1; k <= B; ++k) {
      inst.requests.push_back(
          {"s" + std::to_string(i) + "-" + std::to_string(k), s(i), t, 1.0, 1.0});
    }
  }
  return out;
}

}  // namespace

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

int SeededRng::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

UfpInstance gen_directed_lb(int B, int ell, bool subdivide) {
  return build_layered(B, ell, subdivide).instance;
}

std::vector<RoutedRequest> directed_lb_witness(int B, int ell, bool subdivide) {
  Layered layered = build_layered(B, ell, subdivide);
  std::vector<RoutedRequest> out;
  for (int r = 0; r < static_cast<int>(layered.instance.requests.size()); ++r) {
    const int i = r / B;
    out.push_back({r, path_from_edges(layered.instance, i, layered.diagonal[i]), 1});
  }
  return out;
}

double directed_lb_value_bound(int B, int ell) {
  const double b = B;
  return b * ell * (1.0 - std::pow(b / (b + 1.0), b)) + b * b;
}

double directed_lb_ratio(int B) {
  const double b = B;
  return 1.0 / (1.0 - std::pow(b / (b + 1.0), b));
}

UfpInstance gen_undirected_lb(int B) {
  require(B >= 2 && B % 2 == 0, "B", "must be an even integer >= 2");
  UfpInstance inst;
  inst.directed = false;
  inst.vertex_count = 7;
  const double cap = B;
  // v1v7, v3v7, v4v7, v6v7, v1v2, v2v3, v4v5, v5v6 with v_k = k - 1.
  const int ends[8][2] = {{0, 6}, {2, 6}, {3, 6}, {5, 6},
                          {0, 1}, {1, 2}, {3, 4}, {4, 5}};
  for (const auto& e : ends) inst.edges.push_back({e[0], e[1], cap});
  for (int k = 1; k <= B; ++k) {
    inst.requests.push_back({"A" + std::to_string(k), 0, 2, 1.0, 1.0});
    inst.requests.push_back({"C" + std::to_string(k), 3, 5, 1.0, 1.0});
  }
  for (int k = 1; k <= B; ++k) {
    inst.requests.push_back({"D" + std::to_string(k), 0, 5, 1.0, 1.0});
  }
  for (int k = 1; k <= B; ++k) {
    inst.requests.push_back({"E" + std::to_string(k), 2, 3, 1.0, 1.0});
  }
  return inst;
}

std::vector<RoutedRequest> undirected_lb_witness(int B) {
  UfpInstance inst = gen_undirected_lb(B);
  std::vector<RoutedRequest> out;
  for (int r = 0; r < static_cast<int>(inst.requests.size()); ++r) {
    const Request& req = inst.requests[r];
    std::vector<int> edges;
    switch (req.id.front()) {
      case 'A': edges = {4, 5}; break;
      case 'C': edges = {6, 7}; break;
      case 'D': edges = {0, 3}; break;
      default: edges = {1, 2}; break;
    }
    out.push_back({r, path_from_edges(inst, req.source, std::move(edges)), 1});
  }
  return out;
}

MucaInstance gen_muca_lb(int p, int B, int m) {
  require(p >= 3 && p % 2 == 1, "p", "must be an odd integer >= 3");
  require(B >= 2 && B % 2 == 0, "B", "must be an even integer >= 2");
  require(m >= p * (p + 1) && m % (p * (p + 1)) == 0, "m",
          "must be a positive multiple of p(p+1)");
  const int cell = m / (p * (p + 1));
  MucaInstance inst;
  auto first = [&](int i, int j) { return ((i - 1) * (p + 1) + (j - 1)) * cell; };
  for (int i = 1; i <= p; ++i) {
    for (int j = 1; j <= p + 1; ++j) {
      for (int k = 1; k <= cell; ++k) {
        inst.items.push_back({"u" + std::to_string(i) + "_" + std::to_string(j) +
                                  "_" + std::to_string(k),
                              B});
      }
    }
  }
  auto add_cell = [&](std::vector<int>& bundle, int i, int j) {
    for (int k = 0; k < cell; ++k) bundle.push_back(first(i, j) + k);
  };
  for (int round = 1; round <= B / 2; ++round) {
    for (int row = 1; row <= p; ++row) {
      std::vector<int> bundle;
      for (int j = 1; j <= p + 1; ++j) add_cell(bundle, row, j);
      inst.requests.push_back({"row" + std::to_string(row) + "-" + std::to_string(round),
                               std::move(bundle), 1.0});
    }
  }
  for (int l = 1; l <= (p + 1) / 2; ++l) {
    for (int variant = 0; variant < 2; ++variant) {
      const int column = variant == 0 ? 2 * l - 1 : 2 * l;
      for (int copy = 1; copy <= B / 2; ++copy) {
        std::vector<int> bundle;
        add_cell(bundle, 1, 2 * l - 1);
        add_cell(bundle, 1, 2 * l);
        for (int i = 2; i <= p; ++i) add_cell(bundle, i, column);
        inst.requests.push_back({"col" + std::to_string(l) + (variant == 0 ? "a-" : "b-") +
                                     std::to_string(copy),
                                 std::move(bundle), 1.0});
      }
    }
  }
  return inst;
}

UfpInstance gen_random(const RandomUfpSpec& spec) {
  require(spec.vertices >= 2, "vertices", "must be >= 2");
  require(spec.edges >= spec.vertices - 1, "edges", "must be >= vertices - 1");
  require(spec.requests >= 0, "requests", "must be >= 0");
  require(spec.B > 0.0, "B", "must be positive");
  require(spec.capacity_spread >= 1.0, "capacity_spread", "must be >= 1");
  require(spec.demand_min > 0.0 && spec.demand_min <= spec.demand_max &&
              spec.demand_max <= 1.0,
          "demand", "range must satisfy 0 < min <= max <= 1");
  require(spec.value_min > 0.0 && spec.value_min <= spec.value_max, "value",
          "range must satisfy 0 < min <= max");

  SeededRng rng(spec.seed);
  UfpInstance inst;
  inst.directed = spec.directed;
  inst.vertex_count = spec.vertices;
  auto capacity = [&] { return spec.B * rng.uniform(1.0, spec.capacity_spread); };
  for (int v = 1; v < spec.vertices; ++v) {
    int u = rng.uniform_int(0, v - 1);
    bool flip = spec.directed && rng.uniform() < 0.5;
    inst.edges.push_back({flip ? v : u, flip ? u : v, capacity()});
  }
  while (static_cast<int>(inst.edges.size()) < spec.edges) {
    int a = rng.uniform_int(0, spec.vertices - 1);
    int b = rng.uniform_int(0, spec.vertices - 2);
    if (b >= a) ++b;
    inst.edges.push_back({a, b, capacity()});
  }
  inst.edges[rng.uniform_int(0, spec.edges - 1)].capacity = spec.B;

  Graph graph(inst);
  std::vector<double> unit(inst.edges.size(), 1.0);
  std::vector<std::pair<int, int>> pairs;
  ShortestPathTree tree;
  for (int s = 0; s < spec.vertices; ++s) {
    tree.compute(graph, unit, s);
    for (int t = 0; t < spec.vertices; ++t) {
      if (t != s && tree.reachable(t)) pairs.emplace_back(s, t);
    }
  }
  for (int r = 0; r < spec.requests; ++r) {
    auto [s, t] = pairs[rng.uniform_int(0, static_cast<int>(pairs.size()) - 1)];
    double demand = rng.uniform(spec.demand_min, spec.demand_max);
    double value = rng.uniform(spec.value_min, spec.value_max);
    inst.requests.push_back({"r" + std::to_string(r), s, t, demand, value});
  }
  validate(inst);
  return inst;
}

MucaInstance gen_random_muca(const RandomMucaSpec& spec) {
  require(spec.items >= 1, "items", "must be >= 1");
  require(spec.requests >= 0, "requests", "must be >= 0");
  require(spec.B >= 1, "B", "must be >= 1");
  require(spec.bundle_max >= 1, "bundle_max", "must be >= 1");
  require(spec.value_min > 0.0 && spec.value_min <= spec.value_max, "value",
          "range must satisfy 0 < min <= max");

  SeededRng rng(spec.seed);
  MucaInstance inst;
  const int top = std::max(spec.B, spec.multiplicity_max);
  for (int u = 0; u < spec.items; ++u) {
    inst.items.push_back({"i" + std::to_string(u), rng.uniform_int(spec.B, top)});
  }
  inst.items[rng.uniform_int(0, spec.items - 1)].multiplicity = spec.B;
  std::vector<int> pool(spec.items);
  for (int r = 0; r < spec.requests; ++r) {
    int size = rng.uniform_int(1, std::min(spec.bundle_max, spec.items));
    std::iota(pool.begin(), pool.end(), 0);
    for (int k = 0; k < size; ++k) {
      std::swap(pool[k], pool[rng.uniform_int(k, spec.items - 1)]);
    }
    std::vector<int> bundle(pool.begin(), pool.begin() + size);
    std::sort(bundle.begin(), bundle.end());
    double value = rng.uniform(spec.value_min, spec.value_max);
    inst.requests.push_back({"r" + std::to_string(r), std::move(bundle), value});
  }
  validate(inst);
  return inst;
}

}  // namespace flowmech
