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

// Instance generators: adversarial families on which greedy selection by a
// congestion-aware priority loses a constant factor, and seeded random
// instances.
//
// Request and edge orders are part of each family's definition. Together
// with the solvers' tie-breaking (lowest request index; earliest discovered
// path) they make the greedy follow the adversarial schedule.

#ifndef FLOWMECH_BENCHGEN_H_
#define FLOWMECH_BENCHGEN_H_

#include <cstdint>
#include <random>
#include <vector>

#include "flowmech/instance.h"
#include "flowmech/oracle.h"

namespace flowmech {

// Layered directed family. Vertices s_1..s_ell are 0..ell-1, v_1..v_ell are
// ell..2ell-1 and t is 2ell. Edges, all of capacity B: s_i -> v_j for every
// j >= i (per i, j from ell down to i), then v_j -> t for j = 1..ell.
// Requests: B unit copies of (s_i, t) per i, s_1's first. With `subdivide`,
// each s_i -> v_j edge becomes a directed path of i*ell + 1 - j edges whose
// inner vertices are appended after t.
UfpInstance gen_directed_lb(int B, int ell, bool subdivide = false);

// The optimum of gen_directed_lb: every request on s_i -> v_i -> t.
std::vector<RoutedRequest> directed_lb_witness(int B, int ell,
                                               bool subdivide = false);

// B*ell*(1 - (B/(B+1))^B) + B^2: the most a greedy can collect on the
// layered family.
double directed_lb_value_bound(int B, int ell);

// 1 / (1 - (B/(B+1))^B).
double directed_lb_ratio(int B);

// Seven-vertex undirected family (v1..v7 are 0..6), every edge capacity B:
// v1v7, v3v7, v4v7, v6v7, v1v2, v2v3, v4v5, v5v6. Requests: B copies each of
// A = (v1, v3) and C = (v4, v6), interleaved A, C, A, C, ...; then B copies
// of D = (v1, v6) and B copies of E = (v3, v4). B must be even.
UfpInstance gen_undirected_lb(int B);

// Value 4B: A on v1v2v3, C on v4v5v6, D on v1v7v6, E on v3v7v4.
std::vector<RoutedRequest> undirected_lb_witness(int B);

// Items in p(p+1) cells U_{i,j} (i = 1..p, j = 1..p+1, row-major) of
// m / (p(p+1)) items each, multiplicity B. Unit-value requests: for each of
// B/2 rounds the row bundles U_1..U_p; then for l = 1..(p+1)/2 the bundles
// U_{1,2l-1} + U_{1,2l} + U_{i,2l-1} (i >= 2) and the same with U_{i,2l},
// B/2 copies each. Requires odd p >= 3, even B >= 2, p(p+1) | m.
MucaInstance gen_muca_lb(int p, int B, int m);

struct RandomUfpSpec {
  int vertices = 6;
  int edges = 9;
  int requests = 5;
  bool directed = false;
  double B = 2.0;                // minimum capacity; one edge has exactly B
  double capacity_spread = 1.0;  // capacities uniform in [B, B * spread]
  double value_min = 1.0;
  double value_max = 10.0;
  double demand_min = 0.1;       // demands uniform in [min, max] within (0, 1]
  double demand_max = 1.0;
  std::uint64_t seed = 1;
};

// Connected random graph (a random spanning tree plus extra random edges)
// and requests between distinct pairs with a source-to-target path.
// Deterministic for a fixed spec on every platform.
UfpInstance gen_random(const RandomUfpSpec& spec);

struct RandomMucaSpec {
  int items = 5;
  int requests = 5;
  int B = 2;               // minimum multiplicity; one item has exactly B
  int multiplicity_max = 2;
  int bundle_max = 3;      // bundle sizes uniform in [1, bundle_max]
  double value_min = 1.0;
  double value_max = 10.0;
  std::uint64_t seed = 1;
};

MucaInstance gen_random_muca(const RandomMucaSpec& spec);

// Seeded stream with explicit mappings on top of std::mt19937_64, whose
// output sequence is fixed by the standard; the standard distributions are
// not, so they are avoided.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  int uniform_int(int lo, int hi);       // [lo, hi]

 private:
  std::mt19937_64 engine_;
};

}  // namespace flowmech

#endif  // FLOWMECH_BENCHGEN_H_
