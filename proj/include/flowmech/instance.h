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

// Problem instances for unsplittable flow (UFP) and single-minded multi-unit
// combinatorial auctions (MUCA), their text format, and demand/capacity
// normalization.
//
// UFP document:
//   {"directed": bool, "vertices": int,
//    "edges":    [{"tail": int, "head": int, "capacity": number}, ...],
//    "requests": [{"id": str, "source": int, "target": int,
//                  "demand": number, "value": number}, ...]}
// MUCA document:
//   {"items":    [{"id": str, "multiplicity": int}, ...],
//    "requests": [{"id": str, "bundle": [str, ...], "value": number}, ...]}
// Field order is irrelevant and unknown keys are rejected. Ids may be written
// as strings or integers; they are kept as strings.

#ifndef FLOWMECH_INSTANCE_H_
#define FLOWMECH_INSTANCE_H_

#include <string>
#include <string_view>
#include <vector>

namespace flowmech {

struct Edge {
  int tail = 0;
  int head = 0;
  double capacity = 0.0;

  bool operator==(const Edge&) const = default;
};

struct Request {
  std::string id;
  int source = 0;
  int target = 0;
  double demand = 0.0;
  double value = 0.0;

  bool operator==(const Request&) const = default;
};

// An edge-capacitated graph plus connection requests. Undirected edges are
// stored once and carry one shared capacity. Parallel edges are allowed and
// stay distinct, as are requests with identical endpoints, demand and value.
struct UfpInstance {
  bool directed = true;
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<Request> requests;

  // Index of the request with this id, or -1.
  int request_index(std::string_view id) const;

  bool operator==(const UfpInstance&) const = default;
};

// Throws ValidationError naming the offending field.
void validate(const UfpInstance& instance);

// Throws ParseError on malformed text and ValidationError on invalid content.
UfpInstance parse_ufp_instance(std::string_view text);
std::string serialize_ufp_instance(const UfpInstance& instance);

// An instance in the units the solvers work in: every demand lies in (0, 1]
// and `B` is a lower bound on capacity / demand for every edge and request
// (B * d_r <= c_e). `normalize` produces max demand exactly 1 and
// B = min_e c_e; `scale` is the factor demands and capacities were divided by.
//
// B is treated as public knowledge: mechanisms perturb reported demands and
// values of `inner` while holding B fixed.
struct NormalizedInstance {
  UfpInstance inner;
  double B = 0.0;
  double scale = 1.0;

  // The feasibility guarantee of the solvers needs B >= 1.
  bool feasible_bound() const { return B >= 1.0; }
};

NormalizedInstance normalize(const UfpInstance& instance);

// Uses the instance in its own units: demands must already lie in (0, 1] and
// B = min_e c_e. Throws ValidationError otherwise.
NormalizedInstance as_given(const UfpInstance& instance);

// Checks demands in (0, 1], B > 0 and B * max_r d_r <= min_e c_e.
void validate(const NormalizedInstance& instance);

struct MucaItem {
  std::string id;
  int multiplicity = 0;

  bool operator==(const MucaItem&) const = default;
};

struct MucaRequest {
  std::string id;
  std::vector<int> bundle;  // item indices, distinct, in document order
  double value = 0.0;

  bool operator==(const MucaRequest&) const = default;
};

struct MucaInstance {
  std::vector<MucaItem> items;
  std::vector<MucaRequest> requests;

  // min_u c_u; 0 for an instance without items.
  int B() const;
  int request_index(std::string_view id) const;

  bool operator==(const MucaInstance&) const = default;
};

void validate(const MucaInstance& instance);
MucaInstance parse_muca_instance(std::string_view text);
std::string serialize_muca_instance(const MucaInstance& instance);

// True when the document's top-level object has an "items" key.
bool looks_like_muca(std::string_view text);

}  // namespace flowmech

#endif  // FLOWMECH_INSTANCE_H_
