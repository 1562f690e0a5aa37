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

#include "flowmech/instance.h"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>

#include "flowmech/errors.h"
#include "json.hpp"

namespace flowmech {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string at(std::string_view base, std::size_t i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

std::string dot(std::string_view base, std::string_view key) {
  if (base == "$") return std::string(key);
  return std::string(base) + "." + std::string(key);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
}

void expect_object(const json& node, std::string_view where,
                   std::initializer_list<std::string_view> required) {
  if (!node.is_object()) {
    throw ValidationError(std::string(where), "must be an object");
  }
  for (const auto& [key, unused] : node.items()) {
    if (std::find(required.begin(), required.end(), key) == required.end()) {
      throw ValidationError(dot(where, key), "unknown key");
    }
  }
  for (std::string_view key : required) {
    if (!node.contains(key)) {
      throw ValidationError(dot(where, key), "missing key");
    }
  }
}

const json& expect_array(const json& node, const std::string& where) {
  if (!node.is_array()) throw ValidationError(where, "must be an array");
  return node;
}

double read_number(const json& node, const std::string& where) {
  if (!node.is_number()) throw ValidationError(where, "must be a number");
  double v = node.get<double>();
  if (!std::isfinite(v)) throw ValidationError(where, "must be finite");
  return v;
}

long long read_integer(const json& node, const std::string& where) {
  if (!node.is_number_integer()) {
    throw ValidationError(where, "must be an integer");
  }
  return node.get<long long>();
}

std::string read_id(const json& node, const std::string& where) {
  if (node.is_string()) return node.get<std::string>();
  if (node.is_number_integer()) return std::to_string(node.get<long long>());
  throw ValidationError(where, "must be a string or integer id");
}

int read_vertex(const json& node, const std::string& where) {
  long long v = read_integer(node, where);
  if (v < 0 || v > std::numeric_limits<int>::max()) {
    throw ValidationError(where, "vertex id out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

int UfpInstance::request_index(std::string_view id) const {
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (requests[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

void validate(const UfpInstance& instance) {
  if (instance.vertex_count < 1) {
    throw ValidationError("vertices", "must be positive");
  }
  if (instance.edges.empty()) {
    throw ValidationError("edges", "at least one edge is required");
  }
  auto check_vertex = [&](int v, const std::string& where) {
    if (v < 0 || v >= instance.vertex_count) {
      throw ValidationError(where, "vertex id must be < vertices");
    }
  };
  for (std::size_t i = 0; i < instance.edges.size(); ++i) {
    const Edge& e = instance.edges[i];
    std::string base = at("edges", i);
    check_vertex(e.tail, dot(base, "tail"));
    check_vertex(e.head, dot(base, "head"));
    if (e.tail == e.head) throw ValidationError(base, "self-loop edge");
    if (!(e.capacity > 0.0) || !std::isfinite(e.capacity)) {
      throw ValidationError(dot(base, "capacity"), "capacity must be positive");
    }
  }
  std::set<std::string_view> ids;
  for (std::size_t i = 0; i < instance.requests.size(); ++i) {
    const Request& r = instance.requests[i];
    std::string base = at("requests", i);
    check_vertex(r.source, dot(base, "source"));
    check_vertex(r.target, dot(base, "target"));
    if (r.source == r.target) {
      throw ValidationError(base, "source and target must differ");
    }
    if (!(r.demand > 0.0) || !std::isfinite(r.demand)) {
      throw ValidationError(dot(base, "demand"), "demand must be positive");
    }
    if (!(r.value > 0.0) || !std::isfinite(r.value)) {
      throw ValidationError(dot(base, "value"), "value must be positive");
    }
    if (!ids.insert(r.id).second) {
      throw ValidationError(dot(base, "id"), "duplicate request id");
    }
  }
}

UfpInstance parse_ufp_instance(std::string_view text) {
  json doc = parse_document(text);
  expect_object(doc, "$", {"directed", "vertices", "edges", "requests"});
  UfpInstance inst;
  if (!doc["directed"].is_boolean()) {
    throw ValidationError("directed", "must be a boolean");
  }
  inst.directed = doc["directed"].get<bool>();
  long long n = read_integer(doc["vertices"], "vertices");
  if (n < 1 || n > std::numeric_limits<int>::max()) {
    throw ValidationError("vertices", "must be positive");
  }
  inst.vertex_count = static_cast<int>(n);

  const json& edges = expect_array(doc["edges"], "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string base = at("edges", i);
    expect_object(edges[i], base, {"tail", "head", "capacity"});
    inst.edges.push_back({read_vertex(edges[i]["tail"], dot(base, "tail")),
                          read_vertex(edges[i]["head"], dot(base, "head")),
                          read_number(edges[i]["capacity"],
                                      dot(base, "capacity"))});
  }
  const json& requests = expect_array(doc["requests"], "requests");
  for (std::size_t i = 0; i < requests.size(); ++i) {
    std::string base = at("requests", i);
    const json& r = requests[i];
    expect_object(r, base, {"id", "source", "target", "demand", "value"});
    inst.requests.push_back({read_id(r["id"], dot(base, "id")),
                             read_vertex(r["source"], dot(base, "source")),
                             read_vertex(r["target"], dot(base, "target")),
                             read_number(r["demand"], dot(base, "demand")),
                             read_number(r["value"], dot(base, "value"))});
  }
  validate(inst);
  return inst;
}

std::string serialize_ufp_instance(const UfpInstance& instance) {
  ordered_json doc;
  doc["directed"] = instance.directed;
  doc["vertices"] = instance.vertex_count;
  doc["edges"] = ordered_json::array();
  for (const Edge& e : instance.edges) {
    doc["edges"].push_back(
        {{"tail", e.tail}, {"head", e.head}, {"capacity", e.capacity}});
  }
  doc["requests"] = ordered_json::array();
  for (const Request& r : instance.requests) {
    doc["requests"].push_back({{"id", r.id},
                               {"source", r.source},
                               {"target", r.target},
                               {"demand", r.demand},
                               {"value", r.value}});
  }
  return doc.dump(2) + "\n";
}

NormalizedInstance normalize(const UfpInstance& instance) {
  validate(instance);
  double max_demand = 0.0;
  for (const Request& r : instance.requests) {
    max_demand = std::max(max_demand, r.demand);
  }
  NormalizedInstance out;
  out.inner = instance;
  out.scale = max_demand > 0.0 ? max_demand : 1.0;
  if (out.scale != 1.0) {
    for (Edge& e : out.inner.edges) e.capacity /= out.scale;
    for (Request& r : out.inner.requests) r.demand /= out.scale;
  }
  out.B = std::numeric_limits<double>::infinity();
  for (const Edge& e : out.inner.edges) out.B = std::min(out.B, e.capacity);
  return out;
}

NormalizedInstance as_given(const UfpInstance& instance) {
  validate(instance);
  for (std::size_t i = 0; i < instance.requests.size(); ++i) {
    if (instance.requests[i].demand > 1.0) {
      throw ValidationError(dot(at("requests", i), "demand"),
                            "demand must be at most 1 without normalization");
    }
  }
  NormalizedInstance out;
  out.inner = instance;
  out.scale = 1.0;
  out.B = std::numeric_limits<double>::infinity();
  for (const Edge& e : out.inner.edges) out.B = std::min(out.B, e.capacity);
  return out;
}

void validate(const NormalizedInstance& instance) {
  validate(instance.inner);
  if (!(instance.B > 0.0) || !std::isfinite(instance.B)) {
    throw ValidationError("B", "must be positive");
  }
  double min_capacity = std::numeric_limits<double>::infinity();
  for (const Edge& e : instance.inner.edges) {
    min_capacity = std::min(min_capacity, e.capacity);
  }
  for (std::size_t i = 0; i < instance.inner.requests.size(); ++i) {
    double d = instance.inner.requests[i].demand;
    std::string where = dot(at("requests", i), "demand");
    if (d > 1.0) throw ValidationError(where, "normalized demand exceeds 1");
    if (instance.B * d > min_capacity * (1.0 + 1e-12)) {
      throw ValidationError(where, "B * demand exceeds the minimum capacity");
    }
  }
}

int MucaInstance::B() const {
  if (items.empty()) return 0;
  int b = items.front().multiplicity;
  for (const MucaItem& item : items) b = std::min(b, item.multiplicity);
  return b;
}

int MucaInstance::request_index(std::string_view id) const {
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (requests[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

void validate(const MucaInstance& instance) {
  std::set<std::string_view> item_ids;
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    const MucaItem& item = instance.items[i];
    std::string base = at("items", i);
    if (item.multiplicity < 1) {
      throw ValidationError(dot(base, "multiplicity"),
                            "multiplicity must be at least 1");
    }
    if (!item_ids.insert(item.id).second) {
      throw ValidationError(dot(base, "id"), "duplicate item id");
    }
  }
  std::set<std::string_view> request_ids;
  const int item_count = static_cast<int>(instance.items.size());
  for (std::size_t i = 0; i < instance.requests.size(); ++i) {
    const MucaRequest& r = instance.requests[i];
    std::string base = at("requests", i);
    if (r.bundle.empty()) {
      throw ValidationError(dot(base, "bundle"), "bundle must be nonempty");
    }
    std::set<int> seen;
    for (int u : r.bundle) {
      if (u < 0 || u >= item_count) {
        throw ValidationError(dot(base, "bundle"), "unknown item");
      }
      if (!seen.insert(u).second) {
        throw ValidationError(dot(base, "bundle"), "repeated item in bundle");
      }
    }
    if (!(r.value > 0.0) || !std::isfinite(r.value)) {
      throw ValidationError(dot(base, "value"), "value must be positive");
    }
    if (!request_ids.insert(r.id).second) {
      throw ValidationError(dot(base, "id"), "duplicate request id");
    }
  }
}

MucaInstance parse_muca_instance(std::string_view text) {
  json doc = parse_document(text);
  expect_object(doc, "$", {"items", "requests"});
  MucaInstance inst;
  std::unordered_map<std::string, int> item_index;

  const json& items = expect_array(doc["items"], "items");
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::string base = at("items", i);
    expect_object(items[i], base, {"id", "multiplicity"});
    std::string id = read_id(items[i]["id"], dot(base, "id"));
    long long mult =
        read_integer(items[i]["multiplicity"], dot(base, "multiplicity"));
    if (mult < 1 || mult > std::numeric_limits<int>::max()) {
      throw ValidationError(dot(base, "multiplicity"),
                            "multiplicity must be at least 1");
    }
    if (!item_index.emplace(id, static_cast<int>(i)).second) {
      throw ValidationError(dot(base, "id"), "duplicate item id");
    }
    inst.items.push_back({std::move(id), static_cast<int>(mult)});
  }

  const json& requests = expect_array(doc["requests"], "requests");
  for (std::size_t i = 0; i < requests.size(); ++i) {
    std::string base = at("requests", i);
    const json& r = requests[i];
    expect_object(r, base, {"id", "bundle", "value"});
    MucaRequest req;
    req.id = read_id(r["id"], dot(base, "id"));
    const json& bundle = expect_array(r["bundle"], dot(base, "bundle"));
    for (std::size_t k = 0; k < bundle.size(); ++k) {
      std::string where = at(dot(base, "bundle"), k);
      auto it = item_index.find(read_id(bundle[k], where));
      if (it == item_index.end()) throw ValidationError(where, "unknown item");
      req.bundle.push_back(it->second);
    }
    req.value = read_number(r["value"], dot(base, "value"));
    inst.requests.push_back(std::move(req));
  }
  validate(inst);
  return inst;
}

std::string serialize_muca_instance(const MucaInstance& instance) {
  ordered_json doc;
  doc["items"] = ordered_json::array();
  for (const MucaItem& item : instance.items) {
    doc["items"].push_back(
        {{"id", item.id}, {"multiplicity", item.multiplicity}});
  }
  doc["requests"] = ordered_json::array();
  for (const MucaRequest& r : instance.requests) {
    ordered_json bundle = ordered_json::array();
    for (int u : r.bundle) bundle.push_back(instance.items[u].id);
    doc["requests"].push_back(
        {{"id", r.id}, {"bundle", std::move(bundle)}, {"value", r.value}});
  }
  return doc.dump(2) + "\n";
}

bool looks_like_muca(std::string_view text) {
  json doc = parse_document(text);
  return doc.is_object() && doc.contains("items");
}

}  // namespace flowmech
