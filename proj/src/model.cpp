// Copyright 2026 The innotree Authors.
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

#include "innotree/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "innotree/text.hpp"

namespace innotree {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kGoal: return "goal";
    case NodeKind::kCriterion: return "criterion";
    case NodeKind::kAlternative: return "alternative";
    case NodeKind::kLeaf: return "leaf";
  }
  return "leaf";
}

std::string_view to_string(Connector connector) {
  switch (connector) {
    case Connector::kAnd: return "AND";
    case Connector::kOr: return "OR";
    case Connector::kNone: return "NONE";
  }
  return "NONE";
}

NodeKind parse_node_kind(std::string_view text) {
  if (text == "goal") return NodeKind::kGoal;
  if (text == "criterion") return NodeKind::kCriterion;
  if (text == "alternative") return NodeKind::kAlternative;
  if (text == "leaf") return NodeKind::kLeaf;
  throw Error(ErrorCode::kParse, "unknown node kind '" + std::string(text) + "'");
}

Connector parse_connector(std::string_view text) {
  if (text == "AND") return Connector::kAnd;
  if (text == "OR") return Connector::kOr;
  if (text == "NONE") return Connector::kNone;
  throw Error(ErrorCode::kParse, "unknown connector '" + std::string(text) + "'");
}

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::kNumeric: return "numeric";
    case ValueType::kCategorical: return "categorical";
    case ValueType::kBoolean: return "boolean";
  }
  return "numeric";
}

std::string_view to_string(Aggregation agg) {
  switch (agg) {
    case Aggregation::kSum: return "sum";
    case Aggregation::kMin: return "min";
    case Aggregation::kMax: return "max";
    case Aggregation::kWeightedMean: return "weighted_mean";
  }
  return "sum";
}

ValueType parse_value_type(std::string_view text) {
  if (text == "numeric") return ValueType::kNumeric;
  if (text == "categorical") return ValueType::kCategorical;
  if (text == "boolean") return ValueType::kBoolean;
  throw Error(ErrorCode::kParse, "unknown value_kind '" + std::string(text) + "'");
}

Aggregation parse_aggregation(std::string_view text) {
  if (text == "sum") return Aggregation::kSum;
  if (text == "min") return Aggregation::kMin;
  if (text == "max") return Aggregation::kMax;
  if (text == "weighted_mean") return Aggregation::kWeightedMean;
  throw Error(ErrorCode::kParse, "unknown aggregation '" + std::string(text) + "'");
}

std::string_view to_string(Comparator cmp) {
  switch (cmp) {
    case Comparator::kLe: return "<=";
    case Comparator::kGe: return ">=";
    case Comparator::kLt: return "<";
    case Comparator::kGt: return ">";
    case Comparator::kEq: return "=";
  }
  return "<=";
}

Comparator parse_comparator(std::string_view text) {
  if (text == "<=" || text == "≤") return Comparator::kLe;
  if (text == ">=" || text == "≥") return Comparator::kGe;
  if (text == "<") return Comparator::kLt;
  if (text == ">") return Comparator::kGt;
  if (text == "=" || text == "==") return Comparator::kEq;
  throw Error(ErrorCode::kParse, "unknown comparator '" + std::string(text) + "'");
}

bool compare(double value, Comparator cmp, double threshold) {
  switch (cmp) {
    case Comparator::kLe: return value <= threshold;
    case Comparator::kGe: return value >= threshold;
    case Comparator::kLt: return value < threshold;
    case Comparator::kGt: return value > threshold;
    case Comparator::kEq: return value == threshold;
  }
  return false;
}

const AttributeDef* CharacteristicSchema::find(std::string_view name) const {
  for (const auto& attr : attributes)
    if (attr.name == name) return &attr;
  return nullptr;
}

ValueType value_type_of(const CharacteristicValue& value) {
  switch (value.index()) {
    case 1: return ValueType::kCategorical;
    case 2: return ValueType::kBoolean;
    default: return ValueType::kNumeric;
  }
}

const HierarchyNode* DecisionHierarchy::find(std::string_view id) const {
  auto it = nodes.find(std::string(id));
  return it == nodes.end() ? nullptr : &it->second;
}

const HierarchyNode& DecisionHierarchy::at(std::string_view id) const {
  if (const auto* node = find(id)) return *node;
  throw Error(ErrorCode::kBadReference, "unknown node '" + std::string(id) + "'");
}

const CharacteristicTable* DecisionHierarchy::table_of(std::string_view id) const {
  const auto* node = find(id);
  if (node == nullptr || !node->characteristics) return nullptr;
  auto it = tables.find(*node->characteristics);
  return it == tables.end() ? nullptr : &it->second;
}

std::map<NodeId, NodeId> DecisionHierarchy::parents() const {
  std::map<NodeId, NodeId> out;
  for (const auto& [id, node] : nodes)
    for (const auto& child : node.children) out.emplace(child, id);
  return out;
}

namespace {

// Strongly connected components with more than one member, or with a
// self-loop, are cycles.
std::vector<std::vector<NodeId>> find_cycles(const DecisionHierarchy& h) {
  std::map<NodeId, int> index, low;
  std::set<NodeId> on_stack;
  std::vector<NodeId> stack;
  std::vector<std::vector<NodeId>> cycles;
  int counter = 0;

  std::function<void(const NodeId&)> visit = [&](const NodeId& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : h.nodes.at(v).children) {
      if (!h.nodes.contains(w)) continue;
      if (!index.contains(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.contains(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    std::vector<NodeId> component;
    NodeId w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack.erase(w);
      component.push_back(w);
    } while (w != v);
    const auto& kids = h.nodes.at(v).children;
    bool self_loop = std::find(kids.begin(), kids.end(), v) != kids.end();
    if (component.size() > 1 || self_loop) {
      std::sort(component.begin(), component.end());
      cycles.push_back(std::move(component));
    }
  };

  for (const auto& [id, node] : h.nodes)
    if (!index.contains(id)) visit(id);
  return cycles;
}

void check_series(const NodeId& node, const std::string& attr, const Series& s,
                  ValidationReport& out) {
  if (s.points.size() < 2) out.push_back({node, "series-too-short", attr});
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    if (!std::isfinite(s.points[i].first) || !std::isfinite(s.points[i].second)) {
      out.push_back({node, "series-non-finite", attr});
      return;
    }
    if (i > 0 && !(s.points[i - 1].first < s.points[i].first)) {
      out.push_back({node, "series-not-increasing", attr});
      return;
    }
  }
}

}  // namespace

ValidationReport homogeneity_check(const DecisionHierarchy& h,
                                   std::string_view group) {
  const std::string key(group);
  std::vector<const HierarchyNode*> members;
  for (const auto& [id, node] : h.nodes)
    if (node.group_id == key) members.push_back(&node);
  auto schema_it = h.schemas.find(key);
  if (members.empty() && schema_it == h.schemas.end())
    throw Error(ErrorCode::kBadReference, "unknown group '" + key + "'");

  ValidationReport out;
  if (schema_it == h.schemas.end()) {
    for (const auto* node : members)
      if (node->characteristics) {
        out.push_back({key, "schema-missing", node->id});
      }
    normalize(out);
    return out;
  }

  const auto& schema = schema_it->second;
  for (const auto* node : members) {
    const auto* table = h.table_of(node->id);
    for (const auto& attr : schema.attributes) {
      if (table == nullptr || !table->values.contains(attr.name)) {
        out.push_back({node->id, "attribute-missing", attr.name});
        continue;
      }
      const auto& value = table->values.at(attr.name);
      if (value_type_of(value) != attr.type)
        out.push_back({node->id, "kind-mismatch", attr.name});
    }
    if (table == nullptr) continue;
    for (const auto& [name, value] : table->values)
      if (schema.find(name) == nullptr)
        out.push_back({node->id, "attribute-undeclared", name});
  }
  normalize(out);
  return out;
}

ValidationReport validate_hierarchy(const DecisionHierarchy& h) {
  ValidationReport out;

  if (!h.nodes.contains(h.root_id)) out.push_back({h.root_id, "root-missing", ""});

  std::map<NodeId, std::vector<NodeId>> parents_of;
  for (const auto& [id, node] : h.nodes) {
    const bool is_leaf_kind = node.kind == NodeKind::kLeaf;
    const bool no_children = node.children.empty();
    const bool no_connector = node.connector == Connector::kNone;
    if (is_leaf_kind != no_children || no_children != no_connector) {
      out.push_back({id, "leaf-invariant",
                     "kind=" + std::string(to_string(node.kind)) +
                         " connector=" + std::string(to_string(node.connector)) +
                         " children=" + std::to_string(node.children.size())});
    }
    std::set<NodeId> seen;
    for (const auto& child : node.children) {
      if (!seen.insert(child).second) out.push_back({id, "duplicate-child", child});
      if (!h.nodes.contains(child)) {
        out.push_back({id, "dangling-child", child});
        continue;
      }
      parents_of[child].push_back(id);
    }
    if (node.characteristics && !h.tables.contains(*node.characteristics))
      out.push_back({id, "characteristics-unresolved", *node.characteristics});
    if (node.characteristics && node.group_id.empty())
      out.push_back({id, "group-missing", ""});
  }

  for (auto& [child, parents] : parents_of) {
    std::sort(parents.begin(), parents.end());
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
    if (parents.size() > 1) out.push_back({child, "multiple-parents", join(parents, ",")});
    if (child == h.root_id) out.push_back({child, "root-has-parent", join(parents, ",")});
  }

  for (const auto& cycle : find_cycles(h))
    out.push_back({cycle.front(), "cycle", "{" + join(cycle, ", ") + "}"});

  if (h.nodes.contains(h.root_id)) {
    std::set<NodeId> reached;
    std::vector<NodeId> todo{h.root_id};
    while (!todo.empty()) {
      NodeId v = todo.back();
      todo.pop_back();
      if (!reached.insert(v).second) continue;
      for (const auto& child : h.nodes.at(v).children)
        if (h.nodes.contains(child)) todo.push_back(child);
    }
    for (const auto& [id, node] : h.nodes)
      if (!reached.contains(id)) out.push_back({id, "unreachable", ""});
  }

  std::set<std::string> referenced;
  for (const auto& [id, node] : h.nodes)
    if (node.characteristics) referenced.insert(*node.characteristics);
  for (const auto& [key, table] : h.tables) {
    if (!referenced.contains(key)) out.push_back({key, "table-orphan", table.node_id});
    for (const auto& [name, value] : table.values)
      if (const auto* series = std::get_if<Series>(&value))
        check_series(table.node_id, name, *series, out);
  }

  std::map<std::string, std::pair<GroupId, const AttributeDef*>> declared;
  for (const auto& [group, schema] : h.schemas) {
    std::set<std::string> names;
    for (const auto& attr : schema.attributes) {
      if (!names.insert(attr.name).second)
        out.push_back({group, "duplicate-attribute", attr.name});
      auto [it, fresh] = declared.emplace(attr.name, std::make_pair(group, &attr));
      if (!fresh && (it->second.second->type != attr.type ||
                     it->second.second->aggregation != attr.aggregation)) {
        out.push_back({group, "schema-conflict", attr.name + " vs group " + it->second.first});
      }
    }
  }

  std::set<GroupId> groups;
  for (const auto& [id, node] : h.nodes)
    if (!node.group_id.empty()) groups.insert(node.group_id);
  for (const auto& group : groups) {
    auto found = homogeneity_check(h, group);
    if (found.empty()) continue;
    std::set<std::string> offenders;
    for (const auto& v : found) offenders.insert(v.rule == "schema-missing" ? v.detail : v.subject);
    out.push_back({group, "inhomogeneous", join({offenders.begin(), offenders.end()}, ", ")});
    out.insert(out.end(), found.begin(), found.end());
  }

  normalize(out);
  return out;
}

const AttributeDef* find_attribute(const DecisionHierarchy& h, std::string_view name) {
  for (const auto& [group, schema] : h.schemas)
    if (const auto* attr = schema.find(name)) return attr;
  return nullptr;
}

ValidationReport validate_constraints(const DecisionHierarchy& h,
                                      const ConstraintSet& cs) {
  ValidationReport out;
  for (const auto& bound : cs.bounds) {
    const auto* attr = find_attribute(h, bound.attribute);
    if (attr == nullptr) {
      out.push_back({bound.attribute, "bound-attribute-unknown", ""});
    } else if (attr->type != ValueType::kNumeric) {
      out.push_back({bound.attribute, "bound-attribute-not-numeric",
                     std::string(to_string(attr->type))});
    }
    if (!std::isfinite(bound.threshold))
      out.push_back({bound.attribute, "bound-threshold-non-finite", ""});
  }
  normalize(out);
  return out;
}

double interpolate(const Series& series, double param) {
  const auto& pts = series.points;
  if (pts.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "series needs at least two samples");
  if (!(param >= pts.front().first && param <= pts.back().first)) {
    throw Error(ErrorCode::kOutOfRange,
                "parameter " + std::to_string(param) + " outside sampled range [" +
                    std::to_string(pts.front().first) + ", " +
                    std::to_string(pts.back().first) + "]");
  }
  auto it = std::lower_bound(pts.begin(), pts.end(), param,
                             [](const auto& p, double x) { return p.first < x; });
  if (it->first == param) return it->second;
  const auto& [p1, v1] = *it;
  const auto& [p0, v0] = *std::prev(it);
  return v0 + (v1 - v0) * ((param - p0) / (p1 - p0));
}

Scalar lookup_characteristic(const DecisionHierarchy& h, std::string_view node,
                             std::string_view attr, std::optional<double> param) {
  h.at(node);
  const auto* table = h.table_of(node);
  const std::string name(attr);
  if (table == nullptr || !table->values.contains(name)) {
    throw Error(ErrorCode::kNotFound, "node '" + std::string(node) +
                                          "' has no attribute '" + name + "'");
  }
  return std::visit(
      [&](const auto& v) -> Scalar {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Series>) {
          if (!param) {
            throw Error(ErrorCode::kInvalidArgument,
                        "attribute '" + name + "' of node '" + std::string(node) +
                            "' is a series and needs a parameter");
          }
          return interpolate(v, *param);
        } else {
          return v;
        }
      },
      table->values.at(name));
}

double lookup_numeric(const DecisionHierarchy& h, std::string_view node,
                      std::string_view attr, std::optional<double> param) {
  auto value = lookup_characteristic(h, node, attr, param);
  if (const auto* d = std::get_if<double>(&value)) return *d;
  throw Error(ErrorCode::kInvalidArgument, "attribute '" + std::string(attr) +
                                               "' of node '" + std::string(node) +
                                               "' is not numeric");
}

}  // namespace innotree
