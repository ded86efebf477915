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

#pragma once

// Decision hierarchy: an AND/OR tree of goals, criteria and alternatives
// whose leaves are the most detailed project elements. Every node may carry
// a table of characteristics; nodes in one homogeneity group share a schema.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "innotree/errors.hpp"

namespace innotree {

using NodeId = std::string;
using GroupId = std::string;

enum class NodeKind { kGoal, kCriterion, kAlternative, kLeaf };
enum class Connector { kAnd, kOr, kNone };

std::string_view to_string(NodeKind kind);
std::string_view to_string(Connector connector);
NodeKind parse_node_kind(std::string_view text);
Connector parse_connector(std::string_view text);

struct HierarchyNode {
  NodeId id;
  std::string label;
  NodeKind kind = NodeKind::kLeaf;
  Connector connector = Connector::kNone;
  std::vector<NodeId> children;  // order is significant
  GroupId group_id;
  std::optional<NodeId> characteristics;  // key into DecisionHierarchy::tables

  bool operator==(const HierarchyNode&) const = default;
};

enum class ValueType { kNumeric, kCategorical, kBoolean };
enum class Aggregation { kSum, kMin, kMax, kWeightedMean };

std::string_view to_string(ValueType type);
std::string_view to_string(Aggregation agg);
ValueType parse_value_type(std::string_view text);
Aggregation parse_aggregation(std::string_view text);

struct AttributeDef {
  std::string name;
  ValueType type = ValueType::kNumeric;
  std::string unit;  // label only, numeric attributes
  Aggregation aggregation = Aggregation::kSum;

  bool operator==(const AttributeDef&) const = default;
};

struct CharacteristicSchema {
  GroupId group_id;
  std::vector<AttributeDef> attributes;

  const AttributeDef* find(std::string_view name) const;
  bool operator==(const CharacteristicSchema&) const = default;
};

// A function of one parameter sampled at strictly increasing points and
// evaluated by piecewise-linear interpolation. No extrapolation.
struct Series {
  std::vector<std::pair<double, double>> points;

  bool operator==(const Series&) const = default;
};

using Scalar = std::variant<double, std::string, bool>;
using CharacteristicValue = std::variant<double, std::string, bool, Series>;

ValueType value_type_of(const CharacteristicValue& value);

struct CharacteristicTable {
  NodeId node_id;
  std::map<std::string, CharacteristicValue> values;

  bool operator==(const CharacteristicTable&) const = default;
};

struct DecisionHierarchy {
  NodeId root_id;
  std::map<NodeId, HierarchyNode> nodes;
  std::map<GroupId, CharacteristicSchema> schemas;
  std::map<NodeId, CharacteristicTable> tables;

  const HierarchyNode* find(std::string_view id) const;
  const HierarchyNode& at(std::string_view id) const;  // kBadReference if absent

  // Table attached to a node through its characteristics reference, or null.
  const CharacteristicTable* table_of(std::string_view id) const;

  // Parent map for well-formed trees. Nodes with several parents keep the
  // smallest parent id.
  std::map<NodeId, NodeId> parents() const;

  bool operator==(const DecisionHierarchy&) const = default;
};

enum class Comparator { kLe, kGe, kLt, kGt, kEq };

std::string_view to_string(Comparator cmp);
Comparator parse_comparator(std::string_view text);
bool compare(double value, Comparator cmp, double threshold);

struct Bound {
  std::string attribute;
  Comparator comparator = Comparator::kLe;
  double threshold = 0.0;

  bool operator==(const Bound&) const = default;
};

// Limits on aggregated configuration values. The payback limit applies to
// the aggregated "payback" attribute, the expenditure ceiling to "cost".
struct ConstraintSet {
  std::optional<double> payback_limit;
  std::optional<double> expenditure_ceiling;
  std::vector<Bound> bounds;

  bool operator==(const ConstraintSet&) const = default;
};

inline constexpr std::string_view kPaybackAttribute = "payback";
inline constexpr std::string_view kExpenditureAttribute = "cost";
inline constexpr std::string_view kWeightAttribute = "weight";

// Structural checks: leaf/connector consistency, dangling children, cycles,
// multiple parents, reachability, schema presence, homogeneity, series shape.
// Ordered by subject then rule name.
ValidationReport validate_hierarchy(const DecisionHierarchy& h);

// Throws kBadReference when no node or schema uses `group`.
ValidationReport homogeneity_check(const DecisionHierarchy& h,
                                   std::string_view group);

// Bound attributes must be numeric in at least one schema.
ValidationReport validate_constraints(const DecisionHierarchy& h,
                                      const ConstraintSet& cs);

// Type of `name` across schemas, if any schema declares it.
const AttributeDef* find_attribute(const DecisionHierarchy& h,
                                   std::string_view name);

double interpolate(const Series& series, double param);

// Scalars are returned as stored. Series need `param` inside the sampled
// range. Throws kNotFound for an absent attribute, kOutOfRange outside the
// range, kInvalidArgument for a series without a parameter.
Scalar lookup_characteristic(const DecisionHierarchy& h, std::string_view node,
                             std::string_view attr,
                             std::optional<double> param = std::nullopt);

// Numeric view of lookup_characteristic; kInvalidArgument for other kinds.
double lookup_numeric(const DecisionHierarchy& h, std::string_view node,
                      std::string_view attr,
                      std::optional<double> param = std::nullopt);

}  // namespace innotree
