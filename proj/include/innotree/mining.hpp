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

// ID3 decision-tree induction over categorical attributes, classification,
// and compilation of induced trees into production rules.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "innotree/rules.hpp"

namespace innotree {

struct DatasetAttribute {
  std::string name;
  std::vector<std::string> domain;  // branch order of test nodes

  bool operator==(const DatasetAttribute&) const = default;
};

struct LabeledRow {
  std::vector<std::string> values;  // aligned with LabeledDataset::attributes
  std::string label;

  bool operator==(const LabeledRow&) const = default;
};

struct LabeledDataset {
  std::vector<DatasetAttribute> attributes;
  std::vector<LabeledRow> rows;

  // kInvalidArgument when a row has the wrong width or a value outside its
  // attribute's domain.
  void check() const;

  bool operator==(const LabeledDataset&) const = default;
};

// Header row names the attributes; the last column is the label. Domains
// are the observed values, sorted.
LabeledDataset parse_dataset_csv(std::string_view text);

struct TreeBranch;

struct TreeNode {
  std::string label;        // majority label of the rows reaching this node
  std::size_t support = 0;  // rows reaching this node
  std::optional<std::size_t> attribute;  // tested attribute; empty for leaves
  std::string attribute_name;
  std::vector<TreeBranch> branches;  // one per domain value, domain order

  bool is_leaf() const noexcept { return !attribute.has_value(); }
  bool operator==(const TreeNode&) const;
};

struct TreeBranch {
  std::string value;
  TreeNode child;

  bool operator==(const TreeBranch&) const = default;
};

struct DecisionTreeModel {
  std::vector<DatasetAttribute> attributes;
  TreeNode root;

  std::size_t leaf_count() const;
  std::size_t depth() const;
  bool operator==(const DecisionTreeModel&) const = default;
};

struct InductionParams {
  std::optional<std::size_t> max_depth;  // number of tests on a path
  std::size_t min_rows = 1;              // fewer rows than this -> leaf
};

// Base-2 Shannon entropy of the label distribution over `rows`.
double label_entropy(const LabeledDataset& d, const std::vector<std::size_t>& rows);

// Entropy reduction from splitting `rows` on attribute `attribute`.
double information_gain(const LabeledDataset& d, const std::vector<std::size_t>& rows,
                        std::size_t attribute);

// Splits on the attribute with the largest information gain (earliest
// attribute on ties), recursing until the rows are pure, no attribute is
// left, max_depth is reached, or fewer than min_rows rows remain. A domain
// value with no rows becomes a leaf carrying the parent majority. Majority
// ties go to the lexicographically smallest label.
DecisionTreeModel induce(const LabeledDataset& d, const InductionParams& params = {});

// `row` maps attribute name to value. A value not seen at a test node
// yields that node's majority label; a missing attribute is kInvalidArgument.
std::string classify(const DecisionTreeModel& t, const std::map<std::string, std::string>& row);
std::string classify(const DecisionTreeModel& t, const LabeledRow& row);

// "attr=value" facts for a row, plus the universal "true" seed.
FactSet row_facts(const DecisionTreeModel& t, const std::map<std::string, std::string>& row);

inline constexpr std::string_view kLabelPrefix = "label=";

// One rule per leaf, left to right: antecedents "attr=value" along the path
// ("true" for the root leaf), consequent "label=<label>", id "leaf-<n>".
RuleBase tree_to_rules(const DecisionTreeModel& t);

}  // namespace innotree
