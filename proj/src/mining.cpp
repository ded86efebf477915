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

#include "innotree/mining.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "innotree/text.hpp"

namespace innotree {

bool TreeNode::operator==(const TreeNode& other) const {
  return label == other.label && support == other.support && attribute == other.attribute &&
         attribute_name == other.attribute_name && branches == other.branches;
}

void LabeledDataset::check() const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.values.size() != attributes.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(r) + " has " + std::to_string(row.values.size()) +
                      " values for " + std::to_string(attributes.size()) + " attributes");
    }
    for (std::size_t a = 0; a < attributes.size(); ++a) {
      const auto& dom = attributes[a].domain;
      if (std::find(dom.begin(), dom.end(), row.values[a]) == dom.end()) {
        throw Error(ErrorCode::kInvalidArgument, "row " + std::to_string(r) + ": value '" +
                                                     row.values[a] + "' outside the domain of '" +
                                                     attributes[a].name + "'");
      }
    }
  }
}

LabeledDataset parse_dataset_csv(std::string_view text) {
  auto records = csv::parse(text);
  if (records.empty() || records.front().size() < 2)
    throw Error(ErrorCode::kParse, "dataset needs a header with at least one attribute and a label");
  const auto& header = records.front();
  const std::size_t width = header.size();
  LabeledDataset d;
  std::vector<std::set<std::string>> domains(width - 1);
  for (std::size_t i = 0; i + 1 < width; ++i) d.attributes.push_back({header[i], {}});
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto& rec = records[r];
    if (rec.size() == 1 && rec.front().empty()) continue;
    if (rec.size() != width) {
      throw Error(ErrorCode::kParse, "dataset line " + std::to_string(r + 1) + ": expected " +
                                         std::to_string(width) + " fields, got " +
                                         std::to_string(rec.size()));
    }
    LabeledRow row;
    row.label = rec.back();
    rec.pop_back();
    for (std::size_t i = 0; i < rec.size(); ++i) domains[i].insert(rec[i]);
    row.values = std::move(rec);
    d.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i + 1 < width; ++i)
    d.attributes[i].domain.assign(domains[i].begin(), domains[i].end());
  return d;
}

namespace {

std::map<std::string, std::size_t> label_counts(const LabeledDataset& d,
                                                const std::vector<std::size_t>& rows) {
  std::map<std::string, std::size_t> counts;
  for (auto r : rows) ++counts[d.rows[r].label];
  return counts;
}

// std::map iterates labels in order, so the first strict maximum is the
// lexicographically smallest among tied labels.
std::string majority(const std::map<std::string, std::size_t>& counts) {
  std::string best;
  std::size_t best_count = 0;
  for (const auto& [label, n] : counts) {
    if (n > best_count) {
      best = label;
      best_count = n;
    }
  }
  return best;
}

double entropy_of(const std::map<std::string, std::size_t>& counts, std::size_t total) {
  if (total == 0) return 0.0;
  double h = 0.0;
  for (const auto& [label, n] : counts) {
    if (n == 0) continue;
    const double p = static_cast<double>(n) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::vector<std::vector<std::size_t>> partition(const LabeledDataset& d,
                                                const std::vector<std::size_t>& rows,
                                                std::size_t attribute) {
  const auto& dom = d.attributes[attribute].domain;
  std::vector<std::vector<std::size_t>> parts(dom.size());
  for (auto r : rows) {
    auto it = std::find(dom.begin(), dom.end(), d.rows[r].values[attribute]);
    parts[static_cast<std::size_t>(it - dom.begin())].push_back(r);
  }
  return parts;
}

struct Builder {
  const LabeledDataset& d;
  const InductionParams& params;

  TreeNode grow(const std::vector<std::size_t>& rows, std::vector<bool>& used, std::size_t depth) {
    const auto counts = label_counts(d, rows);
    TreeNode node;
    node.label = majority(counts);
    node.support = rows.size();

    const bool pure = counts.size() <= 1;
    const bool exhausted = std::all_of(used.begin(), used.end(), [](bool u) { return u; });
    const bool too_deep = params.max_depth && depth >= *params.max_depth;
    const bool too_small = rows.size() < params.min_rows;
    if (pure || exhausted || too_deep || too_small) return node;

    std::optional<std::size_t> best;
    double best_gain = 0.0;
    for (std::size_t a = 0; a < d.attributes.size(); ++a) {
      if (used[a]) continue;
      const double gain = information_gain(d, rows, a);
      if (!best || gain > best_gain) {
        best = a;
        best_gain = gain;
      }
    }

    node.attribute = *best;
    node.attribute_name = d.attributes[*best].name;
    used[*best] = true;
    const auto parts = partition(d, rows, *best);
    const auto& dom = d.attributes[*best].domain;
    for (std::size_t v = 0; v < dom.size(); ++v) {
      TreeBranch branch{dom[v], {}};
      if (parts[v].empty()) {
        branch.child.label = node.label;
        branch.child.support = 0;
      } else {
        branch.child = grow(parts[v], used, depth + 1);
      }
      node.branches.push_back(std::move(branch));
    }
    used[*best] = false;
    return node;
  }
};

std::size_t count_leaves(const TreeNode& n) {
  if (n.is_leaf()) return 1;
  std::size_t total = 0;
  for (const auto& b : n.branches) total += count_leaves(b.child);
  return total;
}

std::size_t depth_of(const TreeNode& n) {
  std::size_t deepest = 0;
  for (const auto& b : n.branches) deepest = std::max(deepest, 1 + depth_of(b.child));
  return deepest;
}

void collect_rules(const TreeNode& n, std::vector<Fact>& path, std::vector<ProductionRule>& out) {
  if (n.is_leaf()) {
    ProductionRule rule;
    rule.id = "leaf-" + std::to_string(out.size());
    rule.antecedents = path.empty() ? std::vector<Fact>{Fact(std::string(kTrueFact))} : path;
    rule.consequent = Fact(std::string(kLabelPrefix) + n.label);
    out.push_back(std::move(rule));
    return;
  }
  for (const auto& b : n.branches) {
    path.emplace_back(n.attribute_name + "=" + b.value);
    collect_rules(b.child, path, out);
    path.pop_back();
  }
}

}  // namespace

double label_entropy(const LabeledDataset& d, const std::vector<std::size_t>& rows) {
  return entropy_of(label_counts(d, rows), rows.size());
}

double information_gain(const LabeledDataset& d, const std::vector<std::size_t>& rows,
                        std::size_t attribute) {
  if (attribute >= d.attributes.size())
    throw Error(ErrorCode::kInvalidArgument, "attribute index out of range");
  if (rows.empty()) return 0.0;
  const double total = static_cast<double>(rows.size());
  double conditional = 0.0;
  for (const auto& part : partition(d, rows, attribute)) {
    if (part.empty()) continue;
    conditional += static_cast<double>(part.size()) / total * label_entropy(d, part);
  }
  return std::max(0.0, label_entropy(d, rows) - conditional);
}

DecisionTreeModel induce(const LabeledDataset& d, const InductionParams& params) {
  if (d.rows.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot induce a tree from an empty dataset");
  d.check();
  std::vector<std::size_t> rows(d.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  std::vector<bool> used(d.attributes.size(), false);
  Builder builder{d, params};
  return {d.attributes, builder.grow(rows, used, 0)};
}

std::size_t DecisionTreeModel::leaf_count() const { return count_leaves(root); }
std::size_t DecisionTreeModel::depth() const { return depth_of(root); }

std::string classify(const DecisionTreeModel& t, const std::map<std::string, std::string>& row) {
  const TreeNode* node = &t.root;
  while (!node->is_leaf()) {
    auto value = row.find(node->attribute_name);
    if (value == row.end())
      throw Error(ErrorCode::kInvalidArgument, "row has no value for '" + node->attribute_name + "'");
    auto it = std::find_if(node->branches.begin(), node->branches.end(),
                           [&](const TreeBranch& b) { return b.value == value->second; });
    if (it == node->branches.end()) return node->label;
    node = &it->child;
  }
  return node->label;
}

std::string classify(const DecisionTreeModel& t, const LabeledRow& row) {
  if (row.values.size() != t.attributes.size())
    throw Error(ErrorCode::kInvalidArgument, "row width does not match the model's attributes");
  std::map<std::string, std::string> named;
  for (std::size_t i = 0; i < row.values.size(); ++i) named[t.attributes[i].name] = row.values[i];
  return classify(t, named);
}

FactSet row_facts(const DecisionTreeModel& t, const std::map<std::string, std::string>& row) {
  FactSet facts{Fact(std::string(kTrueFact))};
  for (const auto& attr : t.attributes) {
    auto it = row.find(attr.name);
    if (it != row.end()) facts.emplace(attr.name + "=" + it->second);
  }
  return facts;
}

RuleBase tree_to_rules(const DecisionTreeModel& t) {
  std::vector<ProductionRule> rules;
  std::vector<Fact> path;
  collect_rules(t.root, path, rules);
  return RuleBase(std::move(rules));
}

}  // namespace innotree
