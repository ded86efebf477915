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

// Test-only reference implementations. Each one recomputes a result by the
// most direct route available (subset enumeration, closed-set intersection,
// explicit group-by) and shares no code path with the library beyond the
// plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "innotree/mining.hpp"
#include "innotree/model.hpp"
#include "innotree/rules.hpp"
#include "innotree/star.hpp"
#include "innotree/variants.hpp"

namespace innotree::oracle {

// ---------------------------------------------------------------------------
// Hierarchies as index arrays, with selections as bitmasks over node order.

struct FlatTree {
  std::vector<NodeId> ids;
  std::vector<int> parent;              // -1 for the root
  std::vector<std::uint32_t> children;  // bitmask
  std::vector<Connector> connector;
};

inline FlatTree flatten(const DecisionHierarchy& h) {
  FlatTree t;
  std::map<NodeId, int> index;
  for (const auto& [id, node] : h.nodes) {
    index[id] = static_cast<int>(t.ids.size());
    t.ids.push_back(id);
  }
  t.parent.assign(t.ids.size(), -1);
  t.children.assign(t.ids.size(), 0);
  t.connector.assign(t.ids.size(), Connector::kNone);
  for (const auto& [id, node] : h.nodes) {
    const int i = index[id];
    t.connector[i] = node.connector;
    for (const auto& c : node.children) {
      t.children[i] |= 1U << index[c];
      t.parent[index[c]] = i;
    }
  }
  return t;
}

inline bool admissible_mask(const FlatTree& t, std::uint32_t mask, int root) {
  if (!((mask >> root) & 1U)) return false;
  for (std::size_t i = 0; i < t.ids.size(); ++i) {
    if (!((mask >> i) & 1U)) continue;
    if (t.parent[i] >= 0 && !((mask >> t.parent[i]) & 1U)) return false;
    if (t.connector[i] == Connector::kAnd && (mask & t.children[i]) != t.children[i]) return false;
    if (t.connector[i] == Connector::kOr && (mask & t.children[i]) == 0) return false;
  }
  return true;
}

inline Selection to_selection(const FlatTree& t, std::uint32_t mask) {
  Selection s;
  for (std::size_t i = 0; i < t.ids.size(); ++i)
    if ((mask >> i) & 1U) s.insert(t.ids[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Rule closure.

struct PlainRule {
  std::vector<std::string> antecedents;
  std::string consequent;
};

inline std::vector<PlainRule> plain_rules(const RuleBase& rb) {
  std::vector<PlainRule> out;
  for (const auto& r : rb.rules()) {
    PlainRule p;
    for (const auto& a : r.antecedents) p.antecedents.push_back(a.symbol);
    p.consequent = r.consequent.symbol;
    out.push_back(std::move(p));
  }
  return out;
}

// Apply every rule against the current set until nothing changes.
inline std::set<std::string> naive_closure(const std::vector<PlainRule>& rules,
                                           std::set<std::string> facts) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : rules) {
      bool all = true;
      for (const auto& a : r.antecedents) all = all && facts.contains(a);
      if (all && facts.insert(r.consequent).second) changed = true;
    }
  }
  return facts;
}

// Least fixpoint as the intersection of every rule-closed superset of
// `seed` within a universe of at most 20 symbols.
inline std::uint32_t closed_set_intersection(const std::vector<std::pair<std::uint32_t, int>>& rules,
                                             std::uint32_t seed, int universe) {
  std::uint32_t meet = (universe >= 32) ? ~0U : ((1U << universe) - 1U);
  const std::uint32_t all = meet;
  for (std::uint32_t s = 0; s <= all; ++s) {
    if ((s & seed) != seed) continue;
    bool closed = true;
    for (const auto& [ante, cons] : rules)
      if ((s & ante) == ante && !((s >> cons) & 1U)) {
        closed = false;
        break;
      }
    if (closed) meet &= s;
    if (s == all) break;
  }
  return meet;
}

// ---------------------------------------------------------------------------
// Brute-force variant enumeration for hierarchies whose numeric attributes
// all aggregate by sum or max.

inline std::map<std::string, double> direct_aggregates(const DecisionHierarchy& h, const Selection& sel) {
  std::map<std::string, std::vector<double>> values;
  for (const auto& id : sel) {
    auto node = h.nodes.at(id);
    if (!node.characteristics) continue;
    for (const auto& [name, v] : h.tables.at(*node.characteristics).values)
      if (const auto* d = std::get_if<double>(&v)) values[name].push_back(*d);
  }
  std::map<std::string, double> out;
  for (const auto& [name, vs] : values) {
    Aggregation agg = Aggregation::kSum;
    for (const auto& [g, schema] : h.schemas)
      for (const auto& a : schema.attributes)
        if (a.name == name) agg = a.aggregation;
    double acc = vs.front();
    if (agg == Aggregation::kSum) {
      acc = 0;
      for (double v : vs) acc += v;
    } else if (agg == Aggregation::kMax) {
      for (double v : vs) acc = std::max(acc, v);
    } else if (agg == Aggregation::kMin) {
      for (double v : vs) acc = std::min(acc, v);
    }
    out[name] = acc;
  }
  return out;
}

inline bool holds(double v, Comparator c, double t) {
  switch (c) {
    case Comparator::kLe: return v <= t;
    case Comparator::kGe: return v >= t;
    case Comparator::kLt: return v < t;
    case Comparator::kGt: return v > t;
    case Comparator::kEq: return v == t;
  }
  return false;
}

inline std::set<Selection> brute_force_variants(const DecisionHierarchy& h, const RuleBase& rb,
                                                const ConstraintSet& cs, const BindingSpec& bindings) {
  const FlatTree t = flatten(h);
  int root = 0;
  while (t.ids[root] != h.root_id) ++root;
  const auto rules = plain_rules(rb);
  std::set<Selection> out;
  const std::uint32_t end = 1U << t.ids.size();
  for (std::uint32_t mask = 0; mask < end; ++mask) {
    if (!admissible_mask(t, mask, root)) continue;
    const Selection sel = to_selection(t, mask);
    std::set<std::string> facts;
    for (const auto& id : sel) facts.insert("selected:" + id);
    for (const auto& b : bindings) {
      if (!sel.contains(b.node_id)) continue;
      const auto& table = h.tables.at(*h.nodes.at(b.node_id).characteristics);
      if (holds(std::get<double>(table.values.at(b.attribute)), b.comparator, b.threshold)) facts.insert(b.symbol);
    }
    if (naive_closure(rules, facts).contains("infeasible")) continue;
    const auto agg = direct_aggregates(h, sel);
    auto ok = [&](const std::string& attr, Comparator c, double threshold) {
      auto it = agg.find(attr);
      return it == agg.end() || holds(it->second, c, threshold);
    };
    bool pass = true;
    if (cs.expenditure_ceiling) pass = pass && ok("cost", Comparator::kLe, *cs.expenditure_ceiling);
    if (cs.payback_limit) pass = pass && ok("payback", Comparator::kLe, *cs.payback_limit);
    for (const auto& b : cs.bounds) pass = pass && ok(b.attribute, b.comparator, b.threshold);
    if (pass) out.insert(sel);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random fixtures.

struct RandomProject {
  DecisionHierarchy hierarchy;
  RuleBase rules;
  ConstraintSet constraints;
  BindingSpec bindings;
};

// Tree of at most `max_nodes` nodes and `max_leaves` leaves; leaves carry
// integer cost (sum) and payback (max).
inline RandomProject random_project(std::mt19937& rng, int max_nodes = 18, int max_leaves = 12) {
  std::uniform_int_distribution<int> node_count(1, max_nodes);
  for (;;) {
    const int n = node_count(rng);
    std::vector<int> parent(n, -1);
    std::vector<std::vector<int>> kids(n);
    // Wide trees attach to the first few nodes only, so they carry more
    // leaves than uniformly attached ones.
    const int reach = std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? 3 : n;
    for (int i = 1; i < n; ++i) {
      parent[i] = std::uniform_int_distribution<int>(0, std::min(i, reach) - 1)(rng);
      kids[parent[i]].push_back(i);
    }
    int leaves = 0;
    for (int i = 0; i < n; ++i) leaves += kids[i].empty();
    if (leaves > max_leaves) continue;

    RandomProject p;
    auto& h = p.hierarchy;
    auto name = [](int i) { return "n" + std::to_string(i); };
    h.root_id = name(0);
    h.schemas["leaf"] = {"leaf",
                         {{"cost", ValueType::kNumeric, "kEUR", Aggregation::kSum},
                          {"payback", ValueType::kNumeric, "years", Aggregation::kMax}}};
    std::uniform_int_distribution<int> coin(0, 1), cost(0, 20), payback(1, 8);
    std::vector<std::string> leaf_ids;
    for (int i = 0; i < n; ++i) {
      HierarchyNode node;
      node.id = name(i);
      node.label = node.id;
      for (int k : kids[i]) node.children.push_back(name(k));
      if (kids[i].empty()) {
        node.kind = NodeKind::kLeaf;
        node.connector = Connector::kNone;
        node.group_id = "leaf";
        node.characteristics = node.id;
        h.tables[node.id] = {node.id, {{"cost", double(cost(rng))}, {"payback", double(payback(rng))}}};
        leaf_ids.push_back(node.id);
      } else {
        node.kind = i == 0 ? NodeKind::kGoal : NodeKind::kCriterion;
        node.connector = coin(rng) ? Connector::kAnd : Connector::kOr;
        node.group_id = "inner";
      }
      h.nodes[node.id] = std::move(node);
    }

    if (coin(rng)) p.constraints.expenditure_ceiling = std::uniform_int_distribution<int>(0, 80)(rng);
    if (coin(rng) && coin(rng)) p.constraints.payback_limit = payback(rng);
    if (coin(rng) && coin(rng))
      p.constraints.bounds.push_back({"cost", Comparator::kGe, double(cost(rng))});

    std::uniform_int_distribution<std::size_t> pick_node(0, static_cast<std::size_t>(n - 1));
    std::uniform_int_distribution<std::size_t> pick_leaf(0, leaf_ids.size() - 1);
    const int binding_count = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int b = 0; b < binding_count; ++b)
      p.bindings.push_back({"cheap" + std::to_string(b), leaf_ids[pick_leaf(rng)], "cost", Comparator::kLe,
                            double(cost(rng))});

    std::vector<ProductionRule> rules;
    const int rule_count = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int r = 0; r < rule_count; ++r) {
      ProductionRule rule;
      rule.id = "r" + std::to_string(r);
      rule.antecedents.emplace_back("selected:" + name(static_cast<int>(pick_node(rng))));
      if (coin(rng)) rule.antecedents.emplace_back("selected:" + name(static_cast<int>(pick_node(rng))));
      if (!p.bindings.empty() && coin(rng)) rule.antecedents.emplace_back(p.bindings.front().symbol);
      rule.consequent = Fact(coin(rng) ? "infeasible" : "flag" + std::to_string(r));
      rules.push_back(std::move(rule));
    }
    p.rules = RuleBase(std::move(rules));
    return p;
  }
}

// ---------------------------------------------------------------------------
// Star schemas.

// Direct group-by: member at `level` of `dim` -> sum of `measure`.
inline std::map<std::string, double> group_sum(const DualStarSchema& s, Dimension dim, std::size_t level,
                                               const std::string& table, const std::string& measure) {
  std::map<std::string, double> out;
  const auto& d = s.dimension(dim);
  for (const auto& row : s.facts().at(table).rows)
    out[d.membership.at(row.leaf_id).at(level)] += row.measures.at(measure);
  return out;
}

// Schema with random goals/decisions hierarchies over `leaves` leaves and
// one table "f" of at most `max_rows` rows with measures a and b.
inline DualStarSchema random_schema(std::mt19937& rng, bool integers, int leaves = 8, int max_rows = 50) {
  DimensionHierarchy goals{Dimension::kGoals, {"root", "objective", "leaf"}, {}};
  DimensionHierarchy decisions{Dimension::kDecisions, {"all", "class", "group", "leaf"}, {}};
  std::uniform_int_distribution<int> three(0, 2), ten(0, 9);
  for (int i = 0; i < leaves; ++i) {
    const std::string leaf = "L" + std::to_string(i);
    goals.membership[leaf] = {"G", "obj" + std::to_string(three(rng)), leaf};
    const std::string cls = "c" + std::to_string(three(rng));
    decisions.membership[leaf] = {"D", cls, cls + "-g" + std::to_string(three(rng)), leaf};
  }
  FactTable f{"f", {"a", "b"}, {}};
  const int rows = std::uniform_int_distribution<int>(0, max_rows)(rng);
  std::uniform_int_distribution<int> leaf_pick(0, leaves - 1), ints(-50, 500);
  std::uniform_real_distribution<double> reals(-1e3, 1e6);
  for (int r = 0; r < rows; ++r) {
    FactRow row{"L" + std::to_string(leaf_pick(rng)), {}};
    row.measures["a"] = integers ? double(ints(rng)) : reals(rng);
    row.measures["b"] = integers ? double(ints(rng)) : reals(rng) * 1e-3;
    f.rows.push_back(std::move(row));
  }
  return DualStarSchema(std::move(goals), std::move(decisions), {{"f", std::move(f)}}, "f");
}

inline bool close(double a, double b, bool exact, double rel = 1e-9) {
  if (exact) return a == b;
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= rel * scale;
}

// ---------------------------------------------------------------------------
// Entropy from label counts, without going through the library.

inline double count_entropy(const std::map<std::string, int>& counts) {
  int n = 0;
  for (const auto& [label, c] : counts) n += c;
  double h = 0;
  for (const auto& [label, c] : counts) {
    const double p = double(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

inline double hand_gain(const LabeledDataset& d, std::size_t attr) {
  std::map<std::string, int> total;
  std::map<std::string, std::map<std::string, int>> split;
  for (const auto& r : d.rows) {
    ++total[r.label];
    ++split[r.values[attr]][r.label];
  }
  double conditional = 0;
  for (const auto& [value, counts] : split) {
    int n = 0;
    for (const auto& [label, c] : counts) n += c;
    conditional += double(n) / double(d.rows.size()) * count_entropy(counts);
  }
  return count_entropy(total) - conditional;
}

inline LabeledDataset make_dataset(const std::vector<std::string>& names,
                                   const std::vector<std::vector<std::string>>& rows) {
  LabeledDataset d;
  std::vector<std::set<std::string>> domains(names.size());
  for (const auto& r : rows) {
    LabeledRow row;
    row.label = r.back();
    row.values.assign(r.begin(), r.end() - 1);
    for (std::size_t i = 0; i < row.values.size(); ++i) domains[i].insert(row.values[i]);
    d.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    d.attributes.push_back({names[i], {domains[i].begin(), domains[i].end()}});
  return d;
}

// Labels are a fixed random function of the attribute values, so equal
// value tuples always carry equal labels.
inline LabeledDataset random_consistent_dataset(std::mt19937& rng, int max_rows = 64, int max_attrs = 4) {
  const int attrs = std::uniform_int_distribution<int>(1, max_attrs)(rng);
  const int rows = std::uniform_int_distribution<int>(1, max_rows)(rng);
  std::vector<std::string> names;
  for (int a = 0; a < attrs; ++a) names.push_back("a" + std::to_string(a));
  std::map<std::vector<std::string>, std::string> truth;
  std::vector<std::vector<std::string>> table;
  for (int r = 0; r < rows; ++r) {
    std::vector<std::string> values;
    for (int a = 0; a < attrs; ++a) values.push_back(std::to_string(std::uniform_int_distribution<int>(0, 2)(rng)));
    auto it = truth.try_emplace(values, std::string(1, char('A' + rng() % 3))).first;
    values.push_back(it->second);
    table.push_back(values);
  }
  return make_dataset(names, table);
}

}  // namespace innotree::oracle
