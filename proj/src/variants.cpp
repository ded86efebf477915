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

#include "innotree/variants.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace innotree {

std::string_view to_string(Direction direction) {
  return direction == Direction::kMaximize ? "maximize" : "minimize";
}

Direction parse_direction(std::string_view text) {
  if (text == "maximize") return Direction::kMaximize;
  if (text == "minimize") return Direction::kMinimize;
  throw Error(ErrorCode::kParse, "unknown direction '" + std::string(text) + "'");
}

ValidationReport admissibility_violations(const DecisionHierarchy& h,
                                          const Selection& selection) {
  for (const auto& id : selection) h.at(id);

  ValidationReport out;
  if (!selection.contains(h.root_id)) out.push_back({h.root_id, "root-unselected", ""});
  const auto parents = h.parents();
  for (const auto& id : selection) {
    const auto& node = h.at(id);
    if (id != h.root_id) {
      auto p = parents.find(id);
      if (p == parents.end() || !selection.contains(p->second))
        out.push_back({id, "parent-unselected", p == parents.end() ? "" : p->second});
    }
    if (node.connector == Connector::kAnd) {
      std::string missing;
      for (const auto& child : node.children) {
        if (selection.contains(child)) continue;
        if (!missing.empty()) missing += ",";
        missing += child;
      }
      if (!missing.empty()) out.push_back({id, "and-incomplete", missing});
    } else if (node.connector == Connector::kOr) {
      const bool any = std::any_of(node.children.begin(), node.children.end(),
                                   [&](const NodeId& c) { return selection.contains(c); });
      if (!any) out.push_back({id, "or-empty", ""});
    }
  }
  normalize(out);
  return out;
}

bool admissible(const DecisionHierarchy& h, const Selection& selection) {
  return admissibility_violations(h, selection).empty();
}

Score score(const DecisionHierarchy& h, const Selection& selection,
            const Weights& weights, std::optional<double> param) {
  for (const auto& [name, w] : weights) {
    const auto* attr = find_attribute(h, name);
    if (attr == nullptr)
      throw Error(ErrorCode::kInvalidArgument, "weight on undeclared attribute '" + name + "'");
    if (attr->type != ValueType::kNumeric) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight on " + std::string(to_string(attr->type)) + " attribute '" + name + "'");
    }
  }

  // attribute -> (node, value) for every selected node carrying it
  std::map<std::string, std::vector<std::pair<NodeId, double>>> values;
  for (const auto& id : selection) {
    h.at(id);
    const auto* table = h.table_of(id);
    if (table == nullptr) continue;
    for (const auto& [name, value] : table->values) {
      if (value_type_of(value) != ValueType::kNumeric) continue;
      const auto* attr = find_attribute(h, name);
      if (attr == nullptr || attr->type != ValueType::kNumeric) continue;
      values[name].emplace_back(id, lookup_numeric(h, id, name, param));
    }
  }

  Score out;
  for (const auto& [name, samples] : values) {
    const auto* attr = find_attribute(h, name);
    double acc = 0.0;
    switch (attr->aggregation) {
      case Aggregation::kSum:
        for (const auto& s : samples) acc += s.second;
        break;
      case Aggregation::kMin:
        acc = samples.front().second;
        for (const auto& s : samples) acc = std::min(acc, s.second);
        break;
      case Aggregation::kMax:
        acc = samples.front().second;
        for (const auto& s : samples) acc = std::max(acc, s.second);
        break;
      case Aggregation::kWeightedMean: {
        double weighted = 0.0, weight_sum = 0.0, plain = 0.0;
        bool all_weighted = true;
        for (const auto& [node, v] : samples) {
          plain += v;
          const auto* table = h.table_of(node);
          auto w = table->values.find(std::string(kWeightAttribute));
          if (w == table->values.end() || value_type_of(w->second) != ValueType::kNumeric) {
            all_weighted = false;
            continue;
          }
          const double wv = lookup_numeric(h, node, kWeightAttribute, param);
          weighted += wv * v;
          weight_sum += wv;
        }
        acc = (all_weighted && weight_sum > 0.0)
                  ? weighted / weight_sum
                  : plain / static_cast<double>(samples.size());
        break;
      }
    }
    out.per_attribute.emplace(name, acc);
  }

  for (const auto& [name, w] : weights) {
    auto it = out.per_attribute.find(name);
    if (it != out.per_attribute.end()) out.total += w * it->second;
  }
  return out;
}

ValidationReport constraint_violations(const ConstraintSet& cs, const Score& score) {
  ValidationReport out;
  auto check = [&](std::string subject, std::string_view attribute, Comparator cmp,
                   double threshold) {
    auto it = score.per_attribute.find(std::string(attribute));
    if (it == score.per_attribute.end()) return;
    if (compare(it->second, cmp, threshold)) return;
    out.push_back({std::move(subject), "constraint-violated",
                   std::string(attribute) + "=" + std::to_string(it->second) + " " +
                       std::string(to_string(cmp)) + " " + std::to_string(threshold) +
                       " fails"});
  };
  if (cs.expenditure_ceiling)
    check("expenditure_ceiling", kExpenditureAttribute, Comparator::kLe, *cs.expenditure_ceiling);
  if (cs.payback_limit)
    check("payback_limit", kPaybackAttribute, Comparator::kLe, *cs.payback_limit);
  for (const auto& b : cs.bounds)
    check("bound:" + b.attribute, b.attribute, b.comparator, b.threshold);
  normalize(out);
  return out;
}

namespace {

class Expander {
 public:
  Expander(const DecisionHierarchy& h, const std::function<bool(const Selection&)>& visit)
      : h_(h), visit_(visit) {}

  bool run() {
    pending_.push_back(&h_.at(h_.root_id));
    return step();
  }

 private:
  // pending_.back() expands next; pushing children in reverse keeps the
  // first child on top so it varies slowest.
  bool step() {
    if (pending_.empty()) return visit_(selected_);
    const HierarchyNode* node = pending_.back();
    pending_.pop_back();
    selected_.insert(node->id);

    bool go_on = true;
    const auto& kids = node->children;
    if (node->connector == Connector::kAnd) {
      go_on = with_children(kids, 0, true);
    } else if (node->connector == Connector::kOr) {
      const std::uint64_t end = std::uint64_t{1} << kids.size();
      for (std::uint64_t mask = 1; mask < end && go_on; ++mask)
        go_on = with_children(kids, mask, false);
    } else {
      go_on = step();
    }

    selected_.erase(node->id);
    pending_.push_back(node);
    return go_on;
  }

  bool with_children(const std::vector<NodeId>& kids, std::uint64_t mask, bool all) {
    std::size_t pushed = 0;
    for (std::size_t i = kids.size(); i-- > 0;) {
      if (all || ((mask >> i) & 1U)) {
        pending_.push_back(&h_.at(kids[i]));
        ++pushed;
      }
    }
    bool go_on = step();
    pending_.resize(pending_.size() - pushed);
    return go_on;
  }

  const DecisionHierarchy& h_;
  const std::function<bool(const Selection&)>& visit_;
  std::vector<const HierarchyNode*> pending_;
  Selection selected_;
};

}  // namespace

void for_each_admissible(const DecisionHierarchy& h,
                         const std::function<bool(const Selection&)>& visit) {
  auto report = validate_hierarchy(h);
  if (!report.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid hierarchy: " + format_violation(report.front()) +
                    (report.size() > 1 ? " and " + std::to_string(report.size() - 1) + " more"
                                       : ""));
  }
  for (const auto& [id, node] : h.nodes) {
    if (node.connector == Connector::kOr && node.children.size() > 63) {
      throw Error(ErrorCode::kInvalidArgument,
                  "OR node '" + id + "' has more than 63 children");
    }
  }
  Expander(h, visit).run();
}

EnumerationResult enumerate(const DecisionHierarchy& h, const RuleBase& rules,
                            const ConstraintSet& cs, const BindingSpec& bindings,
                            std::size_t limit, std::optional<double> param) {
  if (limit == 0) throw Error(ErrorCode::kInvalidArgument, "limit must be at least 1");

  EnumerationResult out;
  const Fact infeasible{std::string(kInfeasibleFact)};
  for_each_admissible(h, [&](const Selection& selection) {
    auto chained = forward_chain(rules, ground_facts(h, selection, bindings, param));
    if (chained.closure.contains(infeasible)) return true;
    if (!constraint_violations(cs, score(h, selection, {}, param)).empty()) return true;
    if (out.configurations.size() == limit) {
      out.truncated = true;
      return false;
    }
    out.configurations.push_back({selection, std::move(chained.closure)});
    return true;
  });
  return out;
}

std::vector<std::size_t> rank(const std::vector<Configuration>& configs,
                              const std::vector<Score>& scores, Direction direction) {
  if (configs.size() != scores.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "rank: " + std::to_string(configs.size()) + " configurations but " +
                    std::to_string(scores.size()) + " scores");
  }
  std::vector<std::size_t> order(configs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ta = scores[a].total, tb = scores[b].total;
    if (ta != tb) return direction == Direction::kMaximize ? ta > tb : ta < tb;
    return configs[a].selected < configs[b].selected;
  });
  return order;
}

}  // namespace innotree
