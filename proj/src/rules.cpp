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

#include "innotree/rules.hpp"

#include <algorithm>
#include <map>

namespace innotree {

Fact::Fact(std::string s) : symbol(std::move(s)) {
  if (symbol.empty()) throw Error(ErrorCode::kInvalidArgument, "empty fact symbol");
}

FactSet make_facts(const std::vector<std::string>& symbols) {
  FactSet out;
  for (const auto& s : symbols) out.emplace(s);
  return out;
}

std::vector<std::string> symbols_of(const FactSet& facts) {
  std::vector<std::string> out;
  out.reserve(facts.size());
  for (const auto& f : facts) out.push_back(f.symbol);
  return out;
}

RuleBase::RuleBase(std::vector<ProductionRule> rules) : rules_(std::move(rules)) {
  std::set<std::string> ids;
  for (auto& rule : rules_) {
    if (rule.id.empty()) throw Error(ErrorCode::kIntegrity, "rule with empty id");
    if (!ids.insert(rule.id).second)
      throw Error(ErrorCode::kIntegrity, "duplicate rule id '" + rule.id + "'");
    if (rule.antecedents.empty())
      throw Error(ErrorCode::kIntegrity, "rule '" + rule.id + "' has no antecedents");
    std::vector<Fact> unique;
    for (auto& fact : rule.antecedents) {
      if (fact == rule.consequent) {
        throw Error(ErrorCode::kIntegrity, "rule '" + rule.id +
                                               "' lists its consequent '" +
                                               fact.symbol + "' as an antecedent");
      }
      if (std::find(unique.begin(), unique.end(), fact) == unique.end())
        unique.push_back(std::move(fact));
    }
    rule.antecedents = std::move(unique);
  }
}

ChainResult forward_chain(const RuleBase& rules, const FactSet& seed) {
  ChainResult result{seed, {}};
  bool fired = true;
  while (fired) {
    fired = false;
    for (const auto& rule : rules.rules()) {
      if (result.closure.contains(rule.consequent)) continue;
      const bool holds = std::all_of(
          rule.antecedents.begin(), rule.antecedents.end(),
          [&](const Fact& f) { return result.closure.contains(f); });
      if (!holds) continue;
      result.closure.insert(rule.consequent);
      result.trace.push_back({rule.id, rule.consequent, rule.antecedents});
      fired = true;
    }
  }
  return result;
}

namespace {

Derivation build(const Fact& fact, const std::map<Fact, const Firing*>& by_fact) {
  auto it = by_fact.find(fact);
  if (it == by_fact.end()) return {fact, std::nullopt, {}};
  Derivation node{fact, it->second->rule_id, {}};
  for (const auto& premise : it->second->antecedents)
    node.premises.push_back(build(premise, by_fact));
  return node;
}

}  // namespace

Derivation explain(const Fact& fact, const ChainResult& result) {
  if (!result.closure.contains(fact))
    throw Error(ErrorCode::kNotDerived, "fact '" + fact.symbol + "' was not derived");
  // Each fact fires at most once and only from facts already present, so
  // following the trace cannot loop.
  std::map<Fact, const Firing*> by_fact;
  for (const auto& firing : result.trace) by_fact.emplace(firing.derived, &firing);
  return build(fact, by_fact);
}

ValidationReport validate_bindings(const DecisionHierarchy& h,
                                   const BindingSpec& bindings) {
  ValidationReport out;
  for (const auto& b : bindings) {
    if (b.symbol.empty()) out.push_back({b.node_id, "binding-empty-symbol", b.attribute});
    if (h.find(b.node_id) == nullptr) {
      out.push_back({b.symbol, "binding-node-unknown", b.node_id});
      continue;
    }
    const auto* table = h.table_of(b.node_id);
    if (table == nullptr || !table->values.contains(b.attribute)) {
      out.push_back({b.symbol, "binding-attribute-missing", b.node_id + "." + b.attribute});
    } else if (value_type_of(table->values.at(b.attribute)) != ValueType::kNumeric) {
      out.push_back({b.symbol, "binding-attribute-not-numeric", b.node_id + "." + b.attribute});
    }
  }
  normalize(out);
  return out;
}

FactSet ground_facts(const DecisionHierarchy& h, const std::set<NodeId>& selection,
                     const BindingSpec& bindings, std::optional<double> param) {
  for (const auto& id : selection) h.at(id);
  for (const auto& b : bindings) {
    const auto* table = h.find(b.node_id) ? h.table_of(b.node_id) : nullptr;
    if (table == nullptr || !table->values.contains(b.attribute)) {
      throw Error(ErrorCode::kNotFound, "binding '" + b.symbol + "' references missing attribute '" +
                                            b.node_id + "." + b.attribute + "'");
    }
  }

  FactSet out;
  for (const auto& id : selection) out.emplace(std::string(kSelectedPrefix) + id);
  for (const auto& b : bindings) {
    if (!selection.contains(b.node_id)) continue;
    if (compare(lookup_numeric(h, b.node_id, b.attribute, param), b.comparator, b.threshold))
      out.emplace(b.symbol);
  }
  return out;
}

}  // namespace innotree
