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

// Production rules over propositional facts and monotone forward chaining.
// Antecedents are positive conjunctions; facts are never retracted.

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "innotree/model.hpp"

namespace innotree {

struct Fact {
  std::string symbol;

  Fact() = default;
  explicit Fact(std::string s);

  friend bool operator==(const Fact&, const Fact&) = default;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

using FactSet = std::set<Fact>;

FactSet make_facts(const std::vector<std::string>& symbols);
std::vector<std::string> symbols_of(const FactSet& facts);

// Derived by a veto rule; configurations whose closure holds it are rejected.
inline constexpr std::string_view kInfeasibleFact = "infeasible";
// Universal seed used by mined rule bases for empty antecedent paths.
inline constexpr std::string_view kTrueFact = "true";

struct ProductionRule {
  std::string id;
  std::vector<Fact> antecedents;  // deduplicated, declaration order kept
  Fact consequent;

  bool operator==(const ProductionRule&) const = default;
};

class RuleBase {
 public:
  RuleBase() = default;
  // Throws kIntegrity on duplicate ids, empty antecedents, or a consequent
  // that is also an antecedent.
  explicit RuleBase(std::vector<ProductionRule> rules);

  const std::vector<ProductionRule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }

  bool operator==(const RuleBase&) const = default;

 private:
  std::vector<ProductionRule> rules_;
};

struct Firing {
  std::string rule_id;
  Fact derived;
  std::vector<Fact> antecedents;

  bool operator==(const Firing&) const = default;
};

struct ChainResult {
  FactSet closure;
  std::vector<Firing> trace;  // in firing order
};

// Least fixpoint of `seed` under `rules`. Rules are scanned in declaration
// order, repeatedly, until a full pass fires nothing; a newly derived fact
// is visible to later rules of the same pass.
ChainResult forward_chain(const RuleBase& rules, const FactSet& seed);

struct Derivation {
  Fact fact;
  std::optional<std::string> rule_id;  // empty for seed facts
  std::vector<Derivation> premises;

  bool operator==(const Derivation&) const = default;
};

// Reconstructs how `fact` entered the closure. kNotDerived if it did not.
Derivation explain(const Fact& fact, const ChainResult& result);

// Grounds a fact symbol from a node attribute of the current selection.
struct Binding {
  std::string symbol;
  NodeId node_id;
  std::string attribute;
  Comparator comparator = Comparator::kLe;
  double threshold = 0.0;

  bool operator==(const Binding&) const = default;
};

using BindingSpec = std::vector<Binding>;

// Unresolved nodes or attributes, and non-numeric binding attributes.
ValidationReport validate_bindings(const DecisionHierarchy& h,
                                   const BindingSpec& bindings);

inline constexpr std::string_view kSelectedPrefix = "selected:";

// "selected:<id>" per selected node, plus every binding symbol whose node is
// selected and whose comparator holds on the node's value. Series-valued
// attributes are evaluated at `param`.
FactSet ground_facts(const DecisionHierarchy& h, const std::set<NodeId>& selection,
                     const BindingSpec& bindings,
                     std::optional<double> param = std::nullopt);

}  // namespace innotree
