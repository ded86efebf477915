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

// Morphological-tree semantics: AND nodes require every child, OR nodes
// admit any non-empty subset of children ("this one, that one, or both").
// Admissible selections are enumerated, filtered by veto rules and
// constraints, scored and ranked.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "innotree/model.hpp"
#include "innotree/rules.hpp"

namespace innotree {

using Selection = std::set<NodeId>;
using Weights = std::map<std::string, double>;

struct Configuration {
  Selection selected;
  FactSet derived;

  bool operator==(const Configuration&) const = default;
};

struct Score {
  std::map<std::string, double> per_attribute;
  double total = 0.0;

  bool operator==(const Score&) const = default;
};

enum class Direction { kMaximize, kMinimize };

std::string_view to_string(Direction direction);
Direction parse_direction(std::string_view text);

// Throws kBadReference for ids missing from `h`.
bool admissible(const DecisionHierarchy& h, const Selection& selection);

// Why a selection is not admissible. Rules: root-unselected,
// parent-unselected, and-incomplete (detail = missing children),
// or-empty. Empty iff admissible().
ValidationReport admissibility_violations(const DecisionHierarchy& h,
                                          const Selection& selection);

// Folds every numeric attribute carried by a selected node with its schema
// aggregation. weighted_mean uses the "weight" attribute when every
// contributing node has one and their sum is positive, else the plain mean.
Score score(const DecisionHierarchy& h, const Selection& selection,
            const Weights& weights, std::optional<double> param = std::nullopt);

// Constraint findings for an aggregated score. Subjects are
// "expenditure_ceiling", "payback_limit" or "bound:<attribute>". A limit on
// an attribute no selected node carries is not evaluated.
ValidationReport constraint_violations(const ConstraintSet& cs, const Score& score);

struct EnumerationResult {
  std::vector<Configuration> configurations;
  bool truncated = false;
};

// Visits admissible selections in canonical order until `visit` returns
// false. Canonical order: the root expands first; OR masks over child order
// run in increasing numeric order (bit i = child i); among expanded nodes
// the earlier one in pre-order varies slowest.
void for_each_admissible(const DecisionHierarchy& h,
                         const std::function<bool(const Selection&)>& visit);

// Admissible selections whose rule closure lacks "infeasible" and whose
// score meets `cs`, in canonical order, at most `limit` of them.
EnumerationResult enumerate(const DecisionHierarchy& h, const RuleBase& rules,
                            const ConstraintSet& cs, const BindingSpec& bindings,
                            std::size_t limit,
                            std::optional<double> param = std::nullopt);

// Indices of `configs` ordered by total (stable), ties broken by the sorted
// selected-id list.
std::vector<std::size_t> rank(const std::vector<Configuration>& configs,
                              const std::vector<Score>& scores, Direction direction);

}  // namespace innotree
