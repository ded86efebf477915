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

// File formats: the model document, the rules file, and the JSON shapes the
// CLI and HTTP API emit.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "innotree/mining.hpp"
#include "innotree/model.hpp"
#include "innotree/rules.hpp"
#include "innotree/variants.hpp"

namespace innotree {

struct ScoringSpec {
  Weights weights;
  Direction direction = Direction::kMaximize;

  bool operator==(const ScoringSpec&) const = default;
};

// Everything the model document carries.
struct ProjectModel {
  DecisionHierarchy hierarchy;
  ConstraintSet constraints;
  BindingSpec bindings;
  ScoringSpec scoring;

  bool operator==(const ProjectModel&) const = default;
};

// Top-level keys "hierarchy", "schemas", "tables", "constraints", and the
// optional "bindings" and "scoring". Unknown keys are rejected.
ProjectModel parse_model(std::string_view text);
ProjectModel load_model(const std::filesystem::path& path);
nlohmann::json model_to_json(const ProjectModel& model);

// hierarchy + schemas + tables + constraints checks, binding resolution.
ValidationReport validate_model(const ProjectModel& model);

// JSON list of {"id", "if": [symbols], "then": symbol}.
RuleBase parse_rules(std::string_view text);
RuleBase load_rules(const std::filesystem::path& path);
std::string dump_rules(const RuleBase& rules);

nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const Score& score);
nlohmann::json to_json(const Firing& firing);
nlohmann::json to_json(const ChainResult& result);
nlohmann::json to_json(const Derivation& derivation);

// Ranked listing: {"truncated", "direction", "variants": [{"rank",
// "selected", "derived", "score"}]}.
nlohmann::json variants_to_json(const EnumerationResult& result, const std::vector<Score>& scores,
                                const std::vector<std::size_t>& order, Direction direction);

}  // namespace innotree
