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

// An engine snapshot pairs the project model with the analytical data it is
// evaluated against. Snapshots are immutable; reloading swaps in a new one.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "innotree/io.hpp"
#include "innotree/reporting.hpp"
#include "innotree/star.hpp"

namespace innotree {

inline constexpr const char* kDataDirEnv = "INNOTREE_DATA";

struct EngineConfig {
  std::filesystem::path model;
  std::filesystem::path schema;
  std::filesystem::path rules;    // optional
  std::filesystem::path reports;  // optional
};

// Config file: {"model", "schema", "rules", "reports", "data_dir"}. Relative
// paths resolve against INNOTREE_DATA when set, else "data_dir" (itself
// relative to the config file), else the config file's directory.
EngineConfig load_engine_config(const std::filesystem::path& path);

struct EngineSnapshot {
  ProjectModel model;
  RuleBase rules;
  DualStarSchema schema;
  ReportConfig reports;
  std::uint64_t version = 0;
};

std::shared_ptr<const EngineSnapshot> load_snapshot(const EngineConfig& cfg,
                                                    std::uint64_t version);

// Model, rule base, report config, and cross references: every leaf of the
// star schema must be a node of the hierarchy.
ValidationReport validate_snapshot(const EngineSnapshot& snapshot);

// Stateless what-if evaluation of one selection.
nlohmann::json evaluate_whatif(const EngineSnapshot& snapshot, const Selection& selection,
                               std::optional<double> param = std::nullopt);

// Enumeration + scoring + ranking with the model's weights and direction.
nlohmann::json list_variants(const EngineSnapshot& snapshot, std::size_t limit,
                             std::optional<double> param = std::nullopt);

// Holds the current snapshot. Readers take a shared_ptr copy and keep a
// consistent view for as long as they hold it.
class Engine {
 public:
  explicit Engine(EngineConfig cfg);

  std::shared_ptr<const EngineSnapshot> snapshot() const;

  // Re-reads every file. On failure the previous snapshot stays current and
  // the error propagates.
  std::uint64_t reload();

 private:
  EngineConfig cfg_;
  mutable std::mutex mu_;
  std::mutex reload_mu_;
  std::shared_ptr<const EngineSnapshot> current_;
};

}  // namespace innotree
