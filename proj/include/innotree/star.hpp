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

// Analytical store built from two star schemas that share their leaf-level
// fact tables: a goals dimension and a decisions dimension, each a levelled
// hierarchy over the same leaf ids. One fact table is designated main.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "innotree/model.hpp"

namespace innotree {

enum class Dimension { kGoals, kDecisions };

std::string_view to_string(Dimension dim);
Dimension parse_dimension(std::string_view text);

struct DimensionHierarchy {
  Dimension id = Dimension::kGoals;
  std::vector<std::string> levels;  // coarsest first; last level is the leaf id
  std::map<NodeId, std::vector<std::string>> membership;  // leaf -> path

  // Index of `level` in levels, or kBadReference.
  std::size_t level_index(std::string_view level) const;
  const std::string& member(const NodeId& leaf, std::size_t level) const;

  bool operator==(const DimensionHierarchy&) const = default;
};

struct FactRow {
  NodeId leaf_id;
  std::map<std::string, double> measures;

  bool operator==(const FactRow&) const = default;
};

struct FactTable {
  std::string name;
  std::vector<std::string> measures;  // column order
  std::vector<FactRow> rows;

  bool has_measure(std::string_view name) const;
  bool operator==(const FactTable&) const = default;
};

class DualStarSchema {
 public:
  // Throws kIntegrity when the dimensions disagree on the leaf set, a path
  // has the wrong length or does not end in its leaf, a fact row references
  // an unmapped leaf, row measures differ from the table's columns, or
  // `main` does not name a table.
  DualStarSchema(DimensionHierarchy goals, DimensionHierarchy decisions,
                 std::map<std::string, FactTable> facts, std::string main);

  const DimensionHierarchy& goals() const noexcept { return goals_; }
  const DimensionHierarchy& decisions() const noexcept { return decisions_; }
  const DimensionHierarchy& dimension(Dimension dim) const noexcept {
    return dim == Dimension::kGoals ? goals_ : decisions_;
  }
  const std::map<std::string, FactTable>& facts() const noexcept { return facts_; }
  const std::string& main() const noexcept { return main_; }

  // Named table, or main when empty; kBadReference if unknown.
  const FactTable& table(const std::optional<std::string>& name) const;
  std::vector<std::string> table_names() const;

  bool operator==(const DualStarSchema&) const = default;

 private:
  friend DualStarSchema select_main_fact_table(const DualStarSchema&, std::string_view);

  DimensionHierarchy goals_;
  DimensionHierarchy decisions_;
  std::map<std::string, FactTable> facts_;
  std::string main_;
};

// Copy of `s` with a different main table. kBadReference lists the tables.
DualStarSchema select_main_fact_table(const DualStarSchema& s, std::string_view name);

enum class MeasureAgg { kSum, kMin, kMax, kMean };

std::string_view to_string(MeasureAgg agg);
MeasureAgg parse_measure_agg(std::string_view text);

struct RollupQuery {
  Dimension dim = Dimension::kGoals;
  std::string level;
  std::vector<std::string> measures;
  std::vector<MeasureAgg> aggs;  // one per measure; empty means all sum
  std::optional<std::string> table;

  bool operator==(const RollupQuery&) const = default;
};

struct RollupGroup {
  std::string member;
  std::vector<double> values;  // aligned with RollupGrid::measures
  std::size_t count = 0;

  bool operator==(const RollupGroup&) const = default;
};

struct RollupGrid {
  std::string table;
  Dimension dim = Dimension::kGoals;
  std::string level;
  std::vector<std::string> measures;
  std::vector<MeasureAgg> aggs;
  std::vector<RollupGroup> groups;  // ordered by member

  bool operator==(const RollupGrid&) const = default;
};

// Groups the table's rows by each leaf's member at `level`. mean is
// sum/count at the target level.
RollupGrid rollup(const DualStarSchema& s, const RollupQuery& query);

// Canonical text form of a grid, used for determinism checks and the API.
std::string serialize(const RollupGrid& grid);

// JSON manifest {"dims", "facts", "main"}. Fact tables are inline or, with
// a "csv" key, read from a path relative to the manifest. Parse errors
// report line and column.
DualStarSchema load_schema(const std::filesystem::path& path);
DualStarSchema parse_schema(std::string_view text,
                            const std::filesystem::path& base_dir = {});
void store_schema(const DualStarSchema& s, const std::filesystem::path& path);
std::string dump_schema(const DualStarSchema& s);

// Header "leaf_id,<measures...>", LF endings, shortest round-trip numbers.
std::string export_fact_csv(const FactTable& table);
FactTable import_fact_csv(std::string name, std::string_view text);

}  // namespace innotree
