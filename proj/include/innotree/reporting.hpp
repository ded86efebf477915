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

// Static reports (precomputed roll-ups rendered to canonical XML) and
// dynamic pivot patterns (row x column cross-tabs exported as CSV).

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "innotree/star.hpp"

namespace innotree {

inline constexpr std::size_t kMaxStaticReports = 10;
inline constexpr std::size_t kMaxDynamicReports = 15;
inline constexpr std::size_t kMaxDynamicPerCube = 5;

struct StaticReportDef {
  std::string id;
  std::string title;
  RollupQuery query;
  std::string xml_root = "report";

  bool operator==(const StaticReportDef&) const = default;
};

struct PivotAxis {
  Dimension dim = Dimension::kGoals;
  std::string level;

  bool operator==(const PivotAxis&) const = default;
};

struct PivotFilter {
  std::optional<Dimension> dim;  // resolved by unique level name when absent
  std::string level;
  std::string member;

  bool operator==(const PivotFilter&) const = default;
};

struct DynamicQueryDef {
  std::string id;
  std::string cube;  // fact table name
  PivotAxis rows;
  PivotAxis columns;
  std::string measure;
  MeasureAgg agg = MeasureAgg::kSum;
  std::optional<PivotFilter> filter;

  bool operator==(const DynamicQueryDef&) const = default;
};

struct ReportConfig {
  std::vector<StaticReportDef> statics;
  std::vector<DynamicQueryDef> dynamics;

  const StaticReportDef* find_static(std::string_view id) const;
  const DynamicQueryDef* find_dynamic(std::string_view id) const;
  std::vector<std::string> static_ids() const;
  std::vector<std::string> dynamic_ids() const;

  bool operator==(const ReportConfig&) const = default;
};

// Count limits (10 static, 15 dynamic, 5 dynamic per cube), duplicate ids,
// and references that do not resolve against `s`. Empty iff valid.
ValidationReport validate_report_config(const ReportConfig& cfg, const DualStarSchema& s);

// Canonical XML: UTF-8, LF, attributes sorted by name, one <row> per
// roll-up group in roll-up order. Errors carry the report id.
std::string render_static(const StaticReportDef& def, const DualStarSchema& s);

struct PivotGrid {
  std::vector<std::string> row_members;     // sorted
  std::vector<std::string> column_members;  // sorted
  std::vector<std::vector<std::optional<double>>> cells;  // [row][column]
};

// Throws kDegeneratePivot when rows and columns are the same (dim, level).
PivotGrid pivot(const DynamicQueryDef& def, const DualStarSchema& s);

// Header row: row level name, then column members. Empty cells are empty
// fields.
std::string pivot_csv(const DynamicQueryDef& def, const PivotGrid& grid);
std::string run_dynamic(const DynamicQueryDef& def, const DualStarSchema& s);

ReportConfig parse_report_config(std::string_view text);
ReportConfig load_report_config(const std::filesystem::path& path);
std::string dump_report_config(const ReportConfig& cfg);

// Writes <id>.xml / <id>.csv for every report into `out_dir`; returns the
// written paths.
std::vector<std::filesystem::path> write_all_reports(const ReportConfig& cfg,
                                                     const DualStarSchema& s,
                                                     const std::filesystem::path& out_dir);

}  // namespace innotree
