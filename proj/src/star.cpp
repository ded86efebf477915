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

#include "innotree/star.hpp"

#include <algorithm>
#include <set>

#include "innotree/text.hpp"
#include "json_util.hpp"

namespace innotree {

using detail::json;

std::string_view to_string(Dimension dim) {
  return dim == Dimension::kGoals ? "goals" : "decisions";
}

Dimension parse_dimension(std::string_view text) {
  if (text == "goals") return Dimension::kGoals;
  if (text == "decisions") return Dimension::kDecisions;
  throw Error(ErrorCode::kParse, "unknown dimension '" + std::string(text) + "'");
}

std::string_view to_string(MeasureAgg agg) {
  switch (agg) {
    case MeasureAgg::kSum: return "sum";
    case MeasureAgg::kMin: return "min";
    case MeasureAgg::kMax: return "max";
    case MeasureAgg::kMean: return "mean";
  }
  return "sum";
}

MeasureAgg parse_measure_agg(std::string_view text) {
  if (text == "sum") return MeasureAgg::kSum;
  if (text == "min") return MeasureAgg::kMin;
  if (text == "max") return MeasureAgg::kMax;
  if (text == "mean") return MeasureAgg::kMean;
  throw Error(ErrorCode::kParse, "unknown aggregate '" + std::string(text) + "'");
}

std::size_t DimensionHierarchy::level_index(std::string_view level) const {
  auto it = std::find(levels.begin(), levels.end(), level);
  if (it == levels.end()) {
    throw Error(ErrorCode::kBadReference, "unknown level '" + std::string(level) +
                                              "' in dimension " + std::string(to_string(id)) +
                                              " (levels: " + join(levels, ", ") + ")");
  }
  return static_cast<std::size_t>(it - levels.begin());
}

const std::string& DimensionHierarchy::member(const NodeId& leaf, std::size_t level) const {
  auto it = membership.find(leaf);
  if (it == membership.end())
    throw Error(ErrorCode::kBadReference, "leaf '" + leaf + "' not in dimension " +
                                              std::string(to_string(id)));
  return it->second.at(level);
}

bool FactTable::has_measure(std::string_view name) const {
  return std::find(measures.begin(), measures.end(), name) != measures.end();
}

namespace {

void check_dimension(const DimensionHierarchy& dim) {
  const std::string name(to_string(dim.id));
  if (dim.levels.empty())
    throw Error(ErrorCode::kIntegrity, "dimension " + name + " has no levels");
  std::set<std::string> unique(dim.levels.begin(), dim.levels.end());
  if (unique.size() != dim.levels.size())
    throw Error(ErrorCode::kIntegrity, "dimension " + name + " repeats a level name");
  for (const auto& [leaf, path] : dim.membership) {
    if (path.size() != dim.levels.size()) {
      throw Error(ErrorCode::kIntegrity,
                  "dimension " + name + ": leaf '" + leaf + "' has " +
                      std::to_string(path.size()) + " members for " +
                      std::to_string(dim.levels.size()) + " levels");
    }
    if (path.back() != leaf) {
      throw Error(ErrorCode::kIntegrity, "dimension " + name + ": path of leaf '" + leaf +
                                             "' ends in '" + path.back() + "'");
    }
  }
}

}  // namespace

DualStarSchema::DualStarSchema(DimensionHierarchy goals, DimensionHierarchy decisions,
                               std::map<std::string, FactTable> facts, std::string main)
    : goals_(std::move(goals)),
      decisions_(std::move(decisions)),
      facts_(std::move(facts)),
      main_(std::move(main)) {
  goals_.id = Dimension::kGoals;
  decisions_.id = Dimension::kDecisions;
  check_dimension(goals_);
  check_dimension(decisions_);

  for (const auto& [leaf, path] : goals_.membership)
    if (!decisions_.membership.contains(leaf))
      throw Error(ErrorCode::kIntegrity, "leaf '" + leaf + "' is in goals but not in decisions");
  for (const auto& [leaf, path] : decisions_.membership)
    if (!goals_.membership.contains(leaf))
      throw Error(ErrorCode::kIntegrity, "leaf '" + leaf + "' is in decisions but not in goals");

  for (auto& [name, table] : facts_) {
    table.name = name;
    std::set<std::string> columns(table.measures.begin(), table.measures.end());
    if (columns.size() != table.measures.size())
      throw Error(ErrorCode::kIntegrity, "fact table '" + name + "' repeats a measure");
    for (const auto& row : table.rows) {
      if (!goals_.membership.contains(row.leaf_id))
        throw Error(ErrorCode::kIntegrity, "fact table '" + name + "': leaf '" + row.leaf_id +
                                               "' is not in the dimensions");
      std::set<std::string> present;
      for (const auto& [m, v] : row.measures) present.insert(m);
      if (present != columns)
        throw Error(ErrorCode::kIntegrity, "fact table '" + name + "': row for leaf '" +
                                               row.leaf_id + "' has inconsistent measures");
    }
  }
  if (!facts_.contains(main_)) {
    throw Error(ErrorCode::kIntegrity, "main fact table '" + main_ + "' is unresolvable (tables: " +
                                           join(table_names(), ", ") + ")");
  }
}

const FactTable& DualStarSchema::table(const std::optional<std::string>& name) const {
  const std::string& key = name && !name->empty() ? *name : main_;
  auto it = facts_.find(key);
  if (it == facts_.end())
    throw Error(ErrorCode::kBadReference, "unknown fact table '" + key + "' (tables: " +
                                              join(table_names(), ", ") + ")");
  return it->second;
}

std::vector<std::string> DualStarSchema::table_names() const {
  std::vector<std::string> out;
  for (const auto& [name, t] : facts_) out.push_back(name);
  return out;
}

DualStarSchema select_main_fact_table(const DualStarSchema& s, std::string_view name) {
  if (!s.facts_.contains(std::string(name))) {
    throw Error(ErrorCode::kBadReference, "unknown fact table '" + std::string(name) +
                                              "' (tables: " + join(s.table_names(), ", ") + ")");
  }
  DualStarSchema out = s;
  out.main_ = std::string(name);
  return out;
}

RollupGrid rollup(const DualStarSchema& s, const RollupQuery& query) {
  const auto& dim = s.dimension(query.dim);
  const std::size_t level = dim.level_index(query.level);
  const FactTable& table = s.table(query.table);
  for (const auto& m : query.measures)
    if (!table.has_measure(m))
      throw Error(ErrorCode::kBadReference, "unknown measure '" + m + "' in table '" +
                                                table.name + "'");
  std::vector<MeasureAgg> aggs = query.aggs;
  if (aggs.empty()) aggs.assign(query.measures.size(), MeasureAgg::kSum);
  if (aggs.size() != query.measures.size())
    throw Error(ErrorCode::kInvalidArgument, "rollup needs one aggregate per measure");

  std::map<std::string, RollupGroup> groups;
  for (const auto& row : table.rows) {
    const auto& member = dim.member(row.leaf_id, level);
    auto [it, fresh] = groups.try_emplace(member);
    RollupGroup& g = it->second;
    if (fresh) {
      g.member = member;
      g.values.resize(aggs.size());
    }
    for (std::size_t i = 0; i < aggs.size(); ++i) {
      const double v = row.measures.at(query.measures[i]);
      double& acc = g.values[i];
      switch (aggs[i]) {
        case MeasureAgg::kSum:
        case MeasureAgg::kMean: acc = fresh ? v : acc + v; break;
        case MeasureAgg::kMin: acc = fresh ? v : std::min(acc, v); break;
        case MeasureAgg::kMax: acc = fresh ? v : std::max(acc, v); break;
      }
    }
    ++g.count;
  }

  RollupGrid grid{table.name, query.dim, query.level, query.measures, aggs, {}};
  for (auto& [member, g] : groups) {
    for (std::size_t i = 0; i < aggs.size(); ++i)
      if (aggs[i] == MeasureAgg::kMean) g.values[i] /= static_cast<double>(g.count);
    grid.groups.push_back(std::move(g));
  }
  return grid;
}

std::string serialize(const RollupGrid& grid) {
  json groups = json::array();
  for (const auto& g : grid.groups) {
    json values = json::object();
    for (std::size_t i = 0; i < grid.measures.size(); ++i) values[grid.measures[i]] = g.values[i];
    groups.push_back({{"member", g.member}, {"count", g.count}, {"values", values}});
  }
  json aggs = json::array();
  for (auto a : grid.aggs) aggs.push_back(to_string(a));
  json out = {{"table", grid.table},       {"dim", to_string(grid.dim)},
              {"level", grid.level},       {"measures", grid.measures},
              {"aggs", aggs},              {"groups", groups}};
  return out.dump();
}

// ---------------------------------------------------------------------------
// Manifest and CSV

namespace {

DimensionHierarchy parse_dimension_json(const json& j, Dimension id) {
  const std::string what = "dims." + std::string(to_string(id));
  detail::require_keys(j, {"levels", "membership"}, what);
  DimensionHierarchy dim;
  dim.id = id;
  for (const auto& level : detail::field(j, "levels", what))
    dim.levels.push_back(detail::as_string(level, what + ".levels"));
  const auto& membership = detail::field(j, "membership", what);
  if (!membership.is_object())
    throw Error(ErrorCode::kParse, what + ".membership: expected an object");
  for (const auto& [leaf, path] : membership.items()) {
    if (!path.is_array()) throw Error(ErrorCode::kParse, what + ".membership: expected arrays");
    auto& out = dim.membership[leaf];
    for (const auto& member : path) out.push_back(detail::as_string(member, what + ".membership"));
  }
  return dim;
}

json dimension_json(const DimensionHierarchy& dim) {
  json membership = json::object();
  for (const auto& [leaf, path] : dim.membership) membership[leaf] = path;
  return {{"levels", dim.levels}, {"membership", membership}};
}

FactTable parse_fact_json(const json& j, const std::filesystem::path& base_dir) {
  detail::require_keys(j, {"name", "measures", "rows", "csv"}, "facts[]");
  const std::string name = detail::get_string(j, "name", "facts[]");
  const std::string what = "facts." + name;
  if (j.contains("csv")) {
    if (j.contains("rows"))
      throw Error(ErrorCode::kParse, what + ": give either 'rows' or 'csv', not both");
    auto path = std::filesystem::path(detail::as_string(j.at("csv"), what + ".csv"));
    if (path.is_relative()) path = base_dir / path;
    FactTable table = import_fact_csv(name, detail::read_file(path));
    if (j.contains("measures")) {
      std::vector<std::string> declared;
      for (const auto& m : j.at("measures")) declared.push_back(detail::as_string(m, what));
      if (declared != table.measures)
        throw Error(ErrorCode::kIntegrity, what + ": CSV header does not match 'measures'");
    }
    return table;
  }
  FactTable table;
  table.name = name;
  for (const auto& m : detail::field(j, "measures", what))
    table.measures.push_back(detail::as_string(m, what + ".measures"));
  for (const auto& r : detail::field(j, "rows", what)) {
    detail::require_keys(r, {"leaf_id", "measures"}, what + ".rows[]");
    FactRow row;
    row.leaf_id = detail::get_string(r, "leaf_id", what + ".rows[]");
    const auto& measures = detail::field(r, "measures", what + ".rows[]");
    if (!measures.is_object())
      throw Error(ErrorCode::kParse, what + ".rows[].measures: expected an object");
    for (const auto& [m, v] : measures.items()) row.measures[m] = detail::as_number(v, what + "." + m);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

DualStarSchema parse_schema(std::string_view text, const std::filesystem::path& base_dir) {
  const json j = detail::parse_json(text, "schema");
  detail::require_keys(j, {"dims", "facts", "main"}, "schema");
  const auto& dims = detail::field(j, "dims", "schema");
  detail::require_keys(dims, {"goals", "decisions"}, "schema.dims");
  auto goals = parse_dimension_json(detail::field(dims, "goals", "schema.dims"), Dimension::kGoals);
  auto decisions =
      parse_dimension_json(detail::field(dims, "decisions", "schema.dims"), Dimension::kDecisions);
  std::map<std::string, FactTable> facts;
  const auto& fact_list = detail::field(j, "facts", "schema");
  if (!fact_list.is_array()) throw Error(ErrorCode::kParse, "schema.facts: expected an array");
  for (const auto& f : fact_list) {
    FactTable table = parse_fact_json(f, base_dir);
    std::string name = table.name;
    if (!facts.emplace(name, std::move(table)).second)
      throw Error(ErrorCode::kIntegrity, "duplicate fact table '" + name + "'");
  }
  std::string main;
  if (j.contains("main") && !j.at("main").is_null()) main = detail::as_string(j.at("main"), "schema.main");
  return DualStarSchema(std::move(goals), std::move(decisions), std::move(facts), std::move(main));
}

DualStarSchema load_schema(const std::filesystem::path& path) {
  return parse_schema(detail::read_file(path), path.parent_path());
}

std::string dump_schema(const DualStarSchema& s) {
  json facts = json::array();
  for (const auto& [name, table] : s.facts()) {
    json rows = json::array();
    for (const auto& row : table.rows) rows.push_back({{"leaf_id", row.leaf_id}, {"measures", row.measures}});
    facts.push_back({{"name", name}, {"measures", table.measures}, {"rows", rows}});
  }
  json out = {{"dims", {{"goals", dimension_json(s.goals())}, {"decisions", dimension_json(s.decisions())}}},
              {"facts", facts},
              {"main", s.main()}};
  return out.dump(2) + "\n";
}

void store_schema(const DualStarSchema& s, const std::filesystem::path& path) {
  detail::write_file(path, dump_schema(s));
}

std::string export_fact_csv(const FactTable& table) {
  std::vector<std::string> header{"leaf_id"};
  header.insert(header.end(), table.measures.begin(), table.measures.end());
  std::string out = csv::row(header);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields{row.leaf_id};
    for (const auto& m : table.measures) fields.push_back(format_number(row.measures.at(m)));
    out += csv::row(fields);
  }
  return out;
}

FactTable import_fact_csv(std::string name, std::string_view text) {
  auto records = csv::parse(text);
  if (records.empty() || records.front().empty() || records.front().front() != "leaf_id")
    throw Error(ErrorCode::kParse, "fact CSV '" + name + "': header must start with leaf_id");
  FactTable table;
  table.name = std::move(name);
  table.measures.assign(records.front().begin() + 1, records.front().end());
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != records.front().size()) {
      throw Error(ErrorCode::kParse, "fact CSV '" + table.name + "' line " +
                                         std::to_string(r + 1) + ": expected " +
                                         std::to_string(records.front().size()) + " fields");
    }
    FactRow row{rec[0], {}};
    for (std::size_t i = 0; i < table.measures.size(); ++i) {
      try {
        row.measures[table.measures[i]] = parse_number(rec[i + 1]);
      } catch (const Error& e) {
        throw Error(ErrorCode::kParse, "fact CSV '" + table.name + "' line " +
                                           std::to_string(r + 1) + ": " + e.what());
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace innotree
