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

#include "innotree/reporting.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "innotree/text.hpp"
#include "json_util.hpp"

namespace innotree {

using detail::json;

const StaticReportDef* ReportConfig::find_static(std::string_view id) const {
  for (const auto& d : statics)
    if (d.id == id) return &d;
  return nullptr;
}

const DynamicQueryDef* ReportConfig::find_dynamic(std::string_view id) const {
  for (const auto& d : dynamics)
    if (d.id == id) return &d;
  return nullptr;
}

std::vector<std::string> ReportConfig::static_ids() const {
  std::vector<std::string> out;
  for (const auto& d : statics) out.push_back(d.id);
  return out;
}

std::vector<std::string> ReportConfig::dynamic_ids() const {
  std::vector<std::string> out;
  for (const auto& d : dynamics) out.push_back(d.id);
  return out;
}

namespace {

bool is_xml_name(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!alpha(name.front())) return false;
  for (char c : name)
    if (!alpha(c) && !(c >= '0' && c <= '9') && c != '-' && c != '.') return false;
  if (name.size() >= 3) {
    std::string head(name.substr(0, 3));
    std::transform(head.begin(), head.end(), head.begin(), [](char c) { return c | 0x20; });
    if (head == "xml") return false;
  }
  return true;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string attributes(std::map<std::string, std::string> attrs) {
  std::string out;
  for (const auto& [name, value] : attrs) out += " " + name + "=\"" + xml_escape(value) + "\"";
  return out;
}

bool has_level(const DimensionHierarchy& dim, std::string_view level) {
  return std::find(dim.levels.begin(), dim.levels.end(), level) != dim.levels.end();
}

// Dimension a filter applies to; kBadReference if it cannot be resolved.
Dimension filter_dimension(const PivotFilter& filter, const DualStarSchema& s) {
  if (filter.dim) {
    s.dimension(*filter.dim).level_index(filter.level);
    return *filter.dim;
  }
  const bool in_goals = has_level(s.goals(), filter.level);
  const bool in_decisions = has_level(s.decisions(), filter.level);
  if (in_goals && in_decisions)
    throw Error(ErrorCode::kBadReference, "filter level '" + filter.level +
                                              "' exists in both dimensions; name the dim");
  if (!in_goals && !in_decisions)
    throw Error(ErrorCode::kBadReference, "unknown filter level '" + filter.level + "'");
  return in_goals ? Dimension::kGoals : Dimension::kDecisions;
}

void check_static(const StaticReportDef& def, const DualStarSchema& s, ValidationReport& out) {
  const std::string subject = "static:" + def.id;
  if (!is_xml_name(def.xml_root)) out.push_back({subject, "xml-root-invalid", def.xml_root});
  const auto& q = def.query;
  const auto& dim = s.dimension(q.dim);
  if (!has_level(dim, q.level)) out.push_back({subject, "unknown-level", q.level});
  const std::string table = q.table && !q.table->empty() ? *q.table : s.main();
  if (!s.facts().contains(table)) {
    out.push_back({subject, "unknown-table", table});
  } else {
    for (const auto& m : q.measures)
      if (!s.facts().at(table).has_measure(m)) out.push_back({subject, "unknown-measure", m});
  }
  if (q.measures.empty()) out.push_back({subject, "no-measures", ""});
  if (!q.aggs.empty() && q.aggs.size() != q.measures.size())
    out.push_back({subject, "aggregate-count", std::to_string(q.aggs.size())});
  std::set<std::string> seen;
  for (const auto& m : q.measures) {
    if (m == "member" || !is_xml_name(m)) out.push_back({subject, "measure-attribute-invalid", m});
    if (!seen.insert(m).second) out.push_back({subject, "measure-repeated", m});
  }
}

void check_dynamic(const DynamicQueryDef& def, const DualStarSchema& s, ValidationReport& out) {
  const std::string subject = "dynamic:" + def.id;
  if (!s.facts().contains(def.cube)) {
    out.push_back({subject, "unknown-cube", def.cube});
  } else if (!s.facts().at(def.cube).has_measure(def.measure)) {
    out.push_back({subject, "unknown-measure", def.measure});
  }
  if (!has_level(s.dimension(def.rows.dim), def.rows.level))
    out.push_back({subject, "unknown-level", "rows " + def.rows.level});
  if (!has_level(s.dimension(def.columns.dim), def.columns.level))
    out.push_back({subject, "unknown-level", "columns " + def.columns.level});
  if (def.rows == def.columns)
    out.push_back({subject, "degenerate-pivot", std::string(to_string(def.rows.dim)) + "/" + def.rows.level});
  if (def.filter) {
    try {
      filter_dimension(*def.filter, s);
    } catch (const Error& e) {
      out.push_back({subject, "filter-invalid", e.what()});
    }
  }
}

}  // namespace

ValidationReport validate_report_config(const ReportConfig& cfg, const DualStarSchema& s) {
  ValidationReport out;
  if (cfg.statics.size() > kMaxStaticReports) {
    out.push_back({"statics", "statics-exceed-10",
                   std::to_string(cfg.statics.size()) + " static reports; should not exceed ten"});
  }
  if (cfg.dynamics.size() > kMaxDynamicReports) {
    out.push_back({"dynamics", "dynamics-exceed-15",
                   std::to_string(cfg.dynamics.size()) + " dynamic patterns; should not exceed 15"});
  }
  std::map<std::string, std::size_t> per_cube;
  for (const auto& d : cfg.dynamics) ++per_cube[d.cube];
  for (const auto& [cube, n] : per_cube) {
    if (n > kMaxDynamicPerCube) {
      out.push_back({"cube:" + cube, "cube-patterns-exceed-5",
                     std::to_string(n) + " dynamic patterns on cube '" + cube +
                         "'; should not exceed 5 per cube"});
    }
  }

  std::set<std::string> ids;
  for (const auto& d : cfg.statics) {
    if (d.id.empty()) out.push_back({"static:", "empty-id", ""});
    if (!ids.insert(d.id).second) out.push_back({"static:" + d.id, "duplicate-id", ""});
    check_static(d, s, out);
  }
  ids.clear();
  for (const auto& d : cfg.dynamics) {
    if (d.id.empty()) out.push_back({"dynamic:", "empty-id", ""});
    if (!ids.insert(d.id).second) out.push_back({"dynamic:" + d.id, "duplicate-id", ""});
    check_dynamic(d, s, out);
  }
  normalize(out);
  return out;
}

std::string render_static(const StaticReportDef& def, const DualStarSchema& s) {
  ValidationReport problems;
  check_static(def, s, problems);
  if (!problems.empty())
    throw Error(ErrorCode::kInvalidArgument,
                "static report '" + def.id + "': " + format_violation(problems.front()));
  RollupGrid grid;
  try {
    grid = rollup(s, def.query);
  } catch (const Error& e) {
    throw Error(e.code(), "static report '" + def.id + "': " + e.what());
  }

  std::vector<std::string> aggs;
  for (auto a : grid.aggs) aggs.emplace_back(to_string(a));
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<" + def.xml_root +
         attributes({{"aggregates", join(aggs, ",")},
                     {"dim", std::string(to_string(grid.dim))},
                     {"id", def.id},
                     {"level", grid.level},
                     {"measures", join(grid.measures, ",")},
                     {"table", grid.table},
                     {"title", def.title}}) +
         ">\n";
  for (const auto& g : grid.groups) {
    std::map<std::string, std::string> attrs{{"member", g.member}};
    for (std::size_t i = 0; i < grid.measures.size(); ++i)
      attrs[grid.measures[i]] = format_number(g.values[i]);
    out += "  <row" + attributes(std::move(attrs)) + "/>\n";
  }
  out += "</" + def.xml_root + ">\n";
  return out;
}

PivotGrid pivot(const DynamicQueryDef& def, const DualStarSchema& s) {
  if (def.rows == def.columns) {
    throw Error(ErrorCode::kDegeneratePivot,
                "pivot '" + def.id + "': rows and columns both use " +
                    std::string(to_string(def.rows.dim)) + "/" + def.rows.level);
  }
  const FactTable& table = s.table(def.cube);
  if (!table.has_measure(def.measure))
    throw Error(ErrorCode::kBadReference, "pivot '" + def.id + "': unknown measure '" +
                                              def.measure + "' in cube '" + def.cube + "'");
  const auto& row_dim = s.dimension(def.rows.dim);
  const auto& col_dim = s.dimension(def.columns.dim);
  const std::size_t row_level = row_dim.level_index(def.rows.level);
  const std::size_t col_level = col_dim.level_index(def.columns.level);

  const DimensionHierarchy* filter_dim = nullptr;
  std::size_t filter_level = 0;
  if (def.filter) {
    filter_dim = &s.dimension(filter_dimension(*def.filter, s));
    filter_level = filter_dim->level_index(def.filter->level);
  }

  struct Cell {
    double acc = 0.0;
    std::size_t count = 0;
  };
  std::map<std::pair<std::string, std::string>, Cell> cells;
  std::set<std::string> row_members, col_members;
  for (const auto& row : table.rows) {
    if (filter_dim && filter_dim->member(row.leaf_id, filter_level) != def.filter->member) continue;
    const auto& r = row_dim.member(row.leaf_id, row_level);
    const auto& c = col_dim.member(row.leaf_id, col_level);
    row_members.insert(r);
    col_members.insert(c);
    const double v = row.measures.at(def.measure);
    Cell& cell = cells[{r, c}];
    if (cell.count == 0) {
      cell.acc = v;
    } else {
      switch (def.agg) {
        case MeasureAgg::kSum:
        case MeasureAgg::kMean: cell.acc += v; break;
        case MeasureAgg::kMin: cell.acc = std::min(cell.acc, v); break;
        case MeasureAgg::kMax: cell.acc = std::max(cell.acc, v); break;
      }
    }
    ++cell.count;
  }

  PivotGrid grid;
  grid.row_members.assign(row_members.begin(), row_members.end());
  grid.column_members.assign(col_members.begin(), col_members.end());
  for (const auto& r : grid.row_members) {
    auto& line = grid.cells.emplace_back();
    for (const auto& c : grid.column_members) {
      auto it = cells.find({r, c});
      if (it == cells.end()) {
        line.emplace_back();
      } else if (def.agg == MeasureAgg::kMean) {
        line.emplace_back(it->second.acc / static_cast<double>(it->second.count));
      } else {
        line.emplace_back(it->second.acc);
      }
    }
  }
  return grid;
}

std::string pivot_csv(const DynamicQueryDef& def, const PivotGrid& grid) {
  std::vector<std::string> header{def.rows.level};
  header.insert(header.end(), grid.column_members.begin(), grid.column_members.end());
  std::string out = csv::row(header);
  for (std::size_t r = 0; r < grid.row_members.size(); ++r) {
    std::vector<std::string> fields{grid.row_members[r]};
    for (const auto& cell : grid.cells[r]) fields.push_back(cell ? format_number(*cell) : "");
    out += csv::row(fields);
  }
  return out;
}

std::string run_dynamic(const DynamicQueryDef& def, const DualStarSchema& s) {
  return pivot_csv(def, pivot(def, s));
}

// ---------------------------------------------------------------------------
// Config file

namespace {

RollupQuery parse_query(const json& j, const std::string& what) {
  detail::require_keys(j, {"dim", "level", "measures", "agg", "table"}, what);
  RollupQuery q;
  q.dim = parse_dimension(detail::get_string(j, "dim", what));
  q.level = detail::get_string(j, "level", what);
  for (const auto& m : detail::field(j, "measures", what))
    q.measures.push_back(detail::as_string(m, what + ".measures"));
  if (j.contains("agg")) {
    const auto& agg = j.at("agg");
    if (agg.is_string()) {
      q.aggs.assign(q.measures.size(), parse_measure_agg(agg.get<std::string>()));
    } else {
      for (const auto& a : agg) q.aggs.push_back(parse_measure_agg(detail::as_string(a, what + ".agg")));
    }
  }
  if (j.contains("table") && !j.at("table").is_null())
    q.table = detail::as_string(j.at("table"), what + ".table");
  return q;
}

PivotAxis parse_axis(const json& j, const std::string& what) {
  detail::require_keys(j, {"dim", "level"}, what);
  return {parse_dimension(detail::get_string(j, "dim", what)), detail::get_string(j, "level", what)};
}

json axis_json(const PivotAxis& a) { return {{"dim", to_string(a.dim)}, {"level", a.level}}; }

}  // namespace

ReportConfig parse_report_config(std::string_view text) {
  const json j = detail::parse_json(text, "reports");
  detail::require_keys(j, {"statics", "dynamics"}, "reports");
  ReportConfig cfg;
  if (j.contains("statics")) {
    for (const auto& s : j.at("statics")) {
      detail::require_keys(s, {"id", "title", "query", "xml_root"}, "statics[]");
      StaticReportDef def;
      def.id = detail::get_string(s, "id", "statics[]");
      const std::string what = "statics." + def.id;
      if (s.contains("title")) def.title = detail::as_string(s.at("title"), what + ".title");
      def.query = parse_query(detail::field(s, "query", what), what + ".query");
      if (s.contains("xml_root")) def.xml_root = detail::as_string(s.at("xml_root"), what + ".xml_root");
      cfg.statics.push_back(std::move(def));
    }
  }
  if (j.contains("dynamics")) {
    for (const auto& d : j.at("dynamics")) {
      detail::require_keys(d, {"id", "cube", "rows", "columns", "measure", "agg", "filter"}, "dynamics[]");
      DynamicQueryDef def;
      def.id = detail::get_string(d, "id", "dynamics[]");
      const std::string what = "dynamics." + def.id;
      def.cube = detail::get_string(d, "cube", what);
      def.rows = parse_axis(detail::field(d, "rows", what), what + ".rows");
      def.columns = parse_axis(detail::field(d, "columns", what), what + ".columns");
      def.measure = detail::get_string(d, "measure", what);
      if (d.contains("agg")) def.agg = parse_measure_agg(detail::as_string(d.at("agg"), what + ".agg"));
      if (d.contains("filter") && !d.at("filter").is_null()) {
        const auto& f = d.at("filter");
        detail::require_keys(f, {"dim", "level", "member"}, what + ".filter");
        PivotFilter filter;
        if (f.contains("dim")) filter.dim = parse_dimension(detail::as_string(f.at("dim"), what + ".filter.dim"));
        filter.level = detail::get_string(f, "level", what + ".filter");
        filter.member = detail::get_string(f, "member", what + ".filter");
        def.filter = std::move(filter);
      }
      cfg.dynamics.push_back(std::move(def));
    }
  }
  return cfg;
}

ReportConfig load_report_config(const std::filesystem::path& path) {
  return parse_report_config(detail::read_file(path));
}

std::string dump_report_config(const ReportConfig& cfg) {
  json statics = json::array();
  for (const auto& s : cfg.statics) {
    json aggs = json::array();
    for (auto a : s.query.aggs) aggs.push_back(to_string(a));
    json query = {{"dim", to_string(s.query.dim)},
                  {"level", s.query.level},
                  {"measures", s.query.measures},
                  {"agg", aggs}};
    if (s.query.table) query["table"] = *s.query.table;
    statics.push_back({{"id", s.id}, {"title", s.title}, {"query", query}, {"xml_root", s.xml_root}});
  }
  json dynamics = json::array();
  for (const auto& d : cfg.dynamics) {
    json entry = {{"id", d.id},
                  {"cube", d.cube},
                  {"rows", axis_json(d.rows)},
                  {"columns", axis_json(d.columns)},
                  {"measure", d.measure},
                  {"agg", to_string(d.agg)}};
    if (d.filter) {
      json f = {{"level", d.filter->level}, {"member", d.filter->member}};
      if (d.filter->dim) f["dim"] = to_string(*d.filter->dim);
      entry["filter"] = f;
    }
    dynamics.push_back(entry);
  }
  return json{{"statics", statics}, {"dynamics", dynamics}}.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_all_reports(const ReportConfig& cfg,
                                                     const DualStarSchema& s,
                                                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (const auto& def : cfg.statics) {
    auto path = out_dir / (def.id + ".xml");
    detail::write_file(path, render_static(def, s));
    written.push_back(path);
  }
  for (const auto& def : cfg.dynamics) {
    auto path = out_dir / (def.id + ".csv");
    detail::write_file(path, run_dynamic(def, s));
    written.push_back(path);
  }
  return written;
}

}  // namespace innotree
