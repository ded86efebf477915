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

#include "innotree/io.hpp"

#include "json_util.hpp"

namespace innotree {

using detail::json;

namespace {

HierarchyNode parse_node(const json& j) {
  detail::require_keys(j, {"id", "label", "kind", "connector", "children", "group_id", "characteristics"},
                       "hierarchy.nodes[]");
  HierarchyNode node;
  node.id = detail::get_string(j, "id", "hierarchy.nodes[]");
  const std::string what = "node " + node.id;
  if (node.id.empty()) throw Error(ErrorCode::kParse, "hierarchy.nodes[]: empty id");
  if (j.contains("label")) node.label = detail::as_string(j.at("label"), what + ".label");
  node.kind = parse_node_kind(detail::get_string(j, "kind", what));
  node.connector = j.contains("connector")
                       ? parse_connector(detail::as_string(j.at("connector"), what + ".connector"))
                       : Connector::kNone;
  if (j.contains("children")) {
    for (const auto& c : j.at("children")) node.children.push_back(detail::as_string(c, what + ".children"));
  }
  if (j.contains("group_id")) node.group_id = detail::as_string(j.at("group_id"), what + ".group_id");
  if (j.contains("characteristics") && !j.at("characteristics").is_null())
    node.characteristics = detail::as_string(j.at("characteristics"), what + ".characteristics");
  return node;
}

CharacteristicValue parse_value(const json& j, const std::string& what) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    Series s;
    for (const auto& p : j) {
      if (!p.is_array() || p.size() != 2)
        throw Error(ErrorCode::kParse, what + ": series samples are [parameter, value] pairs");
      s.points.emplace_back(detail::as_number(p[0], what), detail::as_number(p[1], what));
    }
    return s;
  }
  throw Error(ErrorCode::kParse, what + ": unsupported value");
}

json value_json(const CharacteristicValue& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Series>) {
          json arr = json::array();
          for (const auto& [p, val] : x.points) arr.push_back({p, val});
          return arr;
        } else {
          return x;
        }
      },
      v);
}

ConstraintSet parse_constraints(const json& j) {
  detail::require_keys(j, {"payback_limit", "expenditure_ceiling", "bounds"}, "constraints");
  ConstraintSet cs;
  if (j.contains("payback_limit") && !j.at("payback_limit").is_null())
    cs.payback_limit = detail::as_number(j.at("payback_limit"), "constraints.payback_limit");
  if (j.contains("expenditure_ceiling") && !j.at("expenditure_ceiling").is_null())
    cs.expenditure_ceiling = detail::as_number(j.at("expenditure_ceiling"), "constraints.expenditure_ceiling");
  if (j.contains("bounds")) {
    for (const auto& b : j.at("bounds")) {
      detail::require_keys(b, {"attribute", "comparator", "threshold"}, "constraints.bounds[]");
      cs.bounds.push_back({detail::get_string(b, "attribute", "constraints.bounds[]"),
                           parse_comparator(detail::get_string(b, "comparator", "constraints.bounds[]")),
                           detail::get_number(b, "threshold", "constraints.bounds[]")});
    }
  }
  return cs;
}

}  // namespace

ProjectModel parse_model(std::string_view text) {
  const json j = detail::parse_json(text, "model");
  detail::require_keys(j, {"hierarchy", "schemas", "tables", "constraints", "bindings", "scoring"}, "model");
  ProjectModel model;
  auto& h = model.hierarchy;

  const auto& hj = detail::field(j, "hierarchy", "model");
  detail::require_keys(hj, {"root_id", "nodes"}, "hierarchy");
  h.root_id = detail::get_string(hj, "root_id", "hierarchy");
  for (const auto& n : detail::field(hj, "nodes", "hierarchy")) {
    HierarchyNode node = parse_node(n);
    const std::string id = node.id;
    if (!h.nodes.emplace(id, std::move(node)).second)
      throw Error(ErrorCode::kParse, "hierarchy: duplicate node id '" + id + "'");
  }

  if (j.contains("schemas")) {
    for (const auto& s : j.at("schemas")) {
      detail::require_keys(s, {"group_id", "attributes"}, "schemas[]");
      CharacteristicSchema schema;
      schema.group_id = detail::get_string(s, "group_id", "schemas[]");
      const std::string what = "schema " + schema.group_id;
      for (const auto& a : detail::field(s, "attributes", what)) {
        detail::require_keys(a, {"name", "value_kind", "unit", "aggregation"}, what + ".attributes[]");
        AttributeDef attr;
        attr.name = detail::get_string(a, "name", what + ".attributes[]");
        attr.type = parse_value_type(detail::get_string(a, "value_kind", what + "." + attr.name));
        if (a.contains("unit")) attr.unit = detail::as_string(a.at("unit"), what + "." + attr.name + ".unit");
        if (a.contains("aggregation"))
          attr.aggregation = parse_aggregation(detail::as_string(a.at("aggregation"), what + "." + attr.name));
        schema.attributes.push_back(std::move(attr));
      }
      const std::string key = schema.group_id;
      if (!h.schemas.emplace(key, std::move(schema)).second)
        throw Error(ErrorCode::kParse, "schemas: duplicate group_id '" + key + "'");
    }
  }

  if (j.contains("tables")) {
    for (const auto& t : j.at("tables")) {
      detail::require_keys(t, {"node_id", "values"}, "tables[]");
      CharacteristicTable table;
      table.node_id = detail::get_string(t, "node_id", "tables[]");
      const auto& values = detail::field(t, "values", "table " + table.node_id);
      if (!values.is_object()) throw Error(ErrorCode::kParse, "table " + table.node_id + ": values must be an object");
      for (const auto& [name, v] : values.items())
        table.values.emplace(name, parse_value(v, "table " + table.node_id + "." + name));
      const std::string key = table.node_id;
      if (!h.tables.emplace(key, std::move(table)).second)
        throw Error(ErrorCode::kParse, "tables: duplicate node_id '" + key + "'");
    }
  }
  // A node without an explicit reference picks up the table keyed by its id.
  for (auto& [id, node] : h.nodes)
    if (!node.characteristics && h.tables.contains(id)) node.characteristics = id;

  if (j.contains("constraints")) model.constraints = parse_constraints(j.at("constraints"));

  if (j.contains("bindings")) {
    for (const auto& b : j.at("bindings")) {
      detail::require_keys(b, {"symbol", "node_id", "attribute", "comparator", "threshold"}, "bindings[]");
      model.bindings.push_back({detail::get_string(b, "symbol", "bindings[]"),
                                detail::get_string(b, "node_id", "bindings[]"),
                                detail::get_string(b, "attribute", "bindings[]"),
                                parse_comparator(detail::get_string(b, "comparator", "bindings[]")),
                                detail::get_number(b, "threshold", "bindings[]")});
    }
  }

  if (j.contains("scoring")) {
    const auto& s = j.at("scoring");
    detail::require_keys(s, {"weights", "direction"}, "scoring");
    if (s.contains("weights")) {
      for (const auto& [name, w] : s.at("weights").items())
        model.scoring.weights[name] = detail::as_number(w, "scoring.weights." + name);
    }
    if (s.contains("direction"))
      model.scoring.direction = parse_direction(detail::as_string(s.at("direction"), "scoring.direction"));
  }
  return model;
}

ProjectModel load_model(const std::filesystem::path& path) {
  return parse_model(detail::read_file(path));
}

json model_to_json(const ProjectModel& model) {
  const auto& h = model.hierarchy;
  json nodes = json::array();
  for (const auto& [id, n] : h.nodes) {
    json node = {{"id", n.id},
                 {"label", n.label},
                 {"kind", to_string(n.kind)},
                 {"connector", to_string(n.connector)},
                 {"children", n.children},
                 {"group_id", n.group_id}};
    node["characteristics"] = n.characteristics ? json(*n.characteristics) : json(nullptr);
    nodes.push_back(std::move(node));
  }
  json schemas = json::array();
  for (const auto& [group, s] : h.schemas) {
    json attrs = json::array();
    for (const auto& a : s.attributes) {
      json attr = {{"name", a.name},
                   {"value_kind", to_string(a.type)},
                   {"aggregation", to_string(a.aggregation)}};
      if (a.type == ValueType::kNumeric) attr["unit"] = a.unit;
      attrs.push_back(std::move(attr));
    }
    schemas.push_back({{"group_id", group}, {"attributes", attrs}});
  }
  json tables = json::array();
  for (const auto& [key, t] : h.tables) {
    json values = json::object();
    for (const auto& [name, v] : t.values) values[name] = value_json(v);
    tables.push_back({{"node_id", t.node_id}, {"values", values}});
  }
  json constraints = json::object();
  constraints["payback_limit"] = model.constraints.payback_limit ? json(*model.constraints.payback_limit) : json(nullptr);
  constraints["expenditure_ceiling"] =
      model.constraints.expenditure_ceiling ? json(*model.constraints.expenditure_ceiling) : json(nullptr);
  json bounds = json::array();
  for (const auto& b : model.constraints.bounds)
    bounds.push_back({{"attribute", b.attribute}, {"comparator", to_string(b.comparator)}, {"threshold", b.threshold}});
  constraints["bounds"] = bounds;
  json bindings = json::array();
  for (const auto& b : model.bindings) {
    bindings.push_back({{"symbol", b.symbol},
                        {"node_id", b.node_id},
                        {"attribute", b.attribute},
                        {"comparator", to_string(b.comparator)},
                        {"threshold", b.threshold}});
  }
  return {{"hierarchy", {{"root_id", h.root_id}, {"nodes", nodes}}},
          {"schemas", schemas},
          {"tables", tables},
          {"constraints", constraints},
          {"bindings", bindings},
          {"scoring", {{"weights", model.scoring.weights}, {"direction", to_string(model.scoring.direction)}}}};
}

ValidationReport validate_model(const ProjectModel& model) {
  ValidationReport out = validate_hierarchy(model.hierarchy);
  auto more = validate_constraints(model.hierarchy, model.constraints);
  out.insert(out.end(), more.begin(), more.end());
  more = validate_bindings(model.hierarchy, model.bindings);
  out.insert(out.end(), more.begin(), more.end());
  for (const auto& [name, w] : model.scoring.weights) {
    const auto* attr = find_attribute(model.hierarchy, name);
    if (attr == nullptr) {
      out.push_back({name, "weight-attribute-unknown", ""});
    } else if (attr->type != ValueType::kNumeric) {
      out.push_back({name, "weight-attribute-not-numeric", std::string(to_string(attr->type))});
    }
  }
  normalize(out);
  return out;
}

RuleBase parse_rules(std::string_view text) {
  const json j = detail::parse_json(text, "rules");
  if (!j.is_array()) throw Error(ErrorCode::kParse, "rules: expected a list");
  std::vector<ProductionRule> rules;
  for (const auto& r : j) {
    detail::require_keys(r, {"id", "if", "then"}, "rules[]");
    ProductionRule rule;
    rule.id = detail::get_string(r, "id", "rules[]");
    const auto& antecedents = detail::field(r, "if", "rule " + rule.id);
    if (!antecedents.is_array()) throw Error(ErrorCode::kParse, "rule " + rule.id + ": 'if' must be a list");
    for (const auto& a : antecedents) rule.antecedents.emplace_back(detail::as_string(a, "rule " + rule.id + ".if"));
    rule.consequent = Fact(detail::get_string(r, "then", "rule " + rule.id));
    rules.push_back(std::move(rule));
  }
  return RuleBase(std::move(rules));
}

RuleBase load_rules(const std::filesystem::path& path) { return parse_rules(detail::read_file(path)); }

std::string dump_rules(const RuleBase& rules) {
  json out = json::array();
  for (const auto& r : rules.rules()) {
    json antecedents = json::array();
    for (const auto& a : r.antecedents) antecedents.push_back(a.symbol);
    out.push_back({{"id", r.id}, {"if", antecedents}, {"then", r.consequent.symbol}});
  }
  return out.dump(2) + "\n";
}

json to_json(const ValidationReport& report) {
  json out = json::array();
  for (const auto& v : report) out.push_back({{"subject", v.subject}, {"rule", v.rule}, {"detail", v.detail}});
  return out;
}

json to_json(const Score& score) {
  return {{"per_attribute", score.per_attribute}, {"total", score.total}};
}

json to_json(const Firing& firing) {
  json antecedents = json::array();
  for (const auto& a : firing.antecedents) antecedents.push_back(a.symbol);
  return {{"rule", firing.rule_id}, {"fact", firing.derived.symbol}, {"antecedents", antecedents}};
}

json to_json(const ChainResult& result) {
  json trace = json::array();
  for (const auto& f : result.trace) trace.push_back(to_json(f));
  return {{"closure", symbols_of(result.closure)}, {"trace", trace}};
}

json to_json(const Derivation& d) {
  json premises = json::array();
  for (const auto& p : d.premises) premises.push_back(to_json(p));
  return {{"fact", d.fact.symbol}, {"rule", d.rule_id ? json(*d.rule_id) : json(nullptr)}, {"premises", premises}};
}

json variants_to_json(const EnumerationResult& result, const std::vector<Score>& scores,
                      const std::vector<std::size_t>& order, Direction direction) {
  json variants = json::array();
  std::size_t position = 1;
  for (auto i : order) {
    const auto& c = result.configurations.at(i);
    variants.push_back({{"rank", position++},
                        {"selected", std::vector<std::string>(c.selected.begin(), c.selected.end())},
                        {"derived", symbols_of(c.derived)},
                        {"score", to_json(scores.at(i))}});
  }
  return {{"truncated", result.truncated}, {"direction", to_string(direction)}, {"variants", variants}};
}

}  // namespace innotree
