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

#include "innotree/engine.hpp"

#include <cstdlib>

#include "json_util.hpp"

namespace innotree {

using detail::json;

EngineConfig load_engine_config(const std::filesystem::path& path) {
  const json j = detail::parse_json(detail::read_file(path), path.string());
  detail::require_keys(j, {"model", "schema", "rules", "reports", "data_dir"}, "config");

  std::filesystem::path base = path.parent_path();
  if (j.contains("data_dir")) {
    std::filesystem::path dir = detail::as_string(j.at("data_dir"), "config.data_dir");
    base = dir.is_relative() ? base / dir : dir;
  }
  if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env != '\0') base = env;

  auto resolve = [&](std::string_view key, bool required) -> std::filesystem::path {
    if (!j.contains(std::string(key))) {
      if (required) throw Error(ErrorCode::kParse, "config: missing key '" + std::string(key) + "'");
      return {};
    }
    std::filesystem::path p = detail::as_string(j.at(std::string(key)), "config." + std::string(key));
    return p.is_relative() ? base / p : p;
  };
  return {resolve("model", true), resolve("schema", true), resolve("rules", false),
          resolve("reports", false)};
}

std::shared_ptr<const EngineSnapshot> load_snapshot(const EngineConfig& cfg, std::uint64_t version) {
  auto with_file = [](const std::filesystem::path& p, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      throw Error(e.code(), p.string() + ": " + e.what());
    }
  };
  auto model = with_file(cfg.model, [&] { return load_model(cfg.model); });
  auto schema = with_file(cfg.schema, [&] { return load_schema(cfg.schema); });
  RuleBase rules;
  if (!cfg.rules.empty()) rules = with_file(cfg.rules, [&] { return load_rules(cfg.rules); });
  ReportConfig reports;
  if (!cfg.reports.empty()) reports = with_file(cfg.reports, [&] { return load_report_config(cfg.reports); });
  return std::make_shared<const EngineSnapshot>(
      EngineSnapshot{std::move(model), std::move(rules), std::move(schema), std::move(reports), version});
}

ValidationReport validate_snapshot(const EngineSnapshot& snapshot) {
  ValidationReport out = validate_model(snapshot.model);
  auto reports = validate_report_config(snapshot.reports, snapshot.schema);
  out.insert(out.end(), reports.begin(), reports.end());
  for (const auto& [leaf, path] : snapshot.schema.goals().membership)
    if (snapshot.model.hierarchy.find(leaf) == nullptr)
      out.push_back({leaf, "star-leaf-unknown", "not a node of the hierarchy"});
  normalize(out);
  return out;
}

namespace {

std::string node_status(const DecisionHierarchy& h, const Selection& selection,
                        const std::set<NodeId>& violating, const std::map<NodeId, NodeId>& parents,
                        const NodeId& id) {
  if (selection.contains(id)) return violating.contains(id) ? "violating" : "selected";
  if (id == h.root_id) return "required";
  auto p = parents.find(id);
  if (p == parents.end() || !selection.contains(p->second)) return "inactive";
  return h.at(p->second).connector == Connector::kAnd ? "required" : "optional";
}

}  // namespace

json evaluate_whatif(const EngineSnapshot& snapshot, const Selection& selection,
                     std::optional<double> param) {
  const auto& h = snapshot.model.hierarchy;
  std::vector<std::string> unknown;
  for (const auto& id : selection)
    if (h.find(id) == nullptr) unknown.push_back(id);
  if (!unknown.empty()) {
    std::string list;
    for (const auto& id : unknown) list += (list.empty() ? "" : ", ") + id;
    throw Error(ErrorCode::kBadReference, "unknown node ids: " + list);
  }

  const auto violations = admissibility_violations(h, selection);
  const auto chained = forward_chain(snapshot.rules, ground_facts(h, selection, snapshot.model.bindings, param));
  const Score s = score(h, selection, snapshot.model.scoring.weights, param);
  const auto constraint_findings = constraint_violations(snapshot.model.constraints, s);

  std::set<NodeId> violating;
  for (const auto& v : violations)
    if (selection.contains(v.subject)) violating.insert(v.subject);
  const auto parents = h.parents();
  json status = json::object();
  for (const auto& [id, node] : h.nodes) status[id] = node_status(h, selection, violating, parents, id);

  json result = to_json(chained);
  return {{"version", snapshot.version},
          {"selection", std::vector<std::string>(selection.begin(), selection.end())},
          {"admissible", violations.empty()},
          {"violations", to_json(violations)},
          {"violated_constraints", to_json(constraint_findings)},
          {"derived_facts", result["closure"]},
          {"trace", result["trace"]},
          {"vetoed", chained.closure.contains(Fact(std::string(kInfeasibleFact)))},
          {"score", to_json(s)},
          {"node_status", status}};
}

json list_variants(const EngineSnapshot& snapshot, std::size_t limit, std::optional<double> param) {
  const auto& m = snapshot.model;
  auto result = enumerate(m.hierarchy, snapshot.rules, m.constraints, m.bindings, limit, param);
  std::vector<Score> scores;
  scores.reserve(result.configurations.size());
  for (const auto& c : result.configurations) scores.push_back(score(m.hierarchy, c.selected, m.scoring.weights, param));
  auto order = rank(result.configurations, scores, m.scoring.direction);
  json out = variants_to_json(result, scores, order, m.scoring.direction);
  out["version"] = snapshot.version;
  out["limit"] = limit;
  return out;
}

Engine::Engine(EngineConfig cfg) : cfg_(std::move(cfg)), current_(load_snapshot(cfg_, 1)) {}

std::shared_ptr<const EngineSnapshot> Engine::snapshot() const {
  std::lock_guard lock(mu_);
  return current_;
}

std::uint64_t Engine::reload() {
  std::lock_guard serial(reload_mu_);
  const std::uint64_t next = snapshot()->version + 1;
  auto fresh = load_snapshot(cfg_, next);
  std::lock_guard lock(mu_);
  current_ = std::move(fresh);
  return next;
}

}  // namespace innotree
