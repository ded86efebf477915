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

#include "innotree/cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <sstream>

#include "innotree/api.hpp"
#include "innotree/text.hpp"
#include "json_util.hpp"

namespace innotree {

namespace {

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

struct Options {
  std::string config;
  std::string out_dir;
  std::size_t limit = 0;
  std::string selection;
  std::optional<double> param;
  std::string static_id;
  std::string pivot_id;
  bool all_reports = false;
  std::string data;
  std::optional<std::size_t> max_depth;
  std::size_t min_rows = 1;
  int port = 8080;
  std::string host = "127.0.0.1";
};

// Writes `content` to <out_dir>/<name> when --out is given, else to `out`.
void emit(const Options& o, const std::string& name, const std::string& content, std::ostream& out,
          std::ostream& err) {
  if (o.out_dir.empty()) {
    out << content;
    return;
  }
  std::filesystem::create_directories(o.out_dir);
  const auto path = std::filesystem::path(o.out_dir) / name;
  detail::write_file(path, content);
  err << "wrote " << path.string() << "\n";
}

// Unreadable input files count as usage errors.
std::shared_ptr<const EngineSnapshot> open(const Options& o) {
  try {
    return load_snapshot(load_engine_config(o.config), 1);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNotFound) throw Error(ErrorCode::kParse, e.what());
    throw;
  }
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  auto snapshot = open(o);
  const auto report = validate_snapshot(*snapshot);
  for (const auto& v : report) err << format_violation(v) << "\n";
  if (!report.empty()) {
    err << report.size() << " finding(s)\n";
    return kExitFindings;
  }
  out << "ok\n";
  return kExitOk;
}

int cmd_enumerate(const Options& o, std::ostream& out, std::ostream& err) {
  auto snapshot = open(o);
  auto listing = list_variants(*snapshot, o.limit, o.param);
  if (listing.at("truncated").get<bool>()) err << "showing first " << o.limit << " variants\n";
  emit(o, "variants.json", listing.dump(2) + "\n", out, err);
  return kExitOk;
}

int cmd_score(const Options& o, std::ostream& out, std::ostream& err) {
  auto snapshot = open(o);
  Selection selection;
  std::stringstream ss(o.selection);
  for (std::string id; std::getline(ss, id, ',');)
    if (!id.empty()) selection.insert(id);
  auto result = evaluate_whatif(*snapshot, selection, o.param);
  emit(o, "score.json", result.dump(2) + "\n", out, err);
  return result.at("admissible").get<bool>() && result.at("violated_constraints").empty() ? kExitOk
                                                                                         : kExitFindings;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream& err) {
  auto snapshot = open(o);
  const auto& reports = snapshot->reports;
  if (o.all_reports) {
    if (o.out_dir.empty()) {
      err << "report --all needs --out\n";
      return kExitUsage;
    }
    for (const auto& p : write_all_reports(reports, snapshot->schema, o.out_dir))
      err << "wrote " << p.string() << "\n";
    return kExitOk;
  }
  if (!o.static_id.empty()) {
    const auto* def = reports.find_static(o.static_id);
    if (def == nullptr) {
      err << "unknown static report '" << o.static_id << "'; known: " << join(reports.static_ids(), ", ") << "\n";
      return kExitFindings;
    }
    emit(o, def->id + ".xml", render_static(*def, snapshot->schema), out, err);
    return kExitOk;
  }
  const auto* def = reports.find_dynamic(o.pivot_id);
  if (def == nullptr) {
    err << "unknown pivot report '" << o.pivot_id << "'; known: " << join(reports.dynamic_ids(), ", ") << "\n";
    return kExitFindings;
  }
  emit(o, def->id + ".csv", run_dynamic(*def, snapshot->schema), out, err);
  return kExitOk;
}

int cmd_mine(const Options& o, std::ostream& out, std::ostream& err) {
  const auto dataset = parse_dataset_csv(detail::read_file(o.data));
  const auto tree = induce(dataset, {o.max_depth, o.min_rows});
  std::size_t correct = 0;
  for (const auto& row : dataset.rows)
    if (classify(tree, row) == row.label) ++correct;
  err << "rows " << dataset.rows.size() << ", leaves " << tree.leaf_count() << ", depth " << tree.depth()
      << ", training accuracy " << correct << "/" << dataset.rows.size() << "\n";
  emit(o, "rules.json", dump_rules(tree_to_rules(tree)), out, err);
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream&, std::ostream& err) {
  Engine engine(load_engine_config(o.config));
  HttpServer server(engine);
  const int port = server.bind(o.host, o.port);
  if (port < 0) {
    err << "cannot bind " << o.host << ":" << o.port << "\n";
    return kExitFindings;
  }
  err << "listening on http://" << o.host << ":" << port << " (version "
      << engine.snapshot()->version << ")\n";
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"innotree: decision-support engine for innovation projects"};
  app.require_subcommand(1);
  Options o;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "engine config file (JSON)")->required();
  };

  auto* validate = app.add_subcommand("validate", "check the model and report config");
  add_config(validate);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list admissible variants, ranked");
  add_config(enumerate_cmd);
  enumerate_cmd->add_option("--limit", o.limit, "maximum number of variants")
      ->required()
      ->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--param", o.param, "parameter for series-valued attributes");
  enumerate_cmd->add_option("--out", o.out_dir, "output directory");

  auto* score_cmd = app.add_subcommand("score", "evaluate one selection (what-if)");
  add_config(score_cmd);
  score_cmd->add_option("--selection", o.selection, "comma separated node ids")->required();
  score_cmd->add_option("--param", o.param, "parameter for series-valued attributes");
  score_cmd->add_option("--out", o.out_dir, "output directory");

  auto* report = app.add_subcommand("report", "render a static or pivot report");
  add_config(report);
  auto* st = report->add_option("--static", o.static_id, "static report id");
  auto* pv = report->add_option("--pivot", o.pivot_id, "pivot report id");
  auto* all = report->add_flag("--all", o.all_reports, "write every report into --out");
  st->excludes(pv)->excludes(all);
  pv->excludes(all);
  report->add_option("--out", o.out_dir, "output directory");

  auto* mine = app.add_subcommand("mine", "induce a decision tree and emit production rules");
  mine->add_option("--data", o.data, "labelled CSV, last column is the label")->required();
  mine->add_option("--max-depth", o.max_depth, "maximum number of tests on a path");
  mine->add_option("--min-rows", o.min_rows, "minimum rows to split a node");
  mine->add_option("--out", o.out_dir, "output directory");

  auto* serve = app.add_subcommand("serve", "run the HTTP API");
  add_config(serve);
  serve->add_option("--port", o.port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", o.host, "bind address");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (report->parsed() && o.static_id.empty() && o.pivot_id.empty() && !o.all_reports) {
    err << "report needs --static <id>, --pivot <id> or --all\n";
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (enumerate_cmd->parsed()) return cmd_enumerate(o, out, err);
    if (score_cmd->parsed()) return cmd_score(o, out, err);
    if (report->parsed()) return cmd_report(o, out, err);
    if (mine->parsed()) return cmd_mine(o, out, err);
    if (serve->parsed()) return cmd_serve(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const bool input_problem = e.code() == ErrorCode::kParse || e.code() == ErrorCode::kIntegrity;
    return input_problem ? kExitUsage : kExitFindings;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFindings;
  }
  return kExitUsage;
}

}  // namespace innotree
