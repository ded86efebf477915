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

#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>

#include "fixtures.hpp"
#include "innotree/api.hpp"
#include "innotree/cli.hpp"

namespace innotree {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "innotree");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kConfig = (testing::kExampleDir / "config.json").string();

TEST(Cli, ValidateExample) {
  const auto r = cli({"validate", "--config", kConfig});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "ok\n");
}

TEST(Cli, ValidateFindingsExitOne) {
  testing::TempDir dir;
  testing::copy_example(dir / "data");
  {
    auto text = testing::slurp(dir / "data" / "reports.json");
    text.replace(text.find("\"level\": \"objective\""), 20, "\"level\": \"galaxy\"   ");
    std::ofstream(dir / "data" / "reports.json") << text;
  }
  const auto r = cli({"validate", "--config", (dir / "data" / "config.json").string()});
  EXPECT_EQ(r.code, kExitFindings);
  EXPECT_NE(r.err.find("unknown-level"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({"enumerate", "--config", kConfig}).code, kExitUsage);
  EXPECT_EQ(cli({"enumerate", "--config", kConfig, "--limit", "0"}).code, kExitUsage);
  EXPECT_EQ(cli({"teleport"}).code, kExitUsage);
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"report", "--config", kConfig}).code, kExitUsage);
  EXPECT_EQ(cli({"validate", "--config", "/nonexistent.json"}).code, kExitUsage);
}

TEST(Cli, EnumerateListsRankedVariants) {
  const auto r = cli({"enumerate", "--config", kConfig, "--limit", "20"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto body = nlohmann::json::parse(r.out);
  EXPECT_FALSE(body.at("truncated").get<bool>());
  EXPECT_FALSE(body.at("variants").empty());
  const auto truncated = cli({"enumerate", "--config", kConfig, "--limit", "1"});
  EXPECT_NE(truncated.err.find("showing first 1"), std::string::npos);
}

TEST(Cli, ScoreExitCodes) {
  EXPECT_EQ(cli({"score", "--config", kConfig, "--selection", "project,tech,tech_b,org,org_b"}).code, kExitOk);
  EXPECT_EQ(cli({"score", "--config", kConfig, "--selection", "project,tech"}).code, kExitFindings);
  EXPECT_EQ(cli({"score", "--config", kConfig, "--selection", "project,warp"}).code, kExitFindings);
}

TEST(Cli, UnknownStaticReportListsKnownIds) {
  const auto r = cli({"report", "--config", kConfig, "--static", "nope"});
  EXPECT_EQ(r.code, kExitFindings);
  EXPECT_NE(r.err.find("nope"), std::string::npos);
  for (const auto* id : {"budget_by_objective", "budget_by_class", "effort_by_leaf"})
    EXPECT_NE(r.err.find(id), std::string::npos) << id;
}

TEST(Cli, StaticReportMatchesHttpBytes) {
  const auto snap = load_snapshot(load_engine_config(kConfig), 1);
  for (const auto& def : snap->reports.statics) {
    const auto r = cli({"report", "--config", kConfig, "--static", def.id});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, api_static_report(*snap, def.id).body);
    EXPECT_EQ(r.out, testing::slurp(testing::kGoldenDir / (def.id + ".xml")));
  }
}

TEST(Cli, ReportAllWritesFiles) {
  testing::TempDir dir;
  const auto r = cli({"report", "--config", kConfig, "--all", "--out", dir.path().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "budget_by_objective.xml"));
  EXPECT_TRUE(std::filesystem::exists(dir / "hours_capability.csv"));
  EXPECT_EQ(r.out, "");
}

TEST(Cli, MineEmitsRules) {
  const auto r = cli({"mine", "--data", (testing::kExampleDir / "projects.csv").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("training accuracy"), std::string::npos);
  EXPECT_NE(r.out.find("label="), std::string::npos);
}

// The installed binary behaves like the in-process entry point.
TEST(Cli, BinaryExitCodes) {
  const auto run = [](const std::string& args) {
    const std::string cmd = "\"" + testing::kCliPath.string() + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  EXPECT_EQ(run("validate --config \"" + kConfig + "\""), 0);
  EXPECT_EQ(run("enumerate --config \"" + kConfig + "\""), 2);
  EXPECT_EQ(run("report --config \"" + kConfig + "\" --static nope"), 1);
}

}  // namespace
}  // namespace innotree
