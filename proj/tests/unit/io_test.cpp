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

#include "fixtures.hpp"
#include "innotree/io.hpp"
#include "innotree/text.hpp"
#include "innotree/variants.hpp"

namespace innotree {
namespace {

const std::string kMinimal = R"({
  "hierarchy": {"root_id": "r", "nodes": [
    {"id": "r", "kind": "goal", "connector": "OR", "children": ["a", "b"], "group_id": "top"},
    {"id": "a", "kind": "leaf", "connector": "NONE", "group_id": "g"},
    {"id": "b", "kind": "leaf", "connector": "NONE", "group_id": "g"}]},
  "schemas": [{"group_id": "g", "attributes": [
    {"name": "cost", "value_kind": "numeric", "aggregation": "sum"},
    {"name": "payback", "value_kind": "numeric", "aggregation": "max"}]}],
  "tables": [
    {"node_id": "a", "values": {"cost": 5, "payback": [[0, 1], [10, 3]]}},
    {"node_id": "b", "values": {"cost": 7, "payback": 2}}],
  "constraints": {"expenditure_ceiling": 10}
})";

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kLimit;
}

TEST(ModelFile, ParsesMinimalDocument) {
  const auto m = parse_model(kMinimal);
  EXPECT_EQ(m.hierarchy.root_id, "r");
  EXPECT_EQ(m.hierarchy.nodes.at("a").characteristics, "a");
  EXPECT_EQ(m.constraints.expenditure_ceiling, 10);
  EXPECT_EQ(std::get<Series>(m.hierarchy.tables.at("a").values.at("payback")).points.size(), 2u);
  EXPECT_TRUE(validate_model(m).empty());
}

TEST(ModelFile, RoundTripsThroughJson) {
  for (const auto& m : {parse_model(kMinimal), load_model(testing::kExampleDir / "model.json")})
    EXPECT_EQ(parse_model(model_to_json(m).dump()), m);
}

TEST(ModelFile, RejectsUnknownAndDuplicateKeys) {
  auto extra = nlohmann::json::parse(kMinimal);
  extra["colour"] = "blue";
  EXPECT_EQ(code_of([&] { parse_model(extra.dump()); }), ErrorCode::kParse);
  auto node_extra = nlohmann::json::parse(kMinimal);
  node_extra["hierarchy"]["nodes"][1]["weight"] = 1;
  EXPECT_EQ(code_of([&] { parse_model(node_extra.dump()); }), ErrorCode::kParse);
  auto dup = nlohmann::json::parse(kMinimal);
  dup["hierarchy"]["nodes"].push_back(dup["hierarchy"]["nodes"][1]);
  EXPECT_EQ(code_of([&] { parse_model(dup.dump()); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_model("{\"hierarchy\": "); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { load_model("/nonexistent/model.json"); }), ErrorCode::kNotFound);
}

TEST(ModelFile, ExampleIsValid) {
  EXPECT_TRUE(validate_model(load_model(testing::kExampleDir / "model.json")).empty());
}

// The documented example must stay loadable.
std::vector<std::string> json_blocks(const std::string& markdown) {
  std::vector<std::string> out;
  const std::string open = "```json\n";
  for (auto at = markdown.find(open); at != std::string::npos; at = markdown.find(open, at)) {
    at += open.size();
    const auto end = markdown.find("```", at);
    out.push_back(markdown.substr(at, end - at));
    at = end;
  }
  return out;
}

TEST(ModelFile, DocumentedExampleIsValid) {
  const auto blocks = json_blocks(testing::slurp(testing::kDocsDir / "model-format.md"));
  ASSERT_GE(blocks.size(), 2u);
  const auto model = parse_model(blocks[0]);
  EXPECT_EQ(validate_model(model), ValidationReport{});
  EXPECT_EQ(model.hierarchy.at("grid").characteristics, "tariff");
  EXPECT_EQ(parse_rules(blocks[1]).size(), 2u);

  const auto s = score(model.hierarchy, {"plant", "energy", "line", "solar", "retrofit"},
                       model.scoring.weights, 5.0);
  EXPECT_EQ(s.per_attribute.at("cost"), 420.0);
  EXPECT_EQ(s.per_attribute.at("saving"), 550.0);
  EXPECT_EQ(s.total, 550.0 - 210.0);
}

TEST(ModelFile, ValidationCoversBindingsAndWeights) {
  auto m = parse_model(kMinimal);
  m.bindings.push_back({"s", "ghost", "cost", Comparator::kLe, 1});
  m.scoring.weights["risk"] = 1;
  const auto r = validate_model(m);
  EXPECT_GE(r.size(), 2u);
}

TEST(RulesFile, RoundTrip) {
  const auto rb = load_rules(testing::kExampleDir / "rules.json");
  EXPECT_FALSE(rb.empty());
  EXPECT_EQ(parse_rules(dump_rules(rb)), rb);
  EXPECT_EQ(code_of([] { parse_rules(R"([{"id": "r", "if": "a", "then": "b"}])"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_rules(R"([{"id": "r", "if": ["a"], "then": "a"}])"); }), ErrorCode::kIntegrity);
}

TEST(JsonShapes, ChainAndVariants) {
  RuleBase rb({{"r1", {Fact("a")}, Fact("b")}});
  const auto chain = to_json(forward_chain(rb, make_facts({"a"})));
  EXPECT_EQ(chain.at("closure"), nlohmann::json::parse(R"(["a", "b"])"));
  EXPECT_EQ(chain.at("trace").at(0).at("rule"), "r1");

  EnumerationResult er;
  er.configurations = {{{"r", "a"}, {}}, {{"r", "b"}, {}}};
  const std::vector<Score> scores{{{{"cost", 5}}, 5}, {{{"cost", 7}}, 7}};
  const auto listing = variants_to_json(er, scores, {1, 0}, Direction::kMaximize);
  EXPECT_EQ(listing.at("truncated"), false);
  EXPECT_EQ(listing.at("variants").at(0).at("rank"), 1);
  EXPECT_EQ(listing.at("variants").at(0).at("selected"), nlohmann::json::parse(R"(["b", "r"])"));
}

TEST(Text, NumbersAndCsv) {
  EXPECT_EQ(format_number(15), "15");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(parse_number("2.5"), 2.5);
  EXPECT_EQ(code_of([] { parse_number("2.5x"); }), ErrorCode::kParse);
  EXPECT_EQ(csv::parse("a,\"b,c\"\r\n\"d\"\"e\",\n"),
            (std::vector<std::vector<std::string>>{{"a", "b,c"}, {"d\"e", ""}}));
  EXPECT_EQ(csv::row({"x", "y,z", "q\""}), "x,\"y,z\",\"q\"\"\"\n");
  try {
    csv::parse("a\n\"open\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace innotree
