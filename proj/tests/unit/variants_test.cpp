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

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "innotree/variants.hpp"
#include "oracles.hpp"

namespace innotree {
namespace {

using testing::TreeBuilder;
using testing::flat_tree;

constexpr std::size_t kNoLimit = std::size_t{1} << 30;

std::vector<Selection> selections(const EnumerationResult& r) {
  std::vector<Selection> out;
  for (const auto& c : r.configurations) out.push_back(c.selected);
  return out;
}

TEST(Admissible, Examples) {
  const auto and_tree = flat_tree(Connector::kAnd, {1, 2});
  EXPECT_TRUE(admissible(and_tree, {"root", "A", "B"}));
  EXPECT_FALSE(admissible(and_tree, {"root", "A"}));
  const auto or_tree = flat_tree(Connector::kOr, {1, 2});
  EXPECT_TRUE(admissible(or_tree, {"root", "A", "B"}));
  EXPECT_TRUE(admissible(or_tree, {"root", "B"}));
  EXPECT_FALSE(admissible(or_tree, {"root"}));
  EXPECT_FALSE(admissible(or_tree, {"A"}));
}

TEST(Admissible, UnknownIdRaises) {
  try {
    admissible(flat_tree(Connector::kOr, {1}), {"root", "Q"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadReference);
  }
}

TEST(Admissible, ViolationsNameTheNode) {
  const auto h = flat_tree(Connector::kAnd, {1, 2, 3});
  EXPECT_EQ(admissibility_violations(h, {"root", "A"}), (ValidationReport{{"root", "and-incomplete", "B,C"}}));
  const auto nested = TreeBuilder("root", Connector::kOr)
                          .inner("X", Connector::kOr, {"A"})
                          .leaf("A", 1)
                          .leaf("B", 1)
                          .children("root", {"X", "B"})
                          .build();
  EXPECT_EQ(admissibility_violations(nested, {"root", "A"}),
            (ValidationReport{{"A", "parent-unselected", "X"}, {"root", "or-empty", ""}}));
  EXPECT_EQ(admissibility_violations(nested, {"root", "X"}), (ValidationReport{{"X", "or-empty", ""}}));
}

TEST(Enumerate, OrOverTwoLeaves) {
  const auto r = enumerate(flat_tree(Connector::kOr, {1, 2}), {}, {}, {}, 10);
  EXPECT_EQ(selections(r),
            (std::vector<Selection>{{"root", "A"}, {"root", "B"}, {"root", "A", "B"}}));
  EXPECT_FALSE(r.truncated);
}

TEST(Enumerate, AndOverTwoLeaves) {
  const auto r = enumerate(flat_tree(Connector::kAnd, {1, 2}), {}, {}, {}, 10);
  EXPECT_EQ(selections(r), (std::vector<Selection>{{"root", "A", "B"}}));
}

TEST(Enumerate, ExpenditureCeilingFiltersSum) {
  ConstraintSet cs;
  cs.expenditure_ceiling = 10;
  const auto r = enumerate(flat_tree(Connector::kOr, {5, 7}), {}, cs, {}, 10);
  EXPECT_EQ(selections(r), (std::vector<Selection>{{"root", "A"}, {"root", "B"}}));
}

TEST(Enumerate, CanonicalOrderNested) {
  const auto h = TreeBuilder("root", Connector::kAnd)
                     .inner("X", Connector::kOr, {"a", "b"})
                     .inner("Y", Connector::kOr, {"c", "d"})
                     .leaf("a", 1).leaf("b", 1).leaf("c", 1).leaf("d", 1)
                     .children("root", {"X", "Y"})
                     .build();
  const auto got = selections(enumerate(h, {}, {}, {}, 100));
  std::vector<Selection> expected;
  const std::vector<std::vector<std::string>> xs{{"a"}, {"b"}, {"a", "b"}}, ys{{"c"}, {"d"}, {"c", "d"}};
  for (const auto& x : xs)
    for (const auto& y : ys) {
      Selection s{"root", "X", "Y"};
      s.insert(x.begin(), x.end());
      s.insert(y.begin(), y.end());
      expected.push_back(s);
    }
  EXPECT_EQ(got, expected);
}

TEST(Enumerate, TruncationAndLimit) {
  const auto h = flat_tree(Connector::kOr, {1, 2, 3});
  const auto r = enumerate(h, {}, {}, {}, 4);
  EXPECT_EQ(r.configurations.size(), 4u);
  EXPECT_TRUE(r.truncated);
  EXPECT_FALSE(enumerate(h, {}, {}, {}, 7).truncated);
  try {
    enumerate(h, {}, {}, {}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(Enumerate, InvalidHierarchyRaises) {
  auto h = flat_tree(Connector::kOr, {1});
  h.nodes["root"].children.push_back("ghost");
  EXPECT_THROW(enumerate(h, {}, {}, {}, 5), Error);
}

TEST(Enumerate, VetoRuleRemovesConfigurations) {
  const auto h = flat_tree(Connector::kOr, {1, 2});
  ProductionRule veto{"no-both", {Fact("selected:A"), Fact("selected:B")}, Fact("infeasible")};
  const auto r = enumerate(h, RuleBase({veto}), {}, {}, 10);
  EXPECT_EQ(selections(r), (std::vector<Selection>{{"root", "A"}, {"root", "B"}}));
}

TEST(Enumerate, CountLaw) {
  for (int k = 1; k <= 10; ++k) {
    const auto h = flat_tree(Connector::kOr, std::vector<double>(k, 1.0));
    EXPECT_EQ(enumerate(h, {}, {}, {}, kNoLimit).configurations.size(), (std::size_t{1} << k) - 1) << k;
  }
}

TEST(EnumerateProperty, MatchesBruteForce) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = oracle::random_project(rng);
    const auto r = enumerate(p.hierarchy, p.rules, p.constraints, p.bindings, kNoLimit);
    const auto got = selections(r);
    const std::set<Selection> got_set(got.begin(), got.end());
    EXPECT_EQ(got_set.size(), got.size()) << "duplicates, trial " << trial;
    EXPECT_EQ(got_set, oracle::brute_force_variants(p.hierarchy, p.rules, p.constraints, p.bindings))
        << "trial " << trial;
    for (const auto& s : got) EXPECT_TRUE(admissible(p.hierarchy, s));
  }
}

TEST(EnumerateProperty, RaisingCeilingKeepsConfigurations) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = oracle::random_project(rng, 12, 8);
    p.constraints = {};
    p.constraints.expenditure_ceiling = std::uniform_int_distribution<int>(0, 60)(rng);
    const auto low = selections(enumerate(p.hierarchy, p.rules, p.constraints, p.bindings, kNoLimit));
    *p.constraints.expenditure_ceiling += std::uniform_int_distribution<int>(0, 30)(rng);
    const auto high = selections(enumerate(p.hierarchy, p.rules, p.constraints, p.bindings, kNoLimit));
    const std::set<Selection> high_set(high.begin(), high.end());
    for (const auto& s : low) EXPECT_TRUE(high_set.contains(s));
  }
}

TEST(Score, Examples) {
  const auto h = flat_tree(Connector::kOr, {5, 7});
  const auto single = score(h, {"root", "A"}, {{"cost", 1}});
  EXPECT_EQ(single.per_attribute, (std::map<std::string, double>{{"cost", 5}}));
  EXPECT_EQ(single.total, 5);
  EXPECT_EQ(score(h, {"root", "A", "B"}, {}).per_attribute.at("cost"), 12);
  const auto unweighted = score(h, {"root", "A", "B"}, {});
  EXPECT_EQ(unweighted.total, 0);
  EXPECT_FALSE(unweighted.per_attribute.empty());
}

TEST(Score, WeightedMeanAndErrors) {
  auto h = flat_tree(Connector::kOr, {1, 1});
  h.schemas["leaf"].attributes.push_back({"quality", ValueType::kNumeric, "", Aggregation::kWeightedMean});
  h.schemas["leaf"].attributes.push_back({"weight", ValueType::kNumeric, "", Aggregation::kSum});
  h.schemas["leaf"].attributes.push_back({"owner", ValueType::kCategorical, "", Aggregation::kSum});
  h.tables["A"].values.insert({{"quality", 0.2}, {"weight", 3.0}, {"owner", std::string("x")}});
  h.tables["B"].values.insert({{"quality", 0.6}, {"weight", 1.0}, {"owner", std::string("y")}});
  EXPECT_DOUBLE_EQ(score(h, {"root", "A", "B"}, {}).per_attribute.at("quality"), 0.3);
  h.tables["B"].values.erase("weight");
  EXPECT_DOUBLE_EQ(score(h, {"root", "A", "B"}, {}).per_attribute.at("quality"), 0.4);
  EXPECT_FALSE(score(h, {"root", "A"}, {}).per_attribute.contains("owner"));
  EXPECT_THROW(score(h, {"root", "A"}, {{"owner", 1}}), Error);
  EXPECT_THROW(score(h, {"root", "A"}, {{"missing", 1}}), Error);
}

TEST(Constraints, UnsetAttributesAreNotEvaluated) {
  ConstraintSet cs;
  cs.payback_limit = 1;
  cs.expenditure_ceiling = 3;
  Score s;
  s.per_attribute["cost"] = 4;
  const auto v = constraint_violations(cs, s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].subject, "expenditure_ceiling");
}

std::vector<Configuration> configs_of(std::vector<Selection> sels) {
  std::vector<Configuration> out;
  for (auto& s : sels) out.push_back({std::move(s), {}});
  return out;
}

std::vector<Score> totals(std::vector<double> ts) {
  std::vector<Score> out;
  for (double t : ts) out.push_back({{}, t});
  return out;
}

TEST(Rank, Examples) {
  const auto three = configs_of({{"x"}, {"y"}, {"z"}});
  EXPECT_EQ(rank(three, totals({3, 1, 2}), Direction::kMaximize), (std::vector<std::size_t>{0, 2, 1}));
  EXPECT_EQ(rank(three, totals({3, 1, 2}), Direction::kMinimize), (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_EQ(rank(configs_of({{"B"}, {"A"}}), totals({1, 1}), Direction::kMaximize),
            (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(rank(configs_of({{"A"}}), totals({4}), Direction::kMinimize), (std::vector<std::size_t>{0}));
  EXPECT_THROW(rank(three, totals({1}), Direction::kMaximize), Error);
}

TEST(RankProperty, PermutationAndRescalingInvariance) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = oracle::random_project(rng, 10, 6);
    const auto r = enumerate(p.hierarchy, {}, {}, {}, kNoLimit);
    const Weights w{{"cost", std::uniform_real_distribution<double>(-2, 2)(rng)},
                    {"payback", std::uniform_real_distribution<double>(-2, 2)(rng)}};
    const double factor = std::uniform_real_distribution<double>(0.1, 10)(rng);
    Weights scaled = w;
    for (auto& [k, v] : scaled) v *= factor;
    std::vector<Score> a, b;
    for (const auto& c : r.configurations) {
      a.push_back(score(p.hierarchy, c.selected, w));
      b.push_back(score(p.hierarchy, c.selected, scaled));
    }
    for (auto dir : {Direction::kMaximize, Direction::kMinimize}) {
      auto order = rank(r.configurations, a, dir);
      auto sorted = order;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) ASSERT_EQ(sorted[i], i);
      const auto order_b = rank(r.configurations, b, dir);
      // best totals coincide up to rounding
      EXPECT_NEAR(a[order.front()].total * factor, b[order_b.front()].total,
                  1e-9 * std::max(1.0, std::fabs(b[order_b.front()].total)));
    }
  }
}

}  // namespace
}  // namespace innotree
