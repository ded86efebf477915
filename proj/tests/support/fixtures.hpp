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

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "innotree/model.hpp"

namespace innotree {

// Readable gtest output for findings.
inline void PrintTo(const Violation& v, std::ostream* os) { *os << format_violation(v); }

}  // namespace innotree

namespace innotree::testing {

inline const std::filesystem::path kExampleDir = INNOTREE_EXAMPLE_DIR;
inline const std::filesystem::path kGoldenDir = INNOTREE_GOLDEN_DIR;
inline const std::filesystem::path kDocsDir = INNOTREE_DOCS_DIR;
inline const std::filesystem::path kCliPath = INNOTREE_CLI_PATH;

// Small hand-built hierarchies. Leaves join group "leaf" and get a table
// keyed by their own id; inner nodes join group "inner".
class TreeBuilder {
 public:
  explicit TreeBuilder(std::string root, Connector c) {
    h_.root_id = root;
    inner(root, c, {});
  }

  TreeBuilder& inner(const std::string& id, Connector c, std::vector<std::string> children) {
    HierarchyNode n;
    n.id = id;
    n.label = id;
    n.kind = id == h_.root_id ? NodeKind::kGoal : NodeKind::kCriterion;
    n.connector = c;
    n.children = std::move(children);
    n.group_id = "inner";
    h_.nodes[id] = std::move(n);
    return *this;
  }

  TreeBuilder& children(const std::string& id, std::vector<std::string> kids) {
    h_.nodes[id].children = std::move(kids);
    return *this;
  }

  TreeBuilder& leaf(const std::string& id, double cost) {
    HierarchyNode n;
    n.id = id;
    n.label = id;
    n.kind = NodeKind::kLeaf;
    n.group_id = "leaf";
    n.characteristics = id;
    h_.nodes[id] = std::move(n);
    h_.tables[id] = {id, {{"cost", cost}}};
    if (!h_.schemas.contains("leaf"))
      h_.schemas["leaf"] = {"leaf", {{"cost", ValueType::kNumeric, "kEUR", Aggregation::kSum}}};
    return *this;
  }

  DecisionHierarchy build() const { return h_; }

 private:
  DecisionHierarchy h_;
};

// root <connector> over leaves with the given costs, named A, B, C, ...
inline DecisionHierarchy flat_tree(Connector c, const std::vector<double>& costs) {
  TreeBuilder b("root", c);
  std::vector<std::string> kids;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const std::string id(1, static_cast<char>('A' + i));
    kids.push_back(id);
    b.leaf(id, costs[i]);
  }
  b.children("root", kids);
  return b.build();
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("innotree-test-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Copy of the example data directory, for tests that edit files.
inline void copy_example(const std::filesystem::path& to) {
  std::filesystem::copy(kExampleDir, to, std::filesystem::copy_options::recursive);
}

}  // namespace innotree::testing
