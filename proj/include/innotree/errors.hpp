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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace innotree {

enum class ErrorCode {
  kBadReference,    // an id, group, level or table name does not resolve
  kNotFound,        // attribute absent on a node, report id unknown
  kOutOfRange,      // series lookup outside the sampled domain
  kInvalidArgument, // precondition on an argument violated
  kParse,           // malformed input file
  kIntegrity,       // structurally inconsistent input
  kNotDerived,      // explain() on a fact outside the closure
  kDegeneratePivot,
  kLimit,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// One structural finding. Findings are data, never thrown.
struct Violation {
  std::string subject;  // node id, group id, report id, ...
  std::string rule;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

// Sorts by subject, then rule, then detail and drops exact duplicates.
void normalize(ValidationReport& report);

std::string format_violation(const Violation& v);

}  // namespace innotree
