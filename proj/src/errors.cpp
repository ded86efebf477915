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

#include "innotree/errors.hpp"

#include <algorithm>

namespace innotree {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadReference: return "bad-reference";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kIntegrity: return "integrity-error";
    case ErrorCode::kNotDerived: return "not-derived";
    case ErrorCode::kDegeneratePivot: return "degenerate-pivot";
    case ErrorCode::kLimit: return "limit-exceeded";
  }
  return "unknown";
}

void normalize(ValidationReport& report) {
  std::sort(report.begin(), report.end());
  report.erase(std::unique(report.begin(), report.end()), report.end());
}

std::string format_violation(const Violation& v) {
  std::string out = v.subject + ": " + v.rule;
  if (!v.detail.empty()) out += " (" + v.detail + ")";
  return out;
}

}  // namespace innotree
