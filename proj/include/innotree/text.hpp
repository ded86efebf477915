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

// Small text helpers shared by the serializers: number formatting and CSV.

#include <string>
#include <string_view>
#include <vector>

namespace innotree {

// Shortest decimal form that reads back to the same double ("15", "0.1").
std::string format_number(double value);

// Whole-string decimal parse; throws kParse on trailing garbage.
double parse_number(std::string_view text);

std::string join(const std::vector<std::string>& items, std::string_view sep);

namespace csv {

// RFC 4180 reader: comma separated, double-quote quoting, CRLF or LF.
// Errors carry the 1-based line number.
std::vector<std::vector<std::string>> parse(std::string_view text);

// Quotes a field when it holds a comma, quote, CR or LF.
std::string quote(std::string_view field);

// One LF-terminated record.
std::string row(const std::vector<std::string>& fields);

}  // namespace csv
}  // namespace innotree
