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
#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "innotree/errors.hpp"

namespace innotree::detail {

using nlohmann::json;

// Parses `text`; syntax errors become kParse with 1-based line and column.
json parse_json(std::string_view text, std::string_view what);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// kParse when `obj` is not an object or holds a key outside `allowed`.
void require_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                  std::string_view what);

const json& field(const json& obj, std::string_view key, std::string_view what);
std::string get_string(const json& obj, std::string_view key, std::string_view what);
double get_number(const json& obj, std::string_view key, std::string_view what);
double as_number(const json& value, std::string_view what);
std::string as_string(const json& value, std::string_view what);

}  // namespace innotree::detail
