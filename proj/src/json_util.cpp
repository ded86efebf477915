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

#include "json_util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace innotree::detail {

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    auto colon = message.rfind(": ");
    if (colon != std::string::npos) message = message.substr(colon + 2);
    throw Error(ErrorCode::kParse, std::string(what) + ":" + std::to_string(line) + ":" +
                                       std::to_string(column) + ": " + message);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot read '" + path.string() + "'");
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kNotFound, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kNotFound, "write failed for '" + path.string() + "'");
}

void require_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                  std::string_view what) {
  if (!obj.is_object()) throw Error(ErrorCode::kParse, std::string(what) + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw Error(ErrorCode::kParse, std::string(what) + ": unknown key '" + key + "'");
  }
}

const json& field(const json& obj, std::string_view key, std::string_view what) {
  auto it = obj.find(std::string(key));
  if (it == obj.end())
    throw Error(ErrorCode::kParse, std::string(what) + ": missing key '" + std::string(key) + "'");
  return *it;
}

double as_number(const json& value, std::string_view what) {
  if (!value.is_number()) throw Error(ErrorCode::kParse, std::string(what) + ": expected a number");
  return value.get<double>();
}

std::string as_string(const json& value, std::string_view what) {
  if (!value.is_string()) throw Error(ErrorCode::kParse, std::string(what) + ": expected a string");
  return value.get<std::string>();
}

std::string get_string(const json& obj, std::string_view key, std::string_view what) {
  return as_string(field(obj, key, what), std::string(what) + "." + std::string(key));
}

double get_number(const json& obj, std::string_view key, std::string_view what) {
  return as_number(field(obj, key, what), std::string(what) + "." + std::string(key));
}

}  // namespace innotree::detail
