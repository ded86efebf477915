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

// HTTP surface. Handlers are plain functions of (snapshot, request) so they
// can be exercised without a socket; HttpServer wires them to cpp-httplib.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "innotree/engine.hpp"

namespace httplib {
class Server;
}

namespace innotree {

inline constexpr const char* kVersionHeader = "X-Innotree-Version";

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::uint64_t version = 0;
};

ApiResponse api_health(const EngineSnapshot& s);
ApiResponse api_model(const EngineSnapshot& s);
ApiResponse api_whatif(const EngineSnapshot& s, std::string_view body);
ApiResponse api_variants(const EngineSnapshot& s, std::optional<std::string> limit,
                         std::optional<std::string> param = std::nullopt);
ApiResponse api_static_report(const EngineSnapshot& s, std::string_view id);
ApiResponse api_pivot_report(const EngineSnapshot& s, std::string_view id);
ApiResponse api_rules_trace(const EngineSnapshot& s, std::string_view body);
ApiResponse api_reload(Engine& engine);

// {"error", "detail"} body with the given status.
ApiResponse api_error(int status, std::string_view error, std::string_view detail,
                      std::uint64_t version);

class HttpServer {
 public:
  explicit HttpServer(Engine& engine);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds `host:port`; port 0 picks a free port. Returns the bound port, or
  // -1 on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  Engine& engine_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace innotree
