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

#include "innotree/api.hpp"

#include <httplib.h>

#include "innotree/text.hpp"
#include "json_util.hpp"

namespace innotree {

using detail::json;

namespace {

ApiResponse json_response(json body, std::uint64_t version, int status = 200) {
  return {status, "application/json", body.dump(), version};
}

std::string list_ids(const std::vector<std::string>& ids) {
  return ids.empty() ? "(none)" : join(ids, ", ");
}

// Domain errors are 422, except references to unknown report ids (404)
// and malformed requests (400).
int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return 400;
    case ErrorCode::kNotFound: return 404;
    default: return 422;
  }
}

}  // namespace

ApiResponse api_error(int status, std::string_view error, std::string_view detail,
                      std::uint64_t version) {
  return json_response({{"error", error}, {"detail", detail}}, version, status);
}

ApiResponse api_health(const EngineSnapshot& s) {
  return json_response({{"version", s.version}}, s.version);
}

ApiResponse api_model(const EngineSnapshot& s) {
  json body = model_to_json(s.model);
  body["version"] = s.version;
  return json_response(std::move(body), s.version);
}

ApiResponse api_whatif(const EngineSnapshot& s, std::string_view body) {
  json request;
  try {
    request = detail::parse_json(body, "request");
    detail::require_keys(request, {"selection", "param"}, "request");
    if (!detail::field(request, "selection", "request").is_array())
      throw Error(ErrorCode::kParse, "request.selection: expected a list of node ids");
  } catch (const Error& e) {
    return api_error(400, "bad-request", e.what(), s.version);
  }

  Selection selection;
  std::vector<std::string> offenders;
  for (const auto& id : request.at("selection")) {
    if (!id.is_string()) {
      offenders.push_back(id.dump());
    } else if (s.model.hierarchy.find(id.get<std::string>()) == nullptr) {
      offenders.push_back(id.get<std::string>());
    } else {
      selection.insert(id.get<std::string>());
    }
  }
  if (!offenders.empty()) {
    return json_response({{"error", "unknown-node"},
                          {"detail", "selection holds unknown node ids: " + join(offenders, ", ")},
                          {"offenders", offenders}},
                         s.version, 422);
  }
  std::optional<double> param;
  if (request.contains("param") && !request.at("param").is_null()) {
    if (!request.at("param").is_number())
      return api_error(400, "bad-request", "request.param: expected a number", s.version);
    param = request.at("param").get<double>();
  }
  try {
    return json_response(evaluate_whatif(s, selection, param), s.version);
  } catch (const Error& e) {
    return api_error(422, to_string(e.code()), e.what(), s.version);
  }
}

ApiResponse api_variants(const EngineSnapshot& s, std::optional<std::string> limit,
                         std::optional<std::string> param) {
  if (!limit) return api_error(400, "bad-request", "query parameter 'limit' is required", s.version);
  std::size_t n = 0;
  std::optional<double> p;
  try {
    const double value = parse_number(*limit);
    if (!(value >= 1) || value != static_cast<double>(static_cast<std::size_t>(value)))
      throw Error(ErrorCode::kParse, "limit must be a positive integer");
    n = static_cast<std::size_t>(value);
    if (param) p = parse_number(*param);
  } catch (const Error& e) {
    return api_error(400, "bad-request", e.what(), s.version);
  }
  try {
    return json_response(list_variants(s, n, p), s.version);
  } catch (const Error& e) {
    return api_error(422, to_string(e.code()), e.what(), s.version);
  }
}

ApiResponse api_static_report(const EngineSnapshot& s, std::string_view id) {
  const auto* def = s.reports.find_static(id);
  if (def == nullptr) {
    return api_error(404, "unknown-report",
                     "no static report '" + std::string(id) + "'; known: " + list_ids(s.reports.static_ids()),
                     s.version);
  }
  try {
    return {200, "application/xml", render_static(*def, s.schema), s.version};
  } catch (const Error& e) {
    return api_error(422, to_string(e.code()), e.what(), s.version);
  }
}

ApiResponse api_pivot_report(const EngineSnapshot& s, std::string_view id) {
  const auto* def = s.reports.find_dynamic(id);
  if (def == nullptr) {
    return api_error(404, "unknown-report",
                     "no pivot report '" + std::string(id) + "'; known: " + list_ids(s.reports.dynamic_ids()),
                     s.version);
  }
  try {
    return {200, "text/csv", run_dynamic(*def, s.schema), s.version};
  } catch (const Error& e) {
    return api_error(422, to_string(e.code()), e.what(), s.version);
  }
}

ApiResponse api_rules_trace(const EngineSnapshot& s, std::string_view body) {
  json request;
  FactSet seed;
  try {
    request = detail::parse_json(body, "request");
    detail::require_keys(request, {"seed", "explain"}, "request");
    const auto& facts = detail::field(request, "seed", "request");
    if (!facts.is_array()) throw Error(ErrorCode::kParse, "request.seed: expected a list of symbols");
    for (const auto& f : facts) {
      auto symbol = detail::as_string(f, "request.seed");
      if (symbol.empty()) throw Error(ErrorCode::kParse, "request.seed: empty symbol");
      seed.emplace(std::move(symbol));
    }
  } catch (const Error& e) {
    return api_error(400, "bad-request", e.what(), s.version);
  }

  const auto result = forward_chain(s.rules, seed);
  json out = to_json(result);
  out["version"] = s.version;
  if (request.contains("explain") && !request.at("explain").is_null()) {
    try {
      const auto symbol = detail::as_string(request.at("explain"), "request.explain");
      out["explanation"] = to_json(explain(Fact(symbol), result));
    } catch (const Error& e) {
      return api_error(e.code() == ErrorCode::kParse ? 400 : 422, to_string(e.code()), e.what(), s.version);
    }
  }
  return json_response(std::move(out), s.version);
}

ApiResponse api_reload(Engine& engine) {
  try {
    const auto version = engine.reload();
    return json_response({{"version", version}}, version);
  } catch (const Error& e) {
    const auto current = engine.snapshot()->version;
    return api_error(422, to_string(e.code()), e.what(), current);
  } catch (const std::exception& e) {
    const auto current = engine.snapshot()->version;
    return api_error(422, "reload-failed", e.what(), current);
  }
}

// ---------------------------------------------------------------------------

namespace {

void send(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  res.set_header(kVersionHeader, std::to_string(r.version));
  res.set_content(r.body, r.content_type);
}

std::optional<std::string> query(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  return req.get_param_value(key);
}

}  // namespace

HttpServer::HttpServer(Engine& engine) : engine_(engine), server_(std::make_unique<httplib::Server>()) {
  auto& srv = *server_;
  srv.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    send(res, api_health(*engine_.snapshot()));
  });
  srv.Get("/api/model", [this](const httplib::Request&, httplib::Response& res) {
    send(res, api_model(*engine_.snapshot()));
  });
  srv.Post("/api/whatif", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_whatif(*engine_.snapshot(), req.body));
  });
  srv.Get("/api/variants", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_variants(*engine_.snapshot(), query(req, "limit"), query(req, "param")));
  });
  srv.Get(R"(/api/reports/static/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_static_report(*engine_.snapshot(), req.matches[1].str()));
  });
  srv.Get(R"(/api/reports/pivot/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_pivot_report(*engine_.snapshot(), req.matches[1].str()));
  });
  srv.Post("/api/rules/trace", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_rules_trace(*engine_.snapshot(), req.body));
  });
  srv.Post("/api/reload", [this](const httplib::Request&, httplib::Response& res) {
    send(res, api_reload(engine_));
  });
  srv.set_error_handler([this](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const auto version = engine_.snapshot()->version;
    send(res, api_error(res.status == 0 ? 404 : res.status, "not-found",
                        "no route for " + req.method + " " + req.path, version));
  });
  srv.set_exception_handler([this](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "unexpected error";
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      send(res, api_error(status_for(e.code()), to_string(e.code()), e.what(), engine_.snapshot()->version));
      return;
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    send(res, api_error(500, "internal", what, engine_.snapshot()->version));
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace innotree
