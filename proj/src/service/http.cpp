// Copyright 2026 The rackconf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rackconf/http.hpp"

#include "httplib.h"
#include "rackconf/facts_io.hpp"

namespace rackconf::service {

using nlohmann::json;

namespace {

json fact_json(const Fact& f) {
  json j;
  j["text"] = format_fact(f);
  if (f.kind == FactKind::IsA) {
    j["kind"] = "isA";
    j["args"] = {f.first.value, std::string{to_string(f.cls)}};
  } else {
    j["kind"] = std::string{to_string(f.assoc())};
    j["args"] = {f.first.value, f.second.value};
  }
  return j;
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, Errc code, const std::string& message) {
  send_json(res, http_status(code), json{{"error", std::string{to_string(code)}},
                                         {"message", message}});
}

// Runs a handler, turning library errors into JSON error responses.
template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    send_error(res, e.code(), e.what());
  } catch (const json::exception& e) {
    send_error(res, Errc::MalformedConfiguration, std::string{"bad request body: "} + e.what());
  }
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body);
  if (!j.is_object()) throw Error{Errc::MalformedConfiguration, "request body must be an object"};
  return j;
}

std::size_t parse_index(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) {
    throw Error{Errc::IndexOutOfRange, "bad action index '" + s + "'"};
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

json to_json(const Snapshot& s) {
  json j;
  j["session"] = s.session;
  j["strategy"] = std::string{to_string(s.strategy)};
  j["step"] = s.step;
  j["valid"] = s.violations.empty();
  j["facts"] = json::array();
  for (const auto& f : s.facts) {
    json fj = fact_json(f.fact);
    fj["added_at"] = f.added_at;
    j["facts"].push_back(std::move(fj));
  }
  j["violations"] = json::array();
  for (const auto& v : s.violations) {
    j["violations"].push_back({{"kind", std::string{to_string(v.kind)}},
                               {"subject", json::array({v.subject.value})},
                               {"missing", v.missing},
                               {"text", to_string(v)}});
  }
  j["actions"] = json::array();
  for (const auto& a : s.actions) {
    json effects = json::array();
    for (const auto& f : a.effects) effects.push_back(format_fact(f));
    j["actions"].push_back(
        {{"index", a.index}, {"term", a.term}, {"label", a.label}, {"effects", effects}});
  }
  if (s.solved) j["solved"] = *s.solved;
  return j;
}

json to_json(const SessionExport& e) {
  return {{"strategy", std::string{to_string(e.strategy)}},
          {"initial", e.initial},
          {"actions", e.actions}};
}

int http_status(Errc code) {
  switch (code) {
    case Errc::UnknownSession: return 404;
    case Errc::StaleActionIndex:
    case Errc::NothingToUndo: return 409;
    case Errc::InapplicableAction: return 422;
    default: return 400;
  }
}

struct HttpServer::Impl {
  SessionManager& sessions;
  httplib::Server server;

  explicit Impl(SessionManager& s) : sessions{s} { routes(); }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = parse_body(req);
        const std::string strategy = body.value("strategy", std::string{"ui"});
        const std::string initial = body.value("initial", std::string{});
        Snapshot snap;
        if (body.contains("actions")) {
          SessionExport data{parse_strategy_kind(strategy), initial,
                             body.at("actions").get<std::vector<std::string>>()};
          snap = sessions.import_session(data);
        } else {
          snap = sessions.create_session(strategy, initial);
        }
        send_json(res, 201, to_json(snap));
      });
    });

    server.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req,
                                               httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, to_json(sessions.get_state(req.matches[1]))); });
    });

    server.Delete(R"(/sessions/([^/]+))", [this](const httplib::Request& req,
                                                  httplib::Response& res) {
      guarded(res, [&] {
        sessions.close(req.matches[1]);
        res.status = 204;
      });
    });

    server.Post(R"(/sessions/([^/]+)/actions/([^/]+))",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    std::optional<std::size_t> step;
                    if (req.has_param("step")) step = parse_index(req.get_param_value("step"));
                    const json body = parse_body(req);
                    if (body.contains("step")) step = body.at("step").get<std::size_t>();
                    auto snap = sessions.apply_action(req.matches[1],
                                                      parse_index(req.matches[2]), step);
                    send_json(res, 200, to_json(snap));
                  });
                });

    server.Post(R"(/sessions/([^/]+)/undo)", [this](const httplib::Request& req,
                                                     httplib::Response& res) {
      guarded(res, [&] { send_json(res, 200, to_json(sessions.undo(req.matches[1]))); });
    });

    server.Post(R"(/sessions/([^/]+)/autocomplete)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    send_json(res, 200, to_json(sessions.autocomplete(req.matches[1])));
                  });
                });

    server.Get(R"(/sessions/([^/]+)/export)", [this](const httplib::Request& req,
                                                      httplib::Response& res) {
      guarded(res, [&] {
        if (req.get_param_value("format") == "session") {
          send_json(res, 200, to_json(sessions.export_session(req.matches[1])));
        } else {
          res.set_content(sessions.export_configuration(req.matches[1]), "text/plain");
        }
      });
    });
  }
};

HttpServer::HttpServer(SessionManager& sessions) : impl_{std::make_unique<Impl>(sessions)} {}
HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->server.listen_after_bind(); }
void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}
void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace rackconf::service
