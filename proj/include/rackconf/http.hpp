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
#pragma once

#include <memory>
#include <string>

#include "json.hpp"
#include "rackconf/service.hpp"

// HTTP+JSON front end of the session manager.
//
//   POST   /sessions                      {"strategy", "initial", "actions"}
//   GET    /sessions/{id}
//   POST   /sessions/{id}/actions/{index} optional ?step=N or {"step": N}
//   POST   /sessions/{id}/undo
//   POST   /sessions/{id}/autocomplete
//   GET    /sessions/{id}/export          configuration text;
//                                         ?format=session for JSON
//   DELETE /sessions/{id}

namespace rackconf::service {

nlohmann::json to_json(const Snapshot& s);
nlohmann::json to_json(const SessionExport& e);
// HTTP status for an error code.
int http_status(Errc code);

class HttpServer {
 public:
  explicit HttpServer(SessionManager& sessions);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds without serving; port 0 picks a free port. Returns the bound
  // port, or -1 on failure.
  int bind(const std::string& host, int port);
  // Serves until stop(); call after bind.
  bool run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rackconf::service
