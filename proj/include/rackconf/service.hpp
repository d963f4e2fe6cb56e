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

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rackconf/engine.hpp"

// Interactive configuration sessions. A session is an initial
// configuration plus the list of actions applied so far; the current state
// is always the replay of that list.

namespace rackconf::service {

struct ActionView {
  std::size_t index = 0;
  Action action;
  std::string term;
  std::string label;
  std::vector<Fact> effects;
};

struct AnnotatedFact {
  Fact fact;
  std::size_t added_at = 0;  // 0 for facts of the initial configuration
};

struct Snapshot {
  std::string session;
  StrategyKind strategy = StrategyKind::Ui;
  std::size_t step = 0;
  std::vector<AnnotatedFact> facts;
  std::vector<Violation> violations;
  std::vector<ActionView> actions;
  // Set by autocomplete: whether it reached a valid configuration.
  std::optional<bool> solved;
};

struct SessionExport {
  StrategyKind strategy = StrategyKind::Ui;
  std::string initial;  // configuration text
  std::vector<std::string> actions;  // action terms
};

struct ManagerOptions {
  std::chrono::seconds idle_timeout{1800};
  SolveOptions autocomplete;
  std::function<std::chrono::steady_clock::time_point()> now = [] {
    return std::chrono::steady_clock::now();
  };

  ManagerOptions() { autocomplete.time_limit = std::chrono::milliseconds{10000}; }
};

// Thread safe. Requests on one session are serialized; distinct sessions
// proceed concurrently.
class SessionManager {
 public:
  explicit SessionManager(ManagerOptions opts = {});

  // Throws Error{UnknownStrategy} or Error{MalformedConfiguration}.
  Snapshot create_session(std::string_view strategy, std::string_view initial = {});
  // Rebuilds a session from an export; throws ReplayError if an action
  // does not apply.
  Snapshot import_session(const SessionExport& data);

  // The rest throw Error{UnknownSession} for unknown or evicted ids.
  Snapshot get_state(const std::string& id);
  // `expected_step` guards against acting on an outdated action list:
  // Error{StaleActionIndex} if the session has moved on. Throws
  // Error{IndexOutOfRange} for an index past the list.
  Snapshot apply_action(const std::string& id, std::size_t index,
                        std::optional<std::size_t> expected_step = std::nullopt);
  // Throws Error{NothingToUndo} on an empty history.
  Snapshot undo(const std::string& id);
  // Runs the session's strategy from the current state; on success the
  // solving actions are appended to the history.
  Snapshot autocomplete(const std::string& id);
  // Current configuration in the text format.
  std::string export_configuration(const std::string& id);
  SessionExport export_session(const std::string& id);
  void close(const std::string& id);

  // Drops sessions idle for longer than the timeout; returns how many.
  std::size_t evict_idle();
  std::size_t size() const;

 private:
  struct Session {
    std::mutex mu;
    StrategyKind strategy = StrategyKind::Ui;
    ConfigurationState initial;
    std::vector<Action> history;
    ConfigurationState current;
    std::vector<AnnotatedFact> facts;
    std::chrono::steady_clock::time_point last_used;
  };

  std::shared_ptr<Session> find(const std::string& id);
  std::string add(std::shared_ptr<Session> s);
  Snapshot snapshot(const std::string& id, const Session& s) const;
  static void rebuild(Session& s);

  ManagerOptions opts_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace rackconf::service
