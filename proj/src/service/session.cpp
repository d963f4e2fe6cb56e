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

#include <iomanip>
#include <random>
#include <sstream>

#include "rackconf/facts_io.hpp"
#include "rackconf/service.hpp"

namespace rackconf::service {

namespace {

std::string make_token(std::uint64_t counter) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << rng() << std::setw(4)
      << (counter & 0xffff);
  return out.str();
}

}  // namespace

SessionManager::SessionManager(ManagerOptions opts) : opts_{std::move(opts)} {}

void SessionManager::rebuild(Session& s) {
  s.facts.clear();
  for (const auto& f : s.initial.facts()) s.facts.push_back({f, 0});
  ConfigurationState cur = s.initial;
  for (std::size_t i = 0; i < s.history.size(); ++i) {
    ConfigurationState next;
    try {
      next = rackconf::apply_action(cur, s.history[i]);
    } catch (const Error& e) {
      throw ReplayError{i + 1, "step " + std::to_string(i + 1) + ": " + e.what()};
    }
    for (const auto& f : added_facts(cur, next)) s.facts.push_back({f, i + 1});
    cur = std::move(next);
  }
  s.current = std::move(cur);
}

std::string SessionManager::add(std::shared_ptr<Session> s) {
  s->last_used = opts_.now();
  std::lock_guard lock{mu_};
  std::string id = make_token(++counter_);
  while (sessions_.count(id)) id = make_token(++counter_);
  sessions_.emplace(id, std::move(s));
  return id;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) {
  evict_idle();
  std::lock_guard lock{mu_};
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error{Errc::UnknownSession, "unknown session '" + id + "'"};
  it->second->last_used = opts_.now();
  return it->second;
}

Snapshot SessionManager::snapshot(const std::string& id, const Session& s) const {
  Snapshot snap;
  snap.session = id;
  snap.strategy = s.strategy;
  snap.step = s.history.size();
  snap.facts = s.facts;
  snap.violations = detect_violations(s.current, opts_.autocomplete.check);
  const auto actions = get_strategy(s.strategy).generate(s.current, snap.violations);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    snap.actions.push_back({i, actions[i], to_term(actions[i]), describe(actions[i]),
                            action_effects(s.current, actions[i])});
  }
  return snap;
}

Snapshot SessionManager::create_session(std::string_view strategy, std::string_view initial) {
  auto s = std::make_shared<Session>();
  s->strategy = parse_strategy_kind(strategy.empty() ? "ui" : strategy);
  s->initial = parse_configuration(initial);
  rebuild(*s);
  std::string id = add(s);
  std::lock_guard lock{s->mu};
  return snapshot(id, *s);
}

Snapshot SessionManager::import_session(const SessionExport& data) {
  auto s = std::make_shared<Session>();
  s->strategy = data.strategy;
  s->initial = parse_configuration(data.initial);
  for (const auto& t : data.actions) s->history.push_back(parse_action(t));
  rebuild(*s);
  std::string id = add(s);
  std::lock_guard lock{s->mu};
  return snapshot(id, *s);
}

Snapshot SessionManager::get_state(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock{s->mu};
  return snapshot(id, *s);
}

Snapshot SessionManager::apply_action(const std::string& id, std::size_t index,
                                      std::optional<std::size_t> expected_step) {
  auto s = find(id);
  std::lock_guard lock{s->mu};
  if (expected_step && *expected_step != s->history.size()) {
    throw Error{Errc::StaleActionIndex, "session is at step " +
                                            std::to_string(s->history.size()) + ", not " +
                                            std::to_string(*expected_step)};
  }
  const auto violations = detect_violations(s->current, opts_.autocomplete.check);
  const auto actions = get_strategy(s->strategy).generate(s->current, violations);
  if (index >= actions.size()) {
    throw Error{Errc::IndexOutOfRange, "action index " + std::to_string(index) + " out of " +
                                           std::to_string(actions.size())};
  }
  ConfigurationState next = rackconf::apply_action(s->current, actions[index]);
  s->history.push_back(actions[index]);
  for (const auto& f : added_facts(s->current, next)) s->facts.push_back({f, s->history.size()});
  s->current = std::move(next);
  return snapshot(id, *s);
}

Snapshot SessionManager::undo(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock{s->mu};
  if (s->history.empty()) throw Error{Errc::NothingToUndo, "session has no actions to undo"};
  s->history.pop_back();
  rebuild(*s);
  return snapshot(id, *s);
}

Snapshot SessionManager::autocomplete(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock{s->mu};
  SolveTrace trace = solve(s->current, get_strategy(s->strategy), opts_.autocomplete);
  const bool solved = trace.result == SolveResult::Solved;
  if (solved) {
    for (const auto& st : trace.steps) s->history.push_back(st.action);
    rebuild(*s);
  }
  Snapshot snap = snapshot(id, *s);
  snap.solved = solved;
  return snap;
}

std::string SessionManager::export_configuration(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock{s->mu};
  return print_configuration(s->current);
}

SessionExport SessionManager::export_session(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock{s->mu};
  SessionExport out;
  out.strategy = s->strategy;
  out.initial = print_configuration(s->initial);
  for (const auto& a : s->history) out.actions.push_back(to_term(a));
  return out;
}

void SessionManager::close(const std::string& id) {
  std::lock_guard lock{mu_};
  if (sessions_.erase(id) == 0) throw Error{Errc::UnknownSession, "unknown session '" + id + "'"};
}

std::size_t SessionManager::evict_idle() {
  const auto now = opts_.now();
  std::lock_guard lock{mu_};
  std::size_t n = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_used > opts_.idle_timeout) {
      it = sessions_.erase(it);
      ++n;
    } else {
      ++it;
    }
  }
  return n;
}

std::size_t SessionManager::size() const {
  std::lock_guard lock{mu_};
  return sessions_.size();
}

}  // namespace rackconf::service
