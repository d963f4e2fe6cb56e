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

#include "rackconf/engine.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace rackconf {

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

struct FactsHash {
  std::size_t operator()(const std::vector<Fact>& fs) const noexcept {
    std::size_t h = fs.size();
    for (const auto& f : fs) {
      std::size_t x = (static_cast<std::size_t>(f.kind) << 56) ^
                      (static_cast<std::size_t>(f.first.value) << 24) ^ f.second.value ^
                      (static_cast<std::size_t>(f.cls) << 48);
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct OutOfBudget {};

// Depth-first search below a step horizon, with the strategy's lower
// bound used to cut branches that cannot finish in time.
class Search {
 public:
  Search(const Strategy& strategy, const SolveOptions& opts)
      : strategy_{strategy}, opts_{opts}, start_{Clock::now()} {}

  SolveTrace run(const ConfigurationState& initial) {
    SolveTrace trace;
    trace.initial = initial;
    try {
      trace.result = strategy_.deterministic() ? run_deterministic(initial) : run_search(initial);
    } catch (const OutOfBudget&) {
      trace.result = SolveResult::BudgetExhausted;
    }
    if (trace.result == SolveResult::Solved) trace.steps = std::move(path_);
    trace.nodes = nodes_;
    return trace;
  }

 private:
  void tick() {
    ++nodes_;
    if (opts_.node_budget && nodes_ > *opts_.node_budget) throw OutOfBudget{};
    if (opts_.time_limit && (nodes_ & 63) == 0 && Clock::now() - start_ > *opts_.time_limit) {
      throw OutOfBudget{};
    }
  }

  SolveResult run_deterministic(const ConfigurationState& initial) {
    ConfigurationState s = initial;
    for (std::size_t depth = 0;; ++depth) {
      auto vs = detect_violations(s, opts_.check);
      if (vs.empty()) return SolveResult::Solved;
      if (depth >= opts_.max_steps) return SolveResult::StepBoundReached;
      tick();
      auto actions = strategy_.generate(s, vs);
      if (actions.empty()) return SolveResult::Exhausted;
      ConfigurationState next = apply_action(s, actions.front());
      path_.push_back({depth + 1, actions.front(), next});
      s = std::move(next);
    }
  }

  SolveResult run_search(const ConfigurationState& initial) {
    const auto vs = detect_violations(initial, opts_.check);
    if (vs.empty()) return SolveResult::Solved;
    const std::size_t lb = bound(initial, vs);
    if (lb >= kUnreachable) return SolveResult::Exhausted;
    std::size_t horizon = opts_.max_steps;
    if (opts_.horizon == SolveOptions::Horizon::Deepening) horizon = std::min(opts_.max_steps, lb);
    for (;;) {
      cutoff_ = false;
      next_horizon_ = kInf;
      visited_.clear();
      horizon_ = horizon;
      if (dfs(initial, vs, 0)) return SolveResult::Solved;
      if (!cutoff_) return SolveResult::Exhausted;
      if (horizon >= opts_.max_steps) return SolveResult::StepBoundReached;
      horizon = std::min(opts_.max_steps, std::max(horizon + 1, next_horizon_));
    }
  }

  std::size_t bound(const ConfigurationState& s, const std::vector<Violation>& vs) const {
    return std::max<std::size_t>(strategy_.remaining_lower_bound(s, vs, opts_.check), 1);
  }

  bool dfs(const ConfigurationState& s, const std::vector<Violation>& vs, std::size_t depth) {
    tick();
    const std::size_t lb = bound(s, vs);
    if (lb >= kUnreachable) return false;
    const std::size_t f = depth + lb;
    if (f > horizon_) {
      cutoff_ = true;
      next_horizon_ = std::min(next_horizon_, f);
      return false;
    }
    if (opts_.visited_state_pruning) {
      auto [it, fresh] = visited_.try_emplace(s.facts(), depth);
      if (!fresh) {
        if (it->second <= depth) return false;
        it->second = depth;
      }
    }
    for (const Action& a : strategy_.generate(s, vs)) {
      ConfigurationState child = apply_action(s, a);
      auto child_vs = detect_violations(child, opts_.check);
      path_.push_back({depth + 1, a, child});
      if (child_vs.empty() || dfs(child, child_vs, depth + 1)) return true;
      path_.pop_back();
    }
    return false;
  }

  const Strategy& strategy_;
  const SolveOptions& opts_;
  Clock::time_point start_;
  std::size_t nodes_ = 0;
  std::size_t horizon_ = 0;
  std::size_t next_horizon_ = kInf;
  bool cutoff_ = false;
  std::vector<TraceStep> path_;
  std::unordered_map<std::vector<Fact>, std::size_t, FactsHash> visited_;
};

}  // namespace

StepResult step(const ConfigurationState& state, const Strategy& strategy,
                const CheckOptions& opts) {
  StepResult r;
  r.violations = detect_violations(state, opts);
  if (!r.violations.empty()) r.actions = strategy.generate(state, r.violations);
  return r;
}

StepOutcome take_step(const ConfigurationState& state, const Strategy& strategy,
                      std::size_t choice, const CheckOptions& opts) {
  auto r = step(state, strategy, opts);
  if (r.violations.empty()) return Solved{state};
  if (choice >= r.actions.size()) return DeadEnd{};
  const Action& a = r.actions[choice];
  return Continue{apply_action(state, a), a, r.actions.size() - choice - 1};
}

std::string_view to_string(SolveResult r) {
  switch (r) {
    case SolveResult::Solved: return "solved";
    case SolveResult::Exhausted: return "exhausted";
    case SolveResult::StepBoundReached: return "step_bound_reached";
    case SolveResult::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

std::vector<Action> SolveTrace::actions() const {
  std::vector<Action> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.action);
  return out;
}

SolveTrace solve(const ConfigurationState& initial, const Strategy& strategy,
                 const SolveOptions& opts) {
  if (opts.max_steps == 0) throw Error{Errc::InvalidInitialState, "max_steps must be positive"};
  const auto facts = initial.facts();
  if (!audit_facts(facts).empty()) {
    throw Error{Errc::InvalidInitialState, "initial configuration breaks a hard constraint"};
  }
  return Search{strategy, opts}.run(initial);
}

ConfigurationState replay(const ConfigurationState& initial, std::span<const Action> actions) {
  ConfigurationState s = initial;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    try {
      s = apply_action(s, actions[i]);
    } catch (const Error& e) {
      throw ReplayError{i + 1, "step " + std::to_string(i + 1) + ": " + e.what()};
    }
  }
  return s;
}

}  // namespace rackconf
