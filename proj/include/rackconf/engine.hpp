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
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "rackconf/action.hpp"
#include "rackconf/model.hpp"
#include "rackconf/strategy.hpp"

// The step-wise solve loop: detect violations, ask the strategy for the
// possible actions, apply exactly one, repeat until nothing is violated.

namespace rackconf {

struct StepResult {
  std::vector<Violation> violations;
  std::vector<Action> actions;
};

// Actions are empty for a valid state, whatever the strategy offers.
StepResult step(const ConfigurationState& state, const Strategy& strategy,
                const CheckOptions& opts = {});

struct Solved {
  ConfigurationState state;
};
struct Continue {
  ConfigurationState state;
  Action chosen;
  std::size_t alternatives_remaining = 0;
};
struct DeadEnd {};
using StepOutcome = std::variant<Solved, Continue, DeadEnd>;

// Applies the `choice`-th possible action. A choice past the end of a
// non-empty list is reported as DeadEnd.
StepOutcome take_step(const ConfigurationState& state, const Strategy& strategy,
                      std::size_t choice = 0, const CheckOptions& opts = {});

enum class SolveResult : std::uint8_t { Solved, Exhausted, StepBoundReached, BudgetExhausted };

std::string_view to_string(SolveResult r);

struct SolveOptions {
  // Horizon control. Deepening runs the depth-first search with a step
  // horizon that grows from the strategy's lower bound up to max_steps, so
  // the first trace found is also a shortest one. Fixed searches once with
  // the horizon at max_steps.
  enum class Horizon : std::uint8_t { Deepening, Fixed };

  std::size_t max_steps = 500;
  bool visited_state_pruning = false;
  std::optional<std::size_t> node_budget;
  std::optional<std::chrono::milliseconds> time_limit;
  Horizon horizon = Horizon::Deepening;
  CheckOptions check;
};

struct TraceStep {
  std::size_t index = 0;
  Action action;
  ConfigurationState state;
};

struct SolveTrace {
  ConfigurationState initial;
  std::vector<TraceStep> steps;
  SolveResult result = SolveResult::Exhausted;
  // Search nodes expanded, over all horizons.
  std::size_t nodes = 0;

  [[nodiscard]] const ConfigurationState& final_state() const {
    return steps.empty() ? initial : steps.back().state;
  }
  [[nodiscard]] std::vector<Action> actions() const;
};

// Throws Error{InvalidInitialState} if `initial` breaks a hard constraint.
SolveTrace solve(const ConfigurationState& initial, const Strategy& strategy,
                 const SolveOptions& opts = {});

// Raised by replay; step_index is 1-based.
class ReplayError : public Error {
 public:
  ReplayError(std::size_t step_index, const std::string& what)
      : Error{Errc::InapplicableAction, what}, step_index_{step_index} {}
  [[nodiscard]] std::size_t step_index() const { return step_index_; }

 private:
  std::size_t step_index_;
};

// Throws ReplayError for the first action that does not apply.
ConfigurationState replay(const ConfigurationState& initial, std::span<const Action> actions);

}  // namespace rackconf
