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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rackconf/action.hpp"
#include "rackconf/model.hpp"

namespace rackconf {

// Lower bound meaning no sequence of the strategy's actions can repair the
// state.
inline constexpr std::size_t kUnreachable = std::size_t{1} << 48;

enum class StrategyKind : std::uint8_t { Generic, Ordered, Algorithmic, Ui };

inline constexpr std::array<StrategyKind, 4> kStrategyKinds = {
    StrategyKind::Generic, StrategyKind::Ordered, StrategyKind::Algorithmic, StrategyKind::Ui};

std::string_view to_string(StrategyKind k);
// Throws Error{UnknownStrategy}.
StrategyKind parse_strategy_kind(std::string_view name);

// Action generator plus selection policy. Implementations are stateless
// and safe to share between threads.
class Strategy {
 public:
  virtual ~Strategy() = default;

  [[nodiscard]] virtual StrategyKind kind() const = 0;
  [[nodiscard]] std::string_view name() const { return to_string(kind()); }
  // Deterministic strategies offer at most one action per state.
  [[nodiscard]] virtual bool deterministic() const { return false; }

  // Applicable actions in canonical order.
  [[nodiscard]] virtual std::vector<Action> generate(
      const ConfigurationState& state, std::span<const Violation> violations) const = 0;

  // Never overestimates the number of actions of this strategy needed to
  // reach a valid state, or kUnreachable. Used by the engine to prune its
  // search.
  [[nodiscard]] virtual std::size_t remaining_lower_bound(
      const ConfigurationState& state, std::span<const Violation> violations,
      const CheckOptions& opts) const = 0;
};

const Strategy& get_strategy(StrategyKind kind);
// Throws Error{UnknownStrategy}.
const Strategy& get_strategy(std::string_view name);

namespace strategies {

// Every leaf-class creation followed by every safe association not yet
// present. Empty when there are no violations.
std::vector<Action> generic_actions(const ConfigurationState& state,
                                    std::span<const Violation> violations);

// Actions of the lowest non-empty priority level: modules for elements,
// frames for modules, racks for frames, frames for racks.
std::vector<Action> ordered_actions(const ConfigurationState& state,
                                    std::span<const Violation> violations);

std::optional<Action> algorithmic_action(const ConfigurationState& state,
                                         std::span<const Violation> violations);

// Lowest-id rack that can take one more frame.
std::optional<ObjectId> first_usable_rack(const ConfigurationState& state);

// Offered regardless of violations: users may keep extending a valid
// configuration.
std::vector<Action> ui_actions(const ConfigurationState& state);

// Fact-counting bound for the generic strategy, where each action adds
// exactly one fact.
std::size_t generic_lower_bound(const ConfigurationState& state, const CheckOptions& opts);

}  // namespace strategies
}  // namespace rackconf
