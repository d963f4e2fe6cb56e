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

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rackconf/engine.hpp"

// Bounded checks over small scopes: counterexample search for the
// deterministic algorithm and reachability questions for the UI actions.

namespace rackconf::verify {

struct Scope {
  // Each of elementA..D appears 0..max_per_element_type times in an input.
  std::size_t max_per_element_type = 0;
  std::size_t max_steps = 500;
};

// Counts of elementA, elementB, elementC, elementD.
using ElementCounts = std::array<std::size_t, 4>;

std::string to_string(const ElementCounts& c);

// Initial state with the elements in A, B, C, D blocks, ids from 1.
ConfigurationState make_input(const ElementCounts& counts);

// A witness is the tuple of objects showing one violation of a property.
using Witness = std::vector<ObjectId>;

struct PropertySpec {
  std::string name;
  std::function<std::vector<Witness>(const ConfigurationState&)> check;
};

// All modules of an element sit in one frame. Witness: the element followed
// by the frames its modules are spread over (invalid id for an unframed
// module).
PropertySpec same_frame_property();
// The final state has no violations. Witness: the subject of each one.
PropertySpec valid_property();
// "same-frame" or "valid"; nullopt otherwise.
std::optional<PropertySpec> property_by_name(std::string_view name);

struct Counterexample {
  ElementCounts input{};
  SolveTrace trace;
  std::vector<Witness> witnesses;
};

// Runs the algorithmic strategy on every input of the scope, in
// lexicographic order of (A, B, C, D) counts, and returns the first one
// whose final state breaks the property. With jobs > 1 inputs are checked
// concurrently; the result is still the first in enumeration order.
// Throws Error{ScopeExhaustedUnsolved} if some input is not solved.
std::optional<Counterexample> check_algorithm(const PropertySpec& property, const Scope& scope,
                                              std::size_t jobs = 1);

struct UiSafetyReport {
  // Action sequence reaching a state that breaks a hard constraint.
  std::optional<std::vector<Action>> hard_violation;
  std::size_t states = 0;          // distinct reachable fact sets
  std::size_t invalid_states = 0;  // with lower-bound violations left
  // Invalid states from which no valid state is reachable within the
  // remaining steps of the scope; one shortest sequence each.
  std::vector<std::vector<Action>> unrepairable;

  [[nodiscard]] bool safe() const { return !hard_violation.has_value(); }
};

// Breadth-first search over all UI action sequences of length at most
// scope.max_steps from the empty configuration.
UiSafetyReport check_ui_safety(const Scope& scope);

// Shortest UI action sequence from the empty configuration whose final
// state is isomorphic to `target`, if one exists within scope.max_steps.
// Throws Error{InvalidTarget} if target is not valid.
std::optional<std::vector<Action>> check_ui_completeness(const ConfigurationState& target,
                                                         const Scope& scope);

}  // namespace rackconf::verify
