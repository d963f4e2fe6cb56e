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

#include <string>
#include <string_view>
#include <vector>

#include "rackconf/engine.hpp"

// Line-oriented trace files:
//
//   step(0).
//   isA(1,elementA).
//   step(1).
//   action(1,create_modules_for_element(1)).
//   isA(2,moduleI).
//   element_module(1,2).
//
// Step 0 lists the initial configuration; every later step names its
// action followed by the facts it added.

namespace rackconf {

std::string format_trace(const ConfigurationState& initial, std::span<const TraceStep> steps);
std::string format_trace(const SolveTrace& trace);

struct ParsedTrace {
  ConfigurationState initial;
  std::vector<Action> actions;
  std::vector<std::vector<Fact>> added;  // per action, as recorded
};

// Throws Error{MalformedConfiguration}.
ParsedTrace parse_trace(std::string_view text);

// Replays the actions and checks each step adds exactly the recorded
// facts. Throws ReplayError on the first mismatch.
ConfigurationState replay_trace(const ParsedTrace& trace);

}  // namespace rackconf
