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
#include <variant>
#include <vector>

#include "rackconf/model.hpp"

namespace rackconf {

// Generic actions: one fact each.
struct CreateObject {
  ClassName cls = ClassName::Frame;
  friend bool operator==(const CreateObject&, const CreateObject&) = default;
};
struct Associate {
  AssocKind kind = AssocKind::RackFrame;
  ObjectId first;
  ObjectId second;
  friend bool operator==(const Associate&, const Associate&) = default;
};

// Ordered / algorithmic actions.
struct CreateModulesForElement {
  ObjectId element;
  friend bool operator==(const CreateModulesForElement&, const CreateModulesForElement&) = default;
};
// An invalid `frame` id means "create a new frame".
struct CreateFrameForModule {
  ObjectId module;
  ObjectId frame;
  friend bool operator==(const CreateFrameForModule&, const CreateFrameForModule&) = default;
};
// An invalid `rack` id means "create a new rack of class `new_rack`".
struct CreateRackForFrame {
  ObjectId frame;
  ObjectId rack;
  ClassName new_rack = ClassName::RackSingle;
  friend bool operator==(const CreateRackForFrame&, const CreateRackForFrame&) = default;
};
struct CreateFramesForRack {
  ObjectId rack;
  friend bool operator==(const CreateFramesForRack&, const CreateFramesForRack&) = default;
};

// UI actions.
struct CreateElement {
  ClassName cls = ClassName::ElementA;
  friend bool operator==(const CreateElement&, const CreateElement&) = default;
};
// Creates the rack together with all of its frames.
struct CreateRack {
  ClassName cls = ClassName::RackSingle;
  friend bool operator==(const CreateRack&, const CreateRack&) = default;
};
struct AssignElementToRack {
  ObjectId element;
  ObjectId rack;
  friend bool operator==(const AssignElementToRack&, const AssignElementToRack&) = default;
};

using Action = std::variant<CreateObject, Associate, CreateModulesForElement,
                            CreateFrameForModule, CreateRackForFrame, CreateFramesForRack,
                            CreateElement, CreateRack, AssignElementToRack>;

// Term syntax used in traces, e.g. "create_frame_for_module(5,new)".
std::string to_term(const Action& a);
// Throws Error{MalformedConfiguration} on bad syntax.
Action parse_action(std::string_view text);

// Short human-readable description for UIs.
std::string describe(const Action& a);

// Applies an action and advances the step counter by one. Throws
// Error{InapplicableAction} if the action references missing or unsuitable
// objects, would add no fact, or would break a hard constraint.
ConfigurationState apply_action(const ConfigurationState& state, const Action& a);

// Like apply_action but reports inapplicability as nullopt.
std::optional<ConfigurationState> try_apply(const ConfigurationState& state, const Action& a);

// Facts in `after` but not in `before`, canonical order.
std::vector<Fact> added_facts(const ConfigurationState& before, const ConfigurationState& after);

// Facts the action would add to `state`.
std::vector<Fact> action_effects(const ConfigurationState& state, const Action& a);

// True if `frame` can take `module_class`, counting the ModuleV that is
// added alongside a ModuleII when the frame has none yet.
bool frame_has_room(const ConfigurationState& state, ObjectId frame, ClassName module_class);

}  // namespace rackconf
