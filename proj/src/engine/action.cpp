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

#include "rackconf/action.hpp"

#include <algorithm>
#include <iterator>

#include "rackconf/facts_io.hpp"

namespace rackconf {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(ObjectId id) { return std::to_string(id.value); }

[[noreturn]] void inapplicable(const Action& a, const std::string& why) {
  throw Error{Errc::InapplicableAction, to_term(a) + ": " + why};
}

ClassName expect_class(const ConfigurationState& s, ObjectId id, bool (*pred)(ClassName),
                       const Action& a, std::string_view role) {
  if (!s.contains(id)) inapplicable(a, "unknown object " + num(id));
  ClassName c = s.class_of(id);
  if (!pred(c)) inapplicable(a, "object " + num(id) + " is not a " + std::string{role});
  return c;
}

// Links a module into a frame; a ModuleII also gets a ModuleV if the frame
// has none.
void place_module(StateEditor& ed, ObjectId frame, ObjectId module) {
  ed.associate(AssocKind::FrameModule, frame, module);
  if (ed.view().class_of(module) == ClassName::ModuleII &&
      ed.view().count_in_frame(frame, ClassName::ModuleV) == 0) {
    ObjectId v = ed.create(ClassName::ModuleV);
    ed.associate(AssocKind::FrameModule, frame, v);
  }
}

void create_missing_modules(StateEditor& ed, ObjectId element) {
  const ClassName c = ed.view().class_of(element);
  const std::size_t have = ed.view().members(element).size();
  for (std::size_t i = have; i < required_count(c); ++i) {
    ObjectId m = ed.create(required_module(c));
    ed.associate(AssocKind::ElementModule, element, m);
  }
}

void apply_edits(StateEditor& ed, const Action& action) {
  // `s` is the state before any edit of this action.
  const ConfigurationState s = ed.view();
  std::visit(
      overloaded{
          [&](const CreateObject& a) { ed.create(a.cls); },
          [&](const Associate& a) { ed.associate(a.kind, a.first, a.second); },
          [&](const CreateModulesForElement& a) {
            ClassName c = expect_class(s, a.element, is_element, action, "element");
            if (s.members(a.element).size() >= required_count(c)) {
              inapplicable(action, "element has all its modules");
            }
            create_missing_modules(ed, a.element);
          },
          [&](const CreateFrameForModule& a) {
            expect_class(s, a.module, is_module, action, "module");
            if (s.container_of(a.module).valid()) inapplicable(action, "module already framed");
            ObjectId frame = a.frame;
            if (frame.valid()) {
              expect_class(s, frame, is_frame, action, "frame");
              if (!frame_has_room(s, frame, s.class_of(a.module))) {
                inapplicable(action, "frame has no room");
              }
            } else {
              frame = ed.create(ClassName::Frame);
            }
            place_module(ed, frame, a.module);
          },
          [&](const CreateRackForFrame& a) {
            expect_class(s, a.frame, is_frame, action, "frame");
            if (s.container_of(a.frame).valid()) inapplicable(action, "frame already racked");
            ObjectId rack = a.rack;
            if (rack.valid()) {
              expect_class(s, rack, is_rack, action, "rack");
            } else {
              if (!is_rack(a.new_rack)) inapplicable(action, "not a rack class");
              rack = ed.create(a.new_rack);
            }
            ed.associate(AssocKind::RackFrame, rack, a.frame);
          },
          [&](const CreateFramesForRack& a) {
            ClassName c = expect_class(s, a.rack, is_rack, action, "rack");
            const std::size_t have = s.members(a.rack).size();
            if (have >= rack_capacity(c)) inapplicable(action, "rack is full");
            for (std::size_t i = have; i < rack_capacity(c); ++i) {
              ObjectId f = ed.create(ClassName::Frame);
              ed.associate(AssocKind::RackFrame, a.rack, f);
            }
          },
          [&](const CreateElement& a) {
            if (!is_element(a.cls)) inapplicable(action, "not an element class");
            ed.create(a.cls);
          },
          [&](const CreateRack& a) {
            if (!is_rack(a.cls)) inapplicable(action, "not a rack class");
            ObjectId rack = ed.create(a.cls);
            for (std::size_t i = 0; i < rack_capacity(a.cls); ++i) {
              ObjectId f = ed.create(ClassName::Frame);
              ed.associate(AssocKind::RackFrame, rack, f);
            }
          },
          [&](const AssignElementToRack& a) {
            expect_class(s, a.element, is_element, action, "element");
            expect_class(s, a.rack, is_rack, action, "rack");
            create_missing_modules(ed, a.element);
            std::vector<ObjectId> pending;
            for (auto m : ed.view().members(a.element)) {
              if (!ed.view().container_of(m).valid()) pending.push_back(m);
            }
            if (pending.empty()) inapplicable(action, "element has no unplaced modules");
            for (auto m : pending) {
              const ConfigurationState& cur = ed.view();
              auto frames = cur.members(a.rack);
              auto it = std::find_if(frames.begin(), frames.end(), [&](ObjectId f) {
                return frame_has_room(cur, f, cur.class_of(m));
              });
              if (it == frames.end()) inapplicable(action, "rack has no room");
              place_module(ed, *it, m);
            }
          },
      },
      action);
}

std::string target_term(ObjectId id) { return id.valid() ? num(id) : "new"; }

}  // namespace

bool frame_has_room(const ConfigurationState& state, ObjectId frame, ClassName module_class) {
  const std::size_t used = state.members(frame).size();
  const std::size_t v = state.count_in_frame(frame, ClassName::ModuleV);
  if (module_class == ClassName::ModuleV) return v == 0 && used < kFrameCapacity;
  const std::size_t need = (module_class == ClassName::ModuleII && v == 0) ? 2 : 1;
  return used + need <= kFrameCapacity;
}

std::string to_term(const Action& action) {
  return std::visit(
      overloaded{
          [](const CreateObject& a) {
            return "create_object(" + std::string{to_string(a.cls)} + ")";
          },
          [](const Associate& a) {
            return "associate(" + std::string{to_string(a.kind)} + "," + num(a.first) + "," +
                   num(a.second) + ")";
          },
          [](const CreateModulesForElement& a) {
            return "create_modules_for_element(" + num(a.element) + ")";
          },
          [](const CreateFrameForModule& a) {
            return "create_frame_for_module(" + num(a.module) + "," + target_term(a.frame) + ")";
          },
          [](const CreateRackForFrame& a) {
            std::string target = a.rack.valid()
                                     ? num(a.rack)
                                     : "new(" + std::string{to_string(a.new_rack)} + ")";
            return "create_rack_for_frame(" + num(a.frame) + "," + target + ")";
          },
          [](const CreateFramesForRack& a) {
            return "create_frames_for_rack(" + num(a.rack) + ")";
          },
          [](const CreateElement& a) {
            return "create_element(" + std::string{to_string(a.cls)} + ")";
          },
          [](const CreateRack& a) {
            return "create_rack(" + std::string{to_string(a.cls)} + ")";
          },
          [](const AssignElementToRack& a) {
            return "assign_element_to_rack(" + num(a.element) + "," + num(a.rack) + ")";
          },
      },
      action);
}

Action parse_action(std::string_view text) {
  using detail::Term;
  const Term t = detail::parse_term(detail::trim(text));
  auto bad = [&]() {
    throw Error{Errc::MalformedConfiguration, "malformed action: '" + std::string{text} + "'"};
  };
  auto id = [](const Term& x) { return ObjectId{detail::to_id(x)}; };
  auto cls = [&](const Term& x) {
    auto c = parse_class_name(x.name);
    if (!c || !x.is_atom()) bad();
    return *c;
  };
  const auto n = t.args.size();
  if (t.name == "create_object" && n == 1) return CreateObject{cls(t.args[0])};
  if (t.name == "associate" && n == 3) {
    auto k = parse_assoc_kind(t.args[0].name);
    if (!k) bad();
    return Associate{*k, id(t.args[1]), id(t.args[2])};
  }
  if (t.name == "create_modules_for_element" && n == 1) {
    return CreateModulesForElement{id(t.args[0])};
  }
  if (t.name == "create_frame_for_module" && n == 2) {
    const bool fresh = t.args[1].name == "new" && t.args[1].is_atom();
    return CreateFrameForModule{id(t.args[0]), fresh ? ObjectId{} : id(t.args[1])};
  }
  if (t.name == "create_rack_for_frame" && n == 2) {
    const Term& target = t.args[1];
    if (target.name == "new" && target.args.size() == 1) {
      return CreateRackForFrame{id(t.args[0]), ObjectId{}, cls(target.args[0])};
    }
    return CreateRackForFrame{id(t.args[0]), id(target), ClassName::RackSingle};
  }
  if (t.name == "create_frames_for_rack" && n == 1) return CreateFramesForRack{id(t.args[0])};
  if (t.name == "create_element" && n == 1) return CreateElement{cls(t.args[0])};
  if (t.name == "create_rack" && n == 1) return CreateRack{cls(t.args[0])};
  if (t.name == "assign_element_to_rack" && n == 2) {
    return AssignElementToRack{id(t.args[0]), id(t.args[1])};
  }
  bad();
  return CreateObject{};
}

std::string describe(const Action& action) {
  return std::visit(
      overloaded{
          [](const CreateObject& a) { return "Create a " + std::string{to_string(a.cls)}; },
          [](const Associate& a) {
            return "Link " + num(a.first) + " and " + num(a.second) + " (" +
                   std::string{to_string(a.kind)} + ")";
          },
          [](const CreateModulesForElement& a) {
            return "Create all missing modules of element " + num(a.element);
          },
          [](const CreateFrameForModule& a) {
            return "Put module " + num(a.module) + " into " +
                   (a.frame.valid() ? "frame " + num(a.frame) : std::string{"a new frame"});
          },
          [](const CreateRackForFrame& a) {
            return "Put frame " + num(a.frame) + " into " +
                   (a.rack.valid() ? "rack " + num(a.rack)
                                   : "a new " + std::string{to_string(a.new_rack)});
          },
          [](const CreateFramesForRack& a) {
            return "Fill rack " + num(a.rack) + " with new frames";
          },
          [](const CreateElement& a) { return "Create a " + std::string{to_string(a.cls)}; },
          [](const CreateRack& a) {
            return "Create a " + std::string{to_string(a.cls)} + " with its frames";
          },
          [](const AssignElementToRack& a) {
            return "Assign element " + num(a.element) + " to rack " + num(a.rack);
          },
      },
      action);
}

ConfigurationState apply_action(const ConfigurationState& state, const Action& a) {
  StateEditor ed{state};
  try {
    apply_edits(ed, a);
  } catch (const Error& e) {
    if (e.code() == Errc::InapplicableAction) throw;
    throw Error{Errc::InapplicableAction, to_term(a) + ": " + e.what()};
  }
  ed.set_step(state.step() + 1);
  return std::move(ed).finish();
}

std::optional<ConfigurationState> try_apply(const ConfigurationState& state, const Action& a) {
  try {
    return apply_action(state, a);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<Fact> added_facts(const ConfigurationState& before, const ConfigurationState& after) {
  auto a = before.facts();
  auto b = after.facts();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Fact> out;
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(out));
  return out;
}

std::vector<Fact> action_effects(const ConfigurationState& state, const Action& a) {
  return added_facts(state, apply_action(state, a));
}

}  // namespace rackconf
