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

#include "rackconf/model.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rackconf {

namespace {

constexpr std::array<std::string_view, 15> kClassNames = {
    "rackSingle", "rackDouble", "frame",    "moduleI",  "moduleII",
    "moduleIII",  "moduleIV",   "moduleV",  "elementA", "elementB",
    "elementC",   "elementD",   "rack",     "module",   "element"};

std::string id_str(ObjectId id) { return std::to_string(id.value); }

void insert_sorted(std::vector<ObjectId>& v, ObjectId id) {
  v.insert(std::upper_bound(v.begin(), v.end(), id), id);
}

std::optional<AssociateRejection> reject(Errc code) {
  return AssociateRejection{code, std::nullopt};
}
std::optional<AssociateRejection> reject(HardConstraint h) {
  return AssociateRejection{Errc::UpperBoundViolation, h};
}

}  // namespace

std::string_view to_string(ClassName c) { return kClassNames[static_cast<std::size_t>(c)]; }

std::optional<ClassName> parse_class_name(std::string_view name) {
  for (std::size_t i = 0; i < kClassNames.size(); ++i) {
    if (kClassNames[i] == name) return static_cast<ClassName>(i);
  }
  return std::nullopt;
}

std::string_view to_string(AssocKind k) {
  switch (k) {
    case AssocKind::RackFrame: return "rack_frame";
    case AssocKind::FrameModule: return "frame_module";
    case AssocKind::ElementModule: return "element_module";
  }
  return "?";
}

std::optional<AssocKind> parse_assoc_kind(std::string_view name) {
  for (auto k : kAssocKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(HardConstraint h) {
  switch (h) {
    case HardConstraint::RackSingleMaxFrames: return "RackSingleMaxFrames";
    case HardConstraint::RackDoubleMaxFrames: return "RackDoubleMaxFrames";
    case HardConstraint::FrameMaxModules: return "FrameMaxModules";
    case HardConstraint::FrameMaxOneRack: return "FrameMaxOneRack";
    case HardConstraint::ModuleMaxOneFrame: return "ModuleMaxOneFrame";
    case HardConstraint::ModuleMaxOneElement: return "ModuleMaxOneElement";
    case HardConstraint::ElementModuleTypeMatch: return "ElementModuleTypeMatch";
    case HardConstraint::ElementMaxRequiredModules: return "ElementMaxRequiredModules";
    case HardConstraint::FrameMaxOneModuleV: return "FrameMaxOneModuleV";
  }
  return "?";
}

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::RackNeedsMoreFrames: return "rack_needs_more_frames";
    case ViolationKind::FrameNeedsRack: return "frame_needs_rack";
    case ViolationKind::ModuleNeedsFrame: return "module_needs_frame";
    case ViolationKind::ElementNeedsModules: return "element_needs_modules";
    case ViolationKind::FrameModuleIIWithoutModuleV: return "frame_moduleII_without_moduleV";
    case ViolationKind::FrameModuleVWithoutModuleII: return "frame_moduleV_without_moduleII";
  }
  return "?";
}

std::string to_string(const Violation& v) {
  std::string out{to_string(v.kind)};
  out += '(';
  out += id_str(v.subject);
  if (v.kind == ViolationKind::ElementNeedsModules ||
      v.kind == ViolationKind::RackNeedsMoreFrames) {
    out += ',';
    out += std::to_string(v.missing);
  }
  out += ')';
  return out;
}

std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::AbstractClass: return "AbstractClass";
    case Errc::UnknownObject: return "UnknownObject";
    case Errc::DuplicateObject: return "DuplicateObject";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::UpperBoundViolation: return "UpperBoundViolation";
    case Errc::MalformedConfiguration: return "MalformedConfiguration";
    case Errc::InvalidInitialState: return "InvalidInitialState";
    case Errc::InapplicableAction: return "InapplicableAction";
    case Errc::ScopeExhaustedUnsolved: return "ScopeExhaustedUnsolved";
    case Errc::InvalidTarget: return "InvalidTarget";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::UnknownStrategy: return "UnknownStrategy";
    case Errc::UnknownSession: return "UnknownSession";
    case Errc::StaleActionIndex: return "StaleActionIndex";
    case Errc::NothingToUndo: return "NothingToUndo";
  }
  return "?";
}

// --- ConfigurationState -----------------------------------------------------

const ConfigurationState::Node& ConfigurationState::node(ObjectId id) const {
  if (!contains(id)) {
    throw Error{Errc::UnknownObject, "unknown object " + id_str(id)};
  }
  return nodes_[id.value];
}

ClassName ConfigurationState::class_of(ObjectId id) const { return node(id).cls; }

std::size_t ConfigurationState::count(ClassName c) const {
  return static_cast<std::size_t>(std::count_if(
      ids_.begin(), ids_.end(), [&](ObjectId id) { return nodes_[id.value].cls == c; }));
}

std::vector<ObjectId> ConfigurationState::objects_where(bool (*pred)(ClassName)) const {
  std::vector<ObjectId> out;
  for (auto id : ids_) {
    if (pred(nodes_[id.value].cls)) out.push_back(id);
  }
  return out;
}

std::size_t ConfigurationState::count_in_frame(ObjectId frame, ClassName c) const {
  const auto& mods = node(frame).members;
  return static_cast<std::size_t>(std::count_if(
      mods.begin(), mods.end(), [&](ObjectId m) { return nodes_[m.value].cls == c; }));
}

std::vector<Fact> ConfigurationState::facts() const {
  std::vector<Fact> out;
  out.reserve(fact_count());
  for (auto id : ids_) out.push_back(Fact::is_a(id, nodes_[id.value].cls));
  // Members are kept sorted, so walking owners in id order yields each
  // association kind already in canonical order.
  for (auto kind : kAssocKinds) {
    for (auto id : ids_) {
      const auto& n = nodes_[id.value];
      bool owner = (kind == AssocKind::RackFrame && is_rack(n.cls)) ||
                   (kind == AssocKind::FrameModule && is_frame(n.cls)) ||
                   (kind == AssocKind::ElementModule && is_element(n.cls));
      if (!owner) continue;
      for (auto m : n.members) out.push_back(Fact::link(kind, id, m));
    }
  }
  return out;
}

ConfigurationState ConfigurationState::with_step(std::size_t step) const {
  ConfigurationState copy = *this;
  copy.step_ = step;
  return copy;
}

std::size_t ConfigurationState::fact_hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (auto id : ids_) {
    const auto& n = nodes_[id.value];
    mix(id.value);
    mix(static_cast<std::uint64_t>(n.cls));
    mix(n.container.value);
    mix(n.element.value);
  }
  return h;
}

bool ConfigurationState::same_facts(const ConfigurationState& other) const {
  if (ids_ != other.ids_ || links_ != other.links_) return false;
  for (auto id : ids_) {
    const auto& a = nodes_[id.value];
    const auto& b = other.nodes_[id.value];
    if (a.cls != b.cls || a.container != b.container || a.element != b.element) {
      return false;
    }
  }
  return true;
}

// --- Editing ----------------------------------------------------------------

std::optional<AssociateRejection> check_associate(const ConfigurationState& state,
                                                  AssocKind kind, ObjectId first,
                                                  ObjectId second) {
  if (!state.contains(first) || !state.contains(second)) {
    return reject(Errc::UnknownObject);
  }
  const ClassName a = state.class_of(first);
  const ClassName b = state.class_of(second);
  switch (kind) {
    case AssocKind::RackFrame: {
      if (!is_rack(a) || !is_frame(b)) return reject(Errc::TypeMismatch);
      if (state.container_of(second).valid()) return reject(HardConstraint::FrameMaxOneRack);
      if (state.members(first).size() >= rack_capacity(a)) {
        return reject(a == ClassName::RackSingle ? HardConstraint::RackSingleMaxFrames
                                                 : HardConstraint::RackDoubleMaxFrames);
      }
      return std::nullopt;
    }
    case AssocKind::FrameModule: {
      if (!is_frame(a) || !is_module(b)) return reject(Errc::TypeMismatch);
      if (state.container_of(second).valid()) return reject(HardConstraint::ModuleMaxOneFrame);
      if (state.members(first).size() >= kFrameCapacity) {
        return reject(HardConstraint::FrameMaxModules);
      }
      if (b == ClassName::ModuleV && state.count_in_frame(first, ClassName::ModuleV) > 0) {
        return reject(HardConstraint::FrameMaxOneModuleV);
      }
      return std::nullopt;
    }
    case AssocKind::ElementModule: {
      if (!is_element(a) || !is_module(b)) return reject(Errc::TypeMismatch);
      // Cross-type links can never become valid.
      if (required_module(a) != b) {
        return AssociateRejection{Errc::TypeMismatch, HardConstraint::ElementModuleTypeMatch};
      }
      if (state.element_of(second).valid()) return reject(HardConstraint::ModuleMaxOneElement);
      if (state.members(first).size() >= required_count(a)) {
        return reject(HardConstraint::ElementMaxRequiredModules);
      }
      return std::nullopt;
    }
  }
  return reject(Errc::TypeMismatch);
}

ObjectId StateEditor::create(ClassName c) {
  ObjectId id{state_.next_id_};
  create_with_id(id, c);
  return id;
}

void StateEditor::create_with_id(ObjectId id, ClassName c) {
  if (!is_leaf(c)) {
    throw Error{Errc::AbstractClass,
                "cannot instantiate abstract class " + std::string{to_string(c)}};
  }
  if (!id.valid() || id.value < state_.next_id_) {
    throw Error{Errc::DuplicateObject, "object id " + id_str(id) + " already used"};
  }
  auto& nodes = state_.nodes_;
  if (nodes.size() <= id.value) nodes.resize(id.value + 1);
  nodes[id.value].present = true;
  nodes[id.value].cls = c;
  state_.ids_.push_back(id);
  state_.next_id_ = id.value + 1;
}

void StateEditor::associate(AssocKind kind, ObjectId first, ObjectId second) {
  if (auto r = check_associate(state_, kind, first, second)) {
    std::string msg = std::string{to_string(kind)} + "(" + id_str(first) + "," +
                      id_str(second) + ") rejected: ";
    if (r->constraint) {
      throw Error{r->code, *r->constraint, msg + std::string{to_string(*r->constraint)}};
    }
    throw Error{r->code, msg + std::string{to_string(r->code)}};
  }
  auto& nodes = state_.nodes_;
  insert_sorted(nodes[first.value].members, second);
  if (kind == AssocKind::ElementModule) {
    nodes[second.value].element = first;
  } else {
    nodes[second.value].container = first;
  }
  ++state_.links_;
}

std::pair<ConfigurationState, ObjectId> create_object(const ConfigurationState& state,
                                                      ClassName c) {
  StateEditor ed{state};
  ObjectId id = ed.create(c);
  return {std::move(ed).finish(), id};
}

ConfigurationState associate(const ConfigurationState& state, AssocKind kind,
                             ObjectId first, ObjectId second) {
  StateEditor ed{state};
  ed.associate(kind, first, second);
  return std::move(ed).finish();
}

ConfigurationState from_facts(std::span<const Fact> facts) {
  std::vector<Fact> sorted(facts.begin(), facts.end());
  std::sort(sorted.begin(), sorted.end());
  StateEditor ed{ConfigurationState{}};
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Fact& f = sorted[i];
    if (i > 0 && sorted[i - 1] == f) continue;  // a set: repeated lines are one fact
    if (f.kind == FactKind::IsA) {
      ed.create_with_id(f.first, f.cls);
    } else {
      ed.associate(f.assoc(), f.first, f.second);
    }
  }
  return std::move(ed).finish();
}

// --- Checking ---------------------------------------------------------------

std::vector<Violation> detect_violations(const ConfigurationState& state,
                                         const CheckOptions& opts) {
  std::vector<Violation> out;
  const std::size_t step = state.step();
  auto add = [&](ViolationKind k, ObjectId id, std::size_t missing = 1) {
    out.push_back(Violation{k, id, missing, step});
  };
  for (auto id : state.objects()) {
    const ClassName c = state.class_of(id);
    if (is_rack(c)) {
      const std::size_t have = state.members(id).size();
      if (have < rack_capacity(c)) {
        add(ViolationKind::RackNeedsMoreFrames, id, rack_capacity(c) - have);
      }
    } else if (is_frame(c)) {
      if (!state.container_of(id).valid()) add(ViolationKind::FrameNeedsRack, id);
      const std::size_t ii = state.count_in_frame(id, ClassName::ModuleII);
      const std::size_t v = state.count_in_frame(id, ClassName::ModuleV);
      if (ii > 0 && v == 0) add(ViolationKind::FrameModuleIIWithoutModuleV, id);
      if (opts.module_v_requires_module_ii && v > 0 && ii == 0) {
        add(ViolationKind::FrameModuleVWithoutModuleII, id);
      }
    } else if (is_module(c)) {
      if (!state.container_of(id).valid()) add(ViolationKind::ModuleNeedsFrame, id);
    } else if (is_element(c)) {
      const std::size_t have = state.members(id).size();
      if (have < required_count(c)) {
        add(ViolationKind::ElementNeedsModules, id, required_count(c) - have);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_valid(const ConfigurationState& state, const CheckOptions& opts) {
  return detect_violations(state, opts).empty();
}

std::vector<FactProblem> audit_facts(std::span<const Fact> facts) {
  std::vector<FactProblem> out;
  std::map<ObjectId, ClassName> cls;
  for (const auto& f : facts) {
    if (f.kind != FactKind::IsA) continue;
    if (!is_leaf(f.cls)) {
      out.push_back({Errc::AbstractClass, std::nullopt, f.first});
      continue;
    }
    auto [it, inserted] = cls.emplace(f.first, f.cls);
    if (!inserted) out.push_back({Errc::DuplicateObject, std::nullopt, f.first});
  }

  std::set<Fact> links;
  std::map<ObjectId, std::size_t> frames_per_rack, modules_per_frame, modules_per_element;
  std::map<ObjectId, std::size_t> racks_per_frame, frames_per_module, elements_per_module;
  std::map<ObjectId, std::size_t> v_per_frame;
  for (const auto& f : facts) {
    if (f.kind == FactKind::IsA) continue;
    auto a = cls.find(f.first);
    auto b = cls.find(f.second);
    if (a == cls.end() || b == cls.end()) {
      out.push_back({Errc::UnknownObject, std::nullopt,
                     a == cls.end() ? f.first : f.second});
      continue;
    }
    if (!links.insert(f).second) continue;
    switch (f.assoc()) {
      case AssocKind::RackFrame:
        if (!is_rack(a->second) || !is_frame(b->second)) {
          out.push_back({Errc::TypeMismatch, std::nullopt, f.first});
          continue;
        }
        ++frames_per_rack[f.first];
        ++racks_per_frame[f.second];
        break;
      case AssocKind::FrameModule:
        if (!is_frame(a->second) || !is_module(b->second)) {
          out.push_back({Errc::TypeMismatch, std::nullopt, f.first});
          continue;
        }
        ++modules_per_frame[f.first];
        ++frames_per_module[f.second];
        if (b->second == ClassName::ModuleV) ++v_per_frame[f.first];
        break;
      case AssocKind::ElementModule:
        if (!is_element(a->second) || !is_module(b->second)) {
          out.push_back({Errc::TypeMismatch, std::nullopt, f.first});
          continue;
        }
        if (required_module(a->second) != b->second) {
          out.push_back({Errc::TypeMismatch, HardConstraint::ElementModuleTypeMatch, f.first});
          continue;
        }
        ++modules_per_element[f.first];
        ++elements_per_module[f.second];
        break;
    }
  }

  auto hard = [&](HardConstraint h, ObjectId id) {
    out.push_back({Errc::UpperBoundViolation, h, id});
  };
  for (auto [rack, n] : frames_per_rack) {
    if (n > rack_capacity(cls[rack])) {
      hard(cls[rack] == ClassName::RackSingle ? HardConstraint::RackSingleMaxFrames
                                              : HardConstraint::RackDoubleMaxFrames,
           rack);
    }
  }
  for (auto [frame, n] : modules_per_frame) {
    if (n > kFrameCapacity) hard(HardConstraint::FrameMaxModules, frame);
  }
  for (auto [frame, n] : racks_per_frame) {
    if (n > 1) hard(HardConstraint::FrameMaxOneRack, frame);
  }
  for (auto [module, n] : frames_per_module) {
    if (n > 1) hard(HardConstraint::ModuleMaxOneFrame, module);
  }
  for (auto [module, n] : elements_per_module) {
    if (n > 1) hard(HardConstraint::ModuleMaxOneElement, module);
  }
  for (auto [element, n] : modules_per_element) {
    if (n > required_count(cls[element])) hard(HardConstraint::ElementMaxRequiredModules, element);
  }
  for (auto [frame, n] : v_per_frame) {
    if (n > 1) hard(HardConstraint::FrameMaxOneModuleV, frame);
  }
  return out;
}

}  // namespace rackconf
