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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Schema, configuration facts and constraint checking for the hardware
// racks domain. Racks hold frames, frames hold modules, and elements
// require modules of one specific type.
//
// Constraints come in two flavours. Upper bounds (HardConstraint) can never
// be repaired by adding facts, so they are enforced whenever a fact is added
// and a ConfigurationState violating one cannot be built. Lower bounds
// (Violation) describe missing facts; they drive the configuration actions
// and a state without any of them is a valid configuration.

namespace rackconf {

enum class ClassName : std::uint8_t {
  RackSingle,
  RackDouble,
  Frame,
  ModuleI,
  ModuleII,
  ModuleIII,
  ModuleIV,
  ModuleV,
  ElementA,
  ElementB,
  ElementC,
  ElementD,
  // Abstract groupings. Never instantiated.
  Rack,
  Module,
  Element,
};

inline constexpr std::array<ClassName, 12> kLeafClasses = {
    ClassName::RackSingle, ClassName::RackDouble, ClassName::Frame,
    ClassName::ModuleI,    ClassName::ModuleII,   ClassName::ModuleIII,
    ClassName::ModuleIV,   ClassName::ModuleV,    ClassName::ElementA,
    ClassName::ElementB,   ClassName::ElementC,   ClassName::ElementD,
};

inline constexpr std::array<ClassName, 4> kElementClasses = {
    ClassName::ElementA, ClassName::ElementB, ClassName::ElementC,
    ClassName::ElementD};

inline constexpr std::array<ClassName, 2> kRackClasses = {
    ClassName::RackSingle, ClassName::RackDouble};

constexpr bool is_leaf(ClassName c) { return c < ClassName::Rack; }
constexpr bool is_rack(ClassName c) {
  return c == ClassName::RackSingle || c == ClassName::RackDouble;
}
constexpr bool is_frame(ClassName c) { return c == ClassName::Frame; }
constexpr bool is_module(ClassName c) {
  return c >= ClassName::ModuleI && c <= ClassName::ModuleV;
}
constexpr bool is_element(ClassName c) {
  return c >= ClassName::ElementA && c <= ClassName::ElementD;
}

inline constexpr std::size_t kFrameCapacity = 5;

// Exact number of frames a rack of class `c` must hold.
constexpr std::size_t rack_capacity(ClassName c) {
  return c == ClassName::RackDouble ? 8 : 4;
}

// ElementA..D require 1..4 modules of type ModuleI..IV.
constexpr ClassName required_module(ClassName element) {
  return static_cast<ClassName>(static_cast<int>(ClassName::ModuleI) +
                                (static_cast<int>(element) -
                                 static_cast<int>(ClassName::ElementA)));
}
constexpr std::size_t required_count(ClassName element) {
  return static_cast<std::size_t>(static_cast<int>(element) -
                                  static_cast<int>(ClassName::ElementA)) +
         1;
}

// Lowercase names as used in the fact syntax, e.g. "rackSingle".
std::string_view to_string(ClassName c);
std::optional<ClassName> parse_class_name(std::string_view name);

struct ObjectId {
  std::uint32_t value = 0;

  constexpr ObjectId() = default;
  constexpr explicit ObjectId(std::uint32_t v) : value{v} {}

  [[nodiscard]] constexpr bool valid() const { return value != 0; }
  friend constexpr auto operator<=>(ObjectId, ObjectId) = default;
};

enum class AssocKind : std::uint8_t { RackFrame, FrameModule, ElementModule };

inline constexpr std::array<AssocKind, 3> kAssocKinds = {
    AssocKind::RackFrame, AssocKind::FrameModule, AssocKind::ElementModule};

std::string_view to_string(AssocKind k);
std::optional<AssocKind> parse_assoc_kind(std::string_view name);

enum class FactKind : std::uint8_t { IsA, RackFrame, FrameModule, ElementModule };

constexpr FactKind fact_kind(AssocKind k) {
  return static_cast<FactKind>(static_cast<int>(k) + 1);
}

// One configuration fact. For IsA, `first` is the object and `cls` its
// class; for associations `first`/`second` are the two endpoints in the
// order of the association name (rack_frame(rack, frame) etc.).
struct Fact {
  FactKind kind = FactKind::IsA;
  ObjectId first;
  ObjectId second;
  ClassName cls = ClassName::RackSingle;

  static constexpr Fact is_a(ObjectId id, ClassName c) {
    return Fact{FactKind::IsA, id, ObjectId{}, c};
  }
  static constexpr Fact link(AssocKind k, ObjectId a, ObjectId b) {
    return Fact{fact_kind(k), a, b, ClassName::RackSingle};
  }

  [[nodiscard]] constexpr bool is_association() const {
    return kind != FactKind::IsA;
  }
  [[nodiscard]] constexpr AssocKind assoc() const {
    return static_cast<AssocKind>(static_cast<int>(kind) - 1);
  }

  friend constexpr bool operator==(const Fact&, const Fact&) = default;
  // Canonical order: (fact kind, id1, id2).
  friend constexpr auto operator<=>(const Fact& a, const Fact& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.first <=> b.first; c != 0) return c;
    if (auto c = a.second <=> b.second; c != 0) return c;
    return a.cls <=> b.cls;
  }
};

enum class HardConstraint : std::uint8_t {
  RackSingleMaxFrames,
  RackDoubleMaxFrames,
  FrameMaxModules,
  FrameMaxOneRack,
  ModuleMaxOneFrame,
  ModuleMaxOneElement,
  ElementModuleTypeMatch,
  ElementMaxRequiredModules,
  FrameMaxOneModuleV,
};

std::string_view to_string(HardConstraint h);

enum class ViolationKind : std::uint8_t {
  RackNeedsMoreFrames,
  FrameNeedsRack,
  ModuleNeedsFrame,
  ElementNeedsModules,
  FrameModuleIIWithoutModuleV,
  FrameModuleVWithoutModuleII,
};

std::string_view to_string(ViolationKind k);

// A lower-bound constraint violation. `missing` is the number of absent
// facts of the repairing kind: frames for RackNeedsMoreFrames, modules for
// ElementNeedsModules, otherwise 1.
struct Violation {
  ViolationKind kind = ViolationKind::RackNeedsMoreFrames;
  ObjectId subject;
  std::size_t missing = 1;
  std::size_t step = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation& a, const Violation& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.subject <=> b.subject; c != 0) return c;
    if (auto c = a.missing <=> b.missing; c != 0) return c;
    return a.step <=> b.step;
  }
};

// cv-style rendering, e.g. "element_needs_modules(1,1)".
std::string to_string(const Violation& v);

struct CheckOptions {
  // Report frames holding a ModuleV but no ModuleII.
  bool module_v_requires_module_ii = true;
};

enum class Errc : std::uint8_t {
  AbstractClass,
  UnknownObject,
  DuplicateObject,
  TypeMismatch,
  UpperBoundViolation,
  MalformedConfiguration,
  InvalidInitialState,
  InapplicableAction,
  ScopeExhaustedUnsolved,
  InvalidTarget,
  IndexOutOfRange,
  UnknownStrategy,
  UnknownSession,
  StaleActionIndex,
  NothingToUndo,
};

std::string_view to_string(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error{what}, code_{code} {}
  Error(Errc code, HardConstraint constraint, const std::string& what)
      : std::runtime_error{what}, code_{code}, constraint_{constraint} {}

  [[nodiscard]] Errc code() const { return code_; }
  [[nodiscard]] std::optional<HardConstraint> constraint() const { return constraint_; }

 private:
  Errc code_;
  std::optional<HardConstraint> constraint_;
};

// Immutable set of configuration facts at one solving step.
class ConfigurationState {
 public:
  ConfigurationState() = default;

  [[nodiscard]] std::size_t step() const { return step_; }
  [[nodiscard]] ObjectId next_id() const { return ObjectId{next_id_}; }
  [[nodiscard]] std::size_t object_count() const { return ids_.size(); }
  [[nodiscard]] std::size_t link_count() const { return links_; }
  [[nodiscard]] std::size_t fact_count() const { return ids_.size() + links_; }
  [[nodiscard]] bool empty() const { return ids_.empty(); }

  // Ascending list of all object ids.
  [[nodiscard]] std::span<const ObjectId> objects() const { return ids_; }
  [[nodiscard]] bool contains(ObjectId id) const {
    return id.value < nodes_.size() && nodes_[id.value].present;
  }
  // Throws Error{UnknownObject} for ids not in the configuration.
  [[nodiscard]] ClassName class_of(ObjectId id) const;

  // Rack of a frame, frame of a module; invalid id if unassigned.
  [[nodiscard]] ObjectId container_of(ObjectId id) const { return node(id).container; }
  // Element a module is linked to; invalid id if none.
  [[nodiscard]] ObjectId element_of(ObjectId module) const { return node(module).element; }
  // Frames of a rack, modules of a frame or modules of an element, ascending.
  [[nodiscard]] std::span<const ObjectId> members(ObjectId id) const {
    return node(id).members;
  }

  [[nodiscard]] std::size_t count(ClassName c) const;
  // Ascending ids of objects whose class satisfies `pred`.
  [[nodiscard]] std::vector<ObjectId> objects_where(bool (*pred)(ClassName)) const;

  // Number of ModuleV / ModuleII modules in a frame.
  [[nodiscard]] std::size_t count_in_frame(ObjectId frame, ClassName c) const;

  // All facts in canonical order.
  [[nodiscard]] std::vector<Fact> facts() const;

  [[nodiscard]] ConfigurationState with_step(std::size_t step) const;

  // Hash over the fact set (step excluded).
  [[nodiscard]] std::size_t fact_hash() const;
  [[nodiscard]] bool same_facts(const ConfigurationState& other) const;

  friend bool operator==(const ConfigurationState&, const ConfigurationState&) = default;

 private:
  friend class StateEditor;

  struct Node {
    bool present = false;
    ClassName cls = ClassName::RackSingle;
    ObjectId container;
    ObjectId element;
    std::vector<ObjectId> members;

    friend bool operator==(const Node&, const Node&) = default;
  };

  [[nodiscard]] const Node& node(ObjectId id) const;

  std::vector<Node> nodes_{Node{}};  // index 0 is never used
  std::vector<ObjectId> ids_;
  std::size_t links_ = 0;
  std::uint32_t next_id_ = 1;
  std::size_t step_ = 0;
};

// Reason an association cannot be added.
struct AssociateRejection {
  Errc code = Errc::UnknownObject;
  std::optional<HardConstraint> constraint;
};

[[nodiscard]] std::optional<AssociateRejection> check_associate(
    const ConfigurationState& state, AssocKind kind, ObjectId first, ObjectId second);

// Applies primitive edits to a private copy of a state, enforcing the schema
// and every hard constraint on each edit. Actions are built on top of this.
class StateEditor {
 public:
  explicit StateEditor(ConfigurationState base) : state_{std::move(base)} {}

  ObjectId create(ClassName c);
  // Creates an object with an explicit id; ids must be strictly increasing.
  void create_with_id(ObjectId id, ClassName c);
  void associate(AssocKind kind, ObjectId first, ObjectId second);
  void set_step(std::size_t step) { state_.step_ = step; }

  [[nodiscard]] const ConfigurationState& view() const { return state_; }
  [[nodiscard]] ConfigurationState finish() && { return std::move(state_); }

 private:
  ConfigurationState state_;
};

[[nodiscard]] std::pair<ConfigurationState, ObjectId> create_object(
    const ConfigurationState& state, ClassName c);

[[nodiscard]] ConfigurationState associate(const ConfigurationState& state,
                                           AssocKind kind, ObjectId first,
                                           ObjectId second);

// Builds a state from an unordered fact list. Throws Error with the code of
// the first schema or hard-constraint problem encountered.
[[nodiscard]] ConfigurationState from_facts(std::span<const Fact> facts);

// Sorted set of lower-bound violations; a pure function of the facts.
[[nodiscard]] std::vector<Violation> detect_violations(const ConfigurationState& state,
                                                       const CheckOptions& opts = {});

[[nodiscard]] bool is_valid(const ConfigurationState& state, const CheckOptions& opts = {});

struct FactProblem {
  Errc code = Errc::UnknownObject;
  std::optional<HardConstraint> constraint;
  ObjectId subject;
};

// Audits a raw fact list against the schema and every hard constraint
// without going through StateEditor. Empty result means the facts form a
// representable configuration.
[[nodiscard]] std::vector<FactProblem> audit_facts(std::span<const Fact> facts);

}  // namespace rackconf

template <>
struct std::hash<rackconf::ObjectId> {
  std::size_t operator()(rackconf::ObjectId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
