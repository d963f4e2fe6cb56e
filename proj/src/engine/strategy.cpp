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

#include "rackconf/strategy.hpp"

#include <algorithm>

namespace rackconf {

namespace {

std::size_t module_index(ClassName c) {
  return static_cast<std::size_t>(c) - static_cast<std::size_t>(ClassName::ModuleI);
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::size_t sub0(std::size_t a, std::size_t b) { return a > b ? a - b : 0; }

bool has(std::span<const Violation> vs, ViolationKind k) {
  return std::any_of(vs.begin(), vs.end(), [k](const Violation& v) { return v.kind == k; });
}

// Modules of `element` that AssignElementToRack would have to place:
// existing unframed ones plus the ones it would create.
std::vector<ClassName> pending_modules(const ConfigurationState& s, ObjectId element) {
  std::vector<ClassName> out;
  const ClassName c = s.class_of(element);
  for (auto m : s.members(element)) {
    if (!s.container_of(m).valid()) out.push_back(s.class_of(m));
  }
  for (std::size_t i = s.members(element).size(); i < required_count(c); ++i) {
    out.push_back(required_module(c));
  }
  return out;
}

// Dry run of the greedy lowest-frame-first placement.
bool assignment_fits(const ConfigurationState& s, ObjectId element, ObjectId rack) {
  struct Slot {
    std::size_t used;
    bool module_v;
  };
  std::vector<Slot> frames;
  for (auto f : s.members(rack)) {
    frames.push_back({s.members(f).size(), s.count_in_frame(f, ClassName::ModuleV) > 0});
  }
  for (ClassName m : pending_modules(s, element)) {
    const bool needs_v = m == ClassName::ModuleII;
    auto it = std::find_if(frames.begin(), frames.end(), [&](const Slot& f) {
      return f.used + ((needs_v && !f.module_v) ? 2 : 1) <= kFrameCapacity;
    });
    if (it == frames.end()) return false;
    it->used += (needs_v && !it->module_v) ? 2 : 1;
    if (needs_v) it->module_v = true;
  }
  return true;
}

bool needs_assignment(const ConfigurationState& s, ObjectId element) {
  return !pending_modules(s, element).empty();
}

class GenericStrategy final : public Strategy {
 public:
  StrategyKind kind() const override { return StrategyKind::Generic; }
  std::vector<Action> generate(const ConfigurationState& s,
                               std::span<const Violation> vs) const override {
    return strategies::generic_actions(s, vs);
  }
  std::size_t remaining_lower_bound(const ConfigurationState& s, std::span<const Violation>,
                                    const CheckOptions& opts) const override {
    return strategies::generic_lower_bound(s, opts);
  }
};

// Every module still to be framed takes one action, and so does every frame
// still to be racked (frames only join racks one at a time). Each element
// missing modules takes one more action to create them. Racks are filled
// exactly, so unless the frames to rack match the open rack slots (new
// racks bring 4 or 8), at least one further rack-level action is needed.
std::size_t ordered_bound(const ConfigurationState& s, std::span<const Violation> vs) {
  if (vs.empty()) return 0;
  std::size_t elements = 0, to_frame = 0, free_slots = 0, unracked = 0;
  std::size_t rack_deficit = 0, short_racks = 0;
  for (const auto& v : vs) {
    switch (v.kind) {
      case ViolationKind::ElementNeedsModules:
        ++elements;
        to_frame += v.missing;
        break;
      case ViolationKind::ModuleNeedsFrame: ++to_frame; break;
      case ViolationKind::FrameNeedsRack: ++unracked; break;
      case ViolationKind::RackNeedsMoreFrames:
        ++short_racks;
        rack_deficit += v.missing;
        break;
      default: break;
    }
  }
  for (auto f : s.objects_where(is_frame)) free_slots += kFrameCapacity - s.members(f).size();
  const std::size_t to_rack = unracked + ceil_div(sub0(to_frame, free_slots), kFrameCapacity);
  std::size_t rack_actions = to_rack;
  if (to_rack < rack_deficit || (to_rack > rack_deficit && (to_rack - rack_deficit) % 4 != 0)) {
    ++rack_actions;
  }
  rack_actions = std::max(rack_actions, short_racks);
  return std::max<std::size_t>(elements + to_frame + rack_actions, 1);
}

class OrderedStrategy final : public Strategy {
 public:
  StrategyKind kind() const override { return StrategyKind::Ordered; }
  std::vector<Action> generate(const ConfigurationState& s,
                               std::span<const Violation> vs) const override {
    return strategies::ordered_actions(s, vs);
  }
  std::size_t remaining_lower_bound(const ConfigurationState& s, std::span<const Violation> vs,
                                    const CheckOptions&) const override {
    return ordered_bound(s, vs);
  }
};

class AlgorithmicStrategy final : public Strategy {
 public:
  StrategyKind kind() const override { return StrategyKind::Algorithmic; }
  bool deterministic() const override { return true; }
  std::vector<Action> generate(const ConfigurationState& s,
                               std::span<const Violation> vs) const override {
    auto a = strategies::algorithmic_action(s, vs);
    if (!a) return {};
    return {*a};
  }
  std::size_t remaining_lower_bound(const ConfigurationState& s, std::span<const Violation> vs,
                                    const CheckOptions&) const override {
    return ordered_bound(s, vs);
  }
};

class UiStrategy final : public Strategy {
 public:
  StrategyKind kind() const override { return StrategyKind::Ui; }
  std::vector<Action> generate(const ConfigurationState& s,
                               std::span<const Violation>) const override {
    return strategies::ui_actions(s);
  }
  // One assignment per element with unplaced modules. UI actions never add
  // frames to an existing rack, rack an existing frame or place a module
  // that belongs to no element.
  std::size_t remaining_lower_bound(const ConfigurationState& s, std::span<const Violation> vs,
                                    const CheckOptions&) const override {
    for (const auto& v : vs) {
      if (v.kind == ViolationKind::RackNeedsMoreFrames || v.kind == ViolationKind::FrameNeedsRack ||
          (v.kind == ViolationKind::ModuleNeedsFrame && !s.element_of(v.subject).valid())) {
        return kUnreachable;
      }
    }
    std::size_t n = 0;
    for (auto e : s.objects_where(is_element)) {
      if (needs_assignment(s, e)) ++n;
    }
    return std::max<std::size_t>(n, vs.empty() ? 0 : 1);
  }
};

}  // namespace

std::string_view to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::Generic: return "generic";
    case StrategyKind::Ordered: return "ordered";
    case StrategyKind::Algorithmic: return "algorithmic";
    case StrategyKind::Ui: return "ui";
  }
  return "?";
}

StrategyKind parse_strategy_kind(std::string_view name) {
  for (auto k : kStrategyKinds) {
    if (to_string(k) == name) return k;
  }
  throw Error{Errc::UnknownStrategy, "unknown strategy '" + std::string{name} + "'"};
}

const Strategy& get_strategy(StrategyKind kind) {
  static const GenericStrategy generic;
  static const OrderedStrategy ordered;
  static const AlgorithmicStrategy algorithmic;
  static const UiStrategy ui;
  switch (kind) {
    case StrategyKind::Generic: return generic;
    case StrategyKind::Ordered: return ordered;
    case StrategyKind::Algorithmic: return algorithmic;
    case StrategyKind::Ui: return ui;
  }
  return generic;
}

const Strategy& get_strategy(std::string_view name) {
  return get_strategy(parse_strategy_kind(name));
}

namespace strategies {

std::vector<Action> generic_actions(const ConfigurationState& s,
                                    std::span<const Violation> vs) {
  std::vector<Action> out;
  if (vs.empty()) return out;
  for (auto c : kLeafClasses) out.push_back(CreateObject{c});

  const auto racks = s.objects_where(is_rack);
  const auto frames = s.objects_where(is_frame);
  const auto modules = s.objects_where(is_module);
  const auto elements = s.objects_where(is_element);
  auto pairs = [&](AssocKind k, const std::vector<ObjectId>& as,
                   const std::vector<ObjectId>& bs) {
    for (auto a : as) {
      for (auto b : bs) {
        if (!check_associate(s, k, a, b)) out.push_back(Associate{k, a, b});
      }
    }
  };
  pairs(AssocKind::RackFrame, racks, frames);
  pairs(AssocKind::FrameModule, frames, modules);
  pairs(AssocKind::ElementModule, elements, modules);
  return out;
}

std::vector<Action> ordered_actions(const ConfigurationState& s,
                                    std::span<const Violation> vs) {
  std::vector<Action> out;
  for (const auto& v : vs) {
    if (v.kind == ViolationKind::ElementNeedsModules) {
      out.push_back(CreateModulesForElement{v.subject});
    }
  }
  if (!out.empty()) return out;

  if (has(vs, ViolationKind::ModuleNeedsFrame)) {
    const auto frames = s.objects_where(is_frame);
    for (const auto& v : vs) {
      if (v.kind != ViolationKind::ModuleNeedsFrame) continue;
      const ClassName mc = s.class_of(v.subject);
      for (auto f : frames) {
        if (frame_has_room(s, f, mc)) out.push_back(CreateFrameForModule{v.subject, f});
      }
      out.push_back(CreateFrameForModule{v.subject, ObjectId{}});
    }
    return out;
  }

  if (has(vs, ViolationKind::FrameNeedsRack)) {
    const auto racks = s.objects_where(is_rack);
    for (const auto& v : vs) {
      if (v.kind != ViolationKind::FrameNeedsRack) continue;
      for (auto r : racks) {
        if (s.members(r).size() < rack_capacity(s.class_of(r))) {
          out.push_back(CreateRackForFrame{v.subject, r});
        }
      }
      for (auto rc : kRackClasses) out.push_back(CreateRackForFrame{v.subject, ObjectId{}, rc});
    }
    return out;
  }

  for (const auto& v : vs) {
    if (v.kind == ViolationKind::RackNeedsMoreFrames) out.push_back(CreateFramesForRack{v.subject});
  }
  return out;
}

std::optional<ObjectId> first_usable_rack(const ConfigurationState& s) {
  for (auto r : s.objects_where(is_rack)) {
    if (s.members(r).size() < rack_capacity(s.class_of(r))) return r;
  }
  return std::nullopt;
}

std::optional<Action> algorithmic_action(const ConfigurationState& s,
                                         std::span<const Violation> vs) {
  // Violations are sorted by (kind, subject), so the first match of a kind
  // is its lowest subject.
  auto first = [&](ViolationKind k) -> std::optional<ObjectId> {
    for (const auto& v : vs) {
      if (v.kind == k) return v.subject;
    }
    return std::nullopt;
  };
  if (auto e = first(ViolationKind::ElementNeedsModules)) return CreateModulesForElement{*e};
  if (auto m = first(ViolationKind::ModuleNeedsFrame)) {
    const ClassName mc = s.class_of(*m);
    for (auto f : s.objects_where(is_frame)) {
      if (frame_has_room(s, f, mc)) return CreateFrameForModule{*m, f};
    }
    return CreateFrameForModule{*m, ObjectId{}};
  }
  if (auto f = first(ViolationKind::FrameNeedsRack)) {
    if (auto r = first_usable_rack(s)) return CreateRackForFrame{*f, *r};
    return CreateRackForFrame{*f, ObjectId{}, ClassName::RackSingle};
  }
  if (auto r = first(ViolationKind::RackNeedsMoreFrames)) return CreateFramesForRack{*r};
  return std::nullopt;
}

std::vector<Action> ui_actions(const ConfigurationState& s) {
  std::vector<Action> out;
  for (auto c : kElementClasses) out.push_back(CreateElement{c});
  for (auto c : kRackClasses) out.push_back(CreateRack{c});
  const auto racks = s.objects_where(is_rack);
  for (auto e : s.objects_where(is_element)) {
    if (!needs_assignment(s, e)) continue;
    for (auto r : racks) {
      if (assignment_fits(s, e, r)) out.push_back(AssignElementToRack{e, r});
    }
  }
  return out;
}

std::size_t generic_lower_bound(const ConfigurationState& s, const CheckOptions& opts) {
  std::size_t element_links = 0;
  std::array<std::size_t, 5> demand{};
  std::array<std::size_t, 5> spare{};
  std::size_t unframed = 0, unframed_ii = 0, unframed_v = 0;
  std::size_t free_slots = 0, unracked = 0, rack_deficit = 0;
  std::size_t ii_without_v = 0, v_without_ii = 0;
  bool v_frame_with_room = false;

  for (auto id : s.objects()) {
    const ClassName c = s.class_of(id);
    const std::size_t n = s.members(id).size();
    if (is_element(c)) {
      const std::size_t d = required_count(c) - n;
      element_links += d;
      demand[module_index(required_module(c))] += d;
    } else if (is_module(c)) {
      if (!s.element_of(id).valid()) ++spare[module_index(c)];
      if (!s.container_of(id).valid()) {
        ++unframed;
        if (c == ClassName::ModuleII) ++unframed_ii;
        if (c == ClassName::ModuleV) ++unframed_v;
      }
    } else if (is_frame(c)) {
      if (!s.container_of(id).valid()) ++unracked;
      free_slots += kFrameCapacity - n;
      const bool ii = s.count_in_frame(id, ClassName::ModuleII) > 0;
      const bool v = s.count_in_frame(id, ClassName::ModuleV) > 0;
      if (ii && !v) ++ii_without_v;
      if (v && !ii) ++v_without_ii;
      if (v && n < kFrameCapacity) v_frame_with_room = true;
    } else if (is_rack(c)) {
      rack_deficit += rack_capacity(c) - n;
    }
  }

  std::size_t new_modules = 0;
  for (std::size_t t = 0; t < 4; ++t) new_modules += sub0(demand[t], spare[t]);
  const std::size_t new_ii = sub0(demand[1], spare[1]);

  // Every unframed or new module needs a frame link; slots beyond the
  // existing free ones need new frames.
  const std::size_t to_frame = unframed + new_modules;
  const std::size_t new_frames_min = ceil_div(sub0(to_frame, free_slots), kFrameCapacity);

  // Racks are filled exactly, so new racks add capacity in multiples of 4.
  const std::size_t to_rack = unracked + new_frames_min;
  const std::size_t units = to_rack > rack_deficit ? ceil_div(to_rack - rack_deficit, 4) : 0;
  const std::size_t new_frames = rack_deficit + 4 * units - unracked;
  const std::size_t new_racks = ceil_div(units, 2);

  const std::size_t pending_ii = unframed_ii + new_ii;
  std::size_t need_v = ii_without_v;
  if (pending_ii > 0 && ii_without_v == 0 && !v_frame_with_room) need_v = 1;

  std::size_t total = element_links + new_modules + to_frame + new_frames +
                      (unracked + new_frames) + new_racks + 2 * sub0(need_v, unframed_v);
  if (opts.module_v_requires_module_ii) total += 2 * sub0(v_without_ii, pending_ii);
  return total;
}

}  // namespace strategies
}  // namespace rackconf
