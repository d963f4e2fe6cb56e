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

#include "rackconf/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include "rackconf/isomorphism.hpp"

namespace rackconf::verify {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::vector<ElementCounts> enumerate_inputs(std::size_t n) {
  std::vector<ElementCounts> out;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b)
      for (std::size_t c = 0; c <= n; ++c)
        for (std::size_t d = 0; d <= n; ++d) out.push_back({a, b, c, d});
  return out;
}

struct InputResult {
  std::optional<Counterexample> counterexample;
  std::optional<std::string> unsolved;
};

InputResult check_input(const PropertySpec& property, const ElementCounts& input,
                        std::size_t max_steps) {
  InputResult r;
  SolveOptions opts;
  opts.max_steps = max_steps;
  SolveTrace trace = solve(make_input(input), get_strategy(StrategyKind::Algorithmic), opts);
  if (trace.result != SolveResult::Solved) {
    r.unsolved = "algorithmic strategy did not solve input " + to_string(input) + " (" +
                 std::string{rackconf::to_string(trace.result)} + ")";
    return r;
  }
  auto witnesses = property.check(trace.final_state());
  if (!witnesses.empty()) r.counterexample = Counterexample{input, std::move(trace), witnesses};
  return r;
}

struct FactsHash {
  std::size_t operator()(const std::vector<Fact>& fs) const noexcept {
    std::size_t h = fs.size();
    for (const auto& f : fs) {
      std::size_t x = (static_cast<std::size_t>(f.kind) << 56) ^
                      (static_cast<std::size_t>(f.cls) << 48) ^
                      (static_cast<std::size_t>(f.first.value) << 24) ^ f.second.value;
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Reachability graph of UI action sequences. States are keyed by their
// exact fact set: the greedy frame choice of AssignElementToRack depends
// on id order, so merging merely isomorphic states could hide successors.
struct UiGraph {
  struct Node {
    ConfigurationState state;
    std::size_t depth = 0;
    std::size_t parent = kNone;
    Action via;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::vector<Fact>, std::size_t, FactsHash> index;

  std::vector<Action> path_to(std::size_t n) const {
    std::vector<Action> out;
    for (; nodes[n].parent != kNone; n = nodes[n].parent) out.push_back(nodes[n].via);
    std::reverse(out.begin(), out.end());
    return out;
  }

  // Adds the state if new; returns its node and whether it was new.
  std::pair<std::size_t, bool> add(ConfigurationState s, std::size_t depth, std::size_t parent,
                                   const Action& via) {
    auto [it, fresh] = index.try_emplace(s.facts(), nodes.size());
    if (fresh) nodes.push_back({std::move(s), depth, parent, via, {}});
    return {it->second, fresh};
  }
};

}  // namespace

std::string to_string(const ElementCounts& c) {
  return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) +
         "," + std::to_string(c[3]) + ")";
}

ConfigurationState make_input(const ElementCounts& counts) {
  StateEditor ed{ConfigurationState{}};
  for (std::size_t t = 0; t < 4; ++t) {
    for (std::size_t i = 0; i < counts[t]; ++i) ed.create(kElementClasses[t]);
  }
  return std::move(ed).finish();
}

PropertySpec same_frame_property() {
  return {"same-frame", [](const ConfigurationState& s) {
            std::vector<Witness> out;
            for (auto e : s.objects_where(is_element)) {
              std::set<ObjectId> frames;
              for (auto m : s.members(e)) frames.insert(s.container_of(m));
              if (frames.size() > 1 || frames.count(ObjectId{}) > 0) {
                Witness w{e};
                w.insert(w.end(), frames.begin(), frames.end());
                out.push_back(std::move(w));
              }
            }
            return out;
          }};
}

PropertySpec valid_property() {
  return {"valid", [](const ConfigurationState& s) {
            std::vector<Witness> out;
            for (const auto& v : detect_violations(s)) out.push_back({v.subject});
            return out;
          }};
}

std::optional<PropertySpec> property_by_name(std::string_view name) {
  if (name == "same-frame") return same_frame_property();
  if (name == "valid") return valid_property();
  return std::nullopt;
}

std::optional<Counterexample> check_algorithm(const PropertySpec& property, const Scope& scope,
                                              std::size_t jobs) {
  const auto inputs = enumerate_inputs(scope.max_per_element_type);
  std::vector<InputResult> results(inputs.size());
  // Lowest input index known to stop the enumeration; later inputs are
  // skipped since they cannot change the outcome.
  std::atomic<std::size_t> first_stop{kNone};
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= inputs.size() || i > first_stop.load()) return;
      results[i] = check_input(property, inputs[i], scope.max_steps);
      if (results[i].counterexample || results[i].unsolved) {
        std::size_t cur = first_stop.load();
        while (i < cur && !first_stop.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  jobs = std::max<std::size_t>(jobs, 1);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  const std::size_t stop = first_stop.load();
  if (stop == kNone) return std::nullopt;
  if (results[stop].unsolved) throw Error{Errc::ScopeExhaustedUnsolved, *results[stop].unsolved};
  return std::move(results[stop].counterexample);
}

UiSafetyReport check_ui_safety(const Scope& scope) {
  UiSafetyReport report;
  UiGraph g;
  g.add(ConfigurationState{}, 0, kNone, CreateElement{});
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto facts = g.nodes[i].state.facts();
    if (!report.hard_violation && !audit_facts(facts).empty()) {
      report.hard_violation = g.path_to(i);
    }
    if (g.nodes[i].depth >= scope.max_steps) continue;
    for (const Action& a : strategies::ui_actions(g.nodes[i].state)) {
      auto next = try_apply(g.nodes[i].state, a);
      if (!next) continue;
      auto [child, fresh] = g.add(std::move(*next), g.nodes[i].depth + 1, i, a);
      g.nodes[i].children.push_back(child);
    }
  }
  report.states = g.nodes.size();

  // Facts only grow along an action, so ordering by fact count is a
  // topological order of the graph.
  std::vector<std::size_t> order(g.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.nodes[a].state.fact_count() > g.nodes[b].state.fact_count();
  });
  std::vector<std::size_t> to_valid(g.nodes.size(), kNone);
  for (auto n : order) {
    if (is_valid(g.nodes[n].state)) {
      to_valid[n] = 0;
      continue;
    }
    ++report.invalid_states;
    for (auto c : g.nodes[n].children) {
      if (to_valid[c] != kNone) to_valid[n] = std::min(to_valid[n], to_valid[c] + 1);
    }
  }
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    if (to_valid[n] == kNone || g.nodes[n].depth + to_valid[n] > scope.max_steps) {
      report.unrepairable.push_back(g.path_to(n));
    }
  }
  return report;
}

std::optional<std::vector<Action>> check_ui_completeness(const ConfigurationState& target,
                                                         const Scope& scope) {
  if (!is_valid(target)) throw Error{Errc::InvalidTarget, "target configuration is not valid"};
  const std::string goal = canonical_form(target);
  std::array<std::size_t, kLeafClasses.size()> limit{};
  for (auto c : kLeafClasses) limit[static_cast<std::size_t>(c)] = target.count(c);
  auto within = [&](const ConfigurationState& s) {
    if (s.link_count() > target.link_count()) return false;
    for (auto c : kLeafClasses) {
      if (s.count(c) > limit[static_cast<std::size_t>(c)]) return false;
    }
    return true;
  };

  UiGraph g;
  g.add(ConfigurationState{}, 0, kNone, CreateElement{});
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& node = g.nodes[i];
    if (node.state.fact_count() == target.fact_count() && canonical_form(node.state) == goal) {
      return g.path_to(i);
    }
    if (node.depth >= scope.max_steps) continue;
    const ConfigurationState cur = node.state;
    const std::size_t depth = node.depth;
    for (const Action& a : strategies::ui_actions(cur)) {
      auto next = try_apply(cur, a);
      if (!next || !within(*next)) continue;
      g.add(std::move(*next), depth + 1, i, a);
    }
  }
  return std::nullopt;
}

}  // namespace rackconf::verify
