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

// Acceptance run: one PASS/FAIL line per primary criterion. Exit status is
// non-zero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rackconf/bench.hpp"
#include "rackconf/engine.hpp"
#include "rackconf/facts_io.hpp"
#include "rackconf/verifier.hpp"

using namespace rackconf;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string{"exception: "} + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
              since(t0));
  std::fflush(stdout);
}

ConfigurationState single(ClassName c) {
  return from_facts(std::vector{Fact::is_a(ObjectId{1}, c)});
}

bool oracle_valid(const ConfigurationState& s) {
  return oracle::check(s.facts()).verdict == oracle::Verdict::Valid;
}

Outcome generic_step_count() {
  const auto input = single(ClassName::ElementA);
  const auto bfs = oracle::generic_min_steps(input.facts(), 20);
  const auto t0 = Clock::now();
  const auto trace = solve(input, get_strategy(StrategyKind::Generic));
  const double secs = since(t0);
  std::ostringstream d;
  d << "bfs=" << (bfs ? std::to_string(*bfs) : "none") << " dfs=" << trace.steps.size()
    << " result=" << to_string(trace.result) << " solve_time=" << secs << "s";
  const bool ok = bfs == 12u && trace.result == SolveResult::Solved && trace.steps.size() >= 12 &&
                  trace.steps.size() <= SolveOptions{}.max_steps &&
                  oracle_valid(trace.final_state()) && secs < 5.0;
  return {ok, d.str()};
}

Outcome ui_step_count() {
  const auto t0 = Clock::now();
  const std::vector<Action> seq = {CreateElement{ClassName::ElementA},
                                   CreateRack{ClassName::RackSingle},
                                   AssignElementToRack{ObjectId{1}, ObjectId{2}}};
  ConfigurationState s;
  for (const auto& a : seq) {
    auto offered = strategies::ui_actions(s);
    if (std::find(offered.begin(), offered.end(), a) == offered.end()) {
      return {false, "not offered: " + to_term(a)};
    }
    s = apply_action(s, a);
  }
  const auto replayed = replay(ConfigurationState{}, seq);
  const double secs = since(t0);
  std::ostringstream d;
  d << "steps=" << replayed.step() << " valid=" << oracle_valid(replayed);
  return {replayed.step() == 3 && replayed == s && oracle_valid(replayed) && secs < 1.0, d.str()};
}

Outcome ordered_order() {
  const auto trace = solve(single(ClassName::ElementA), get_strategy(StrategyKind::Ordered));
  std::ostringstream d;
  bool ok = trace.result == SolveResult::Solved && trace.steps.size() == 4 &&
            oracle_valid(trace.final_state());
  if (ok) {
    ok = std::holds_alternative<CreateModulesForElement>(trace.steps[0].action) &&
         std::holds_alternative<CreateFrameForModule>(trace.steps[1].action) &&
         std::holds_alternative<CreateRackForFrame>(trace.steps[2].action) &&
         std::holds_alternative<CreateFramesForRack>(trace.steps[3].action);
  }
  for (const auto& s : trace.steps) d << to_term(s.action) << ' ';
  d << "length=" << trace.steps.size();
  return {ok, d.str()};
}

Outcome benchmark_pattern() {
  const auto t0 = Clock::now();
  std::vector<bench::Instance> instances;
  for (int i = 1; i <= bench::kMaxInstance; ++i) instances.push_back(bench::generate_instance(i));
  const auto results = bench::run_benchmark({"algorithmic"}, instances, std::chrono::minutes{10});
  std::size_t solved = 0;
  for (const auto& r : results) {
    if (r.outcome == bench::Outcome::Solved && r.configuration && oracle_valid(*r.configuration)) {
      ++solved;
    }
  }
  const double secs = since(t0);
  std::ostringstream d;
  d << solved << "/20 solved and independently valid, total " << secs << "s";
  return {solved == 20 && secs < 600.0, d.str()};
}

// Runs the algorithm on every input of the scope and inspects the raw facts.
std::optional<verify::ElementCounts> oracle_first_split(std::size_t n) {
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b)
      for (std::size_t c = 0; c <= n; ++c)
        for (std::size_t e = 0; e <= n; ++e) {
          const verify::ElementCounts in{a, b, c, e};
          auto t = solve(verify::make_input(in), get_strategy(StrategyKind::Algorithmic));
          if (t.result != SolveResult::Solved) continue;
          if (!oracle::split_elements(t.final_state().facts()).empty()) return in;
        }
  return std::nullopt;
}

Outcome verifier_counterexample() {
  std::ostringstream d;
  for (std::size_t scope : {3u, 5u}) {
    const auto t0 = Clock::now();
    const auto cx = verify::check_algorithm(verify::same_frame_property(), verify::Scope{scope});
    const double secs = since(t0);
    const auto expected = oracle_first_split(scope);
    d << "scope " << scope << ": ";
    if (!cx) {
      d << "none (oracle: " << (expected ? verify::to_string(*expected) : "none") << "); ";
      continue;
    }
    const auto final_state = replay(verify::make_input(cx->input), cx->trace.actions());
    const bool confirmed = expected && *expected == cx->input &&
                           !oracle::split_elements(final_state.facts()).empty();
    d << "input " << verify::to_string(cx->input) << ", witness";
    for (auto id : cx->witnesses.front()) d << ' ' << id.value;
    d << ", oracle " << (confirmed ? "confirms" : "disagrees") << ", " << secs << "s";
    return {confirmed && secs < 60.0, d.str()};
  }
  return {false, d.str()};
}

// Random action sequences, mixing actions the strategy offers with
// arbitrary ones pushed straight at apply_action.
Outcome hard_constraint_fuzz() {
  constexpr int kSequences = 10000;
  std::mt19937 rng{20260101};
  std::ostringstream d;
  bool ok = true;
  for (auto kind : kStrategyKinds) {
    const Strategy& strategy = get_strategy(kind);
    std::size_t states = 0, rejected = 0;
    for (int n = 0; n < kSequences && ok; ++n) {
      ConfigurationState s;
      const int elements = static_cast<int>(rng() % 4);
      for (int i = 0; i < elements; ++i) {
        s = apply_action(s, CreateElement{kElementClasses[rng() % 4]});
      }
      const int length = 1 + static_cast<int>(rng() % 16);
      for (int k = 0; k < length; ++k) {
        std::optional<ConfigurationState> next;
        if (rng() % 4 == 0) {
          const auto hi = static_cast<std::uint32_t>(s.next_id().value + 1);
          auto any = [&] { return ObjectId{static_cast<std::uint32_t>(rng() % hi)}; };
          const Action raw[] = {
              CreateObject{kLeafClasses[rng() % kLeafClasses.size()]},
              Associate{kAssocKinds[rng() % 3], any(), any()},
              CreateModulesForElement{any()},
              CreateFrameForModule{any(), rng() % 2 ? any() : ObjectId{}},
              CreateRackForFrame{any(), rng() % 2 ? any() : ObjectId{}, kRackClasses[rng() % 2]},
              CreateFramesForRack{any()},
              CreateElement{kElementClasses[rng() % 4]},
              CreateRack{kRackClasses[rng() % 2]},
              AssignElementToRack{any(), any()},
          };
          next = try_apply(s, raw[rng() % std::size(raw)]);
          if (!next) ++rejected;
        } else {
          const auto actions = strategy.generate(s, detect_violations(s));
          if (actions.empty()) break;
          next = apply_action(s, actions[rng() % actions.size()]);
        }
        if (!next) continue;
        s = std::move(*next);
        ++states;
        if (oracle::check(s.facts()).verdict == oracle::Verdict::Unrepresentable ||
            !audit_facts(s.facts()).empty()) {
          ok = false;
          d << to_string(kind) << " broke a hard constraint: " << print_configuration(s);
          break;
        }
      }
    }
    d << to_string(kind) << ": " << kSequences << " sequences, " << states << " states, "
      << rejected << " rejected; ";
  }
  return {ok, d.str()};
}

Outcome oracle_equivalence() {
  std::ostringstream d;
  bool ok = true;
  std::size_t inputs = 0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a; b <= 4; ++b) {
      // b == 4 means a single element.
      std::vector<Fact> facts = {Fact::is_a(ObjectId{1}, kElementClasses[a])};
      if (b < 4) facts.push_back(Fact::is_a(ObjectId{2}, kElementClasses[b]));
      const auto initial = from_facts(facts);
      const auto trace = solve(initial, get_strategy(StrategyKind::Generic));
      const auto bfs = oracle::generic_min_steps(facts, SolveOptions{}.max_steps);
      const bool engine_found = trace.result == SolveResult::Solved;
      ++inputs;
      if (engine_found != bfs.has_value() || (bfs && trace.steps.size() != *bfs) ||
          (engine_found && !oracle_valid(trace.final_state()))) {
        ok = false;
        d << "mismatch on " << print_configuration(initial) << "; ";
      }
    }
  }
  const auto empty = solve(ConfigurationState{}, get_strategy(StrategyKind::Generic));
  ok = ok && empty.result == SolveResult::Solved && empty.steps.empty() &&
       oracle::generic_min_steps({}, 1) == 0u;
  ++inputs;
  d << inputs << " initial states agree with BFS; ";

  std::size_t configs = 0, mismatches = 0;
  oracle::for_each_small_configuration(6, [&](const std::vector<Fact>& facts) {
    ++configs;
    const auto expected = oracle::check(facts);
    std::optional<ConfigurationState> built;
    try {
      built = from_facts(facts);
    } catch (const Error&) {
    }
    const bool agree = expected.verdict == oracle::Verdict::Unrepresentable
                           ? !built.has_value()
                           : built.has_value() && detect_violations(*built) == expected.violations;
    if (!agree) ++mismatches;
  });
  d << configs << " configurations of <= 6 objects, " << mismatches << " checker mismatches";
  return {ok && mismatches == 0, d.str()};
}

Outcome domainsize_sufficiency() {
  std::ostringstream d;
  bool ok = true;
  for (int i = 1; i <= 5; ++i) {
    const auto inst = bench::generate_instance(i);
    const auto trace = solve(inst.initial, get_strategy(StrategyKind::Algorithmic));
    const std::size_t objects = trace.final_state().object_count();
    const std::size_t constructed = from_facts(oracle::worst_case_facts(i)).object_count();
    const std::size_t bound = bench::worst_case_domainsize(i);
    ok = ok && trace.result == SolveResult::Solved && objects <= bound && constructed == bound;
    d << "i=" << i << ": " << objects << " <= " << bound << " (constructed " << constructed
      << "); ";
  }
  return {ok, d.str()};
}

}  // namespace

int main() {
  report("generic step count", generic_step_count);
  report("ui step count", ui_step_count);
  report("ordered order", ordered_order);
  report("benchmark pattern", benchmark_pattern);
  report("verifier counterexample", verifier_counterexample);
  report("hard-constraint impossibility", hard_constraint_fuzz);
  report("oracle equivalence", oracle_equivalence);
  report("domainsize sufficiency", domainsize_sufficiency);
  return failures == 0 ? 0 : 1;
}
