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

#include "rackconf/trace_io.hpp"

#include <algorithm>

#include "rackconf/facts_io.hpp"

namespace rackconf {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error{Errc::MalformedConfiguration, "malformed trace: " + what};
}

std::size_t step_number(const detail::Term& t) {
  if (t.args.empty()) malformed("missing step number");
  const auto& n = t.args[0];
  if (n.name == "0" && n.is_atom()) return 0;
  return detail::to_id(n);
}

}  // namespace

std::string format_trace(const ConfigurationState& initial, std::span<const TraceStep> steps) {
  std::string out = "step(0).\n" + print_configuration(initial);
  const ConfigurationState* prev = &initial;
  for (const auto& s : steps) {
    const auto t = std::to_string(s.index);
    out += "step(" + t + ").\n";
    out += "action(" + t + "," + to_term(s.action) + ").\n";
    for (const auto& f : added_facts(*prev, s.state)) out += format_fact(f) + ".\n";
    prev = &s.state;
  }
  return out;
}

std::string format_trace(const SolveTrace& trace) {
  return format_trace(trace.initial, trace.steps);
}

ParsedTrace parse_trace(std::string_view text) {
  ParsedTrace out;
  std::vector<Fact> initial;
  std::size_t current = 0;
  bool seen_step = false;
  for (const auto& stmt : detail::split_statements(text)) {
    const detail::Term t = detail::parse_term(stmt);
    if (t.name == "step" && t.args.size() == 1) {
      const std::size_t n = step_number(t);
      if (n != (seen_step ? current + 1 : 0)) malformed("steps out of order at " + stmt);
      if (n > 0 && out.actions.size() != n - 1) malformed("step " + stmt + " lacks an action");
      current = n;
      seen_step = true;
      continue;
    }
    if (!seen_step) malformed("expected step(0) first");
    if (t.name == "action" && t.args.size() == 2) {
      if (step_number(t) != current || current == 0 || out.actions.size() != current - 1) {
        malformed("misplaced " + stmt);
      }
      // Re-render the action argument and parse it as an action term.
      auto render = [](const auto& self, const detail::Term& x) -> std::string {
        std::string s = x.name;
        if (x.is_atom()) return s;
        s += "(";
        for (std::size_t i = 0; i < x.args.size(); ++i) {
          if (i) s += ",";
          s += self(self, x.args[i]);
        }
        return s + ")";
      };
      out.actions.push_back(parse_action(render(render, t.args[1])));
      out.added.emplace_back();
      continue;
    }
    Fact f = parse_fact(stmt);
    if (current == 0) {
      initial.push_back(f);
    } else {
      if (out.actions.size() != current) malformed("facts before the action of step " +
                                                    std::to_string(current));
      out.added.back().push_back(f);
    }
  }
  if (seen_step && current > 0 && out.actions.size() != current) malformed("last step lacks an action");
  try {
    out.initial = from_facts(initial);
  } catch (const Error& e) {
    malformed(std::string{"initial configuration: "} + e.what());
  }
  return out;
}

ConfigurationState replay_trace(const ParsedTrace& trace) {
  ConfigurationState s = trace.initial;
  for (std::size_t i = 0; i < trace.actions.size(); ++i) {
    ConfigurationState next;
    try {
      next = apply_action(s, trace.actions[i]);
    } catch (const Error& e) {
      throw ReplayError{i + 1, "step " + std::to_string(i + 1) + ": " + e.what()};
    }
    auto got = added_facts(s, next);
    auto want = trace.added[i];
    std::sort(want.begin(), want.end());
    if (got != want) {
      throw ReplayError{i + 1, "step " + std::to_string(i + 1) +
                                   ": recorded facts differ from the action's effects"};
    }
    s = std::move(next);
  }
  return s;
}

}  // namespace rackconf
