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

#include "rackconf/model.hpp"

// Text form of configurations: one fact per line, e.g.
//
//   isA(1,elementA).
//   rack_frame(3,4).
//
// Blank lines and lines starting with '%' are ignored when parsing.

namespace rackconf {

// "isA(1,elementA)" without the trailing period.
std::string format_fact(const Fact& f);

// Parses one fact term; the trailing period is optional. Throws
// Error{MalformedConfiguration} on syntax errors or unknown names.
Fact parse_fact(std::string_view text);

// Canonical text: facts sorted by (fact kind, id1, id2), one per line.
std::string print_configuration(const ConfigurationState& state);

std::vector<Fact> parse_facts(std::string_view text);

// Parses and builds a state. Any schema or hard-constraint problem is
// reported as Error{MalformedConfiguration}.
ConfigurationState parse_configuration(std::string_view text);

// Small term scanner shared by the configuration and trace readers.
namespace detail {

struct Term {
  std::string name;
  std::vector<Term> args;

  [[nodiscard]] bool is_atom() const { return args.empty(); }
};

// Parses "name(arg,...)" with nested terms; no whitespace significance.
Term parse_term(std::string_view text);
std::string trim(std::string_view s);
std::uint32_t to_id(const Term& t);
// Splits text into '.'-terminated statements, skipping blank lines and
// '%' comments.
std::vector<std::string> split_statements(std::string_view text);

}  // namespace detail
}  // namespace rackconf
