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

#include "rackconf/facts_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace rackconf {

namespace detail {

namespace {

[[noreturn]] void malformed(std::string_view what, std::string_view text) {
  throw Error{Errc::MalformedConfiguration,
              std::string{what} + ": '" + std::string{text} + "'"};
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_{text} {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) malformed("trailing input", text_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Term term() {
    skip_ws();
    Term t;
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) malformed("expected a name", text_);
    t.name = std::string{text_.substr(start, pos_ - start)};
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      for (;;) {
        t.args.push_back(term());
        skip_ws();
        if (pos_ >= text_.size()) malformed("unbalanced parenthesis", text_);
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        malformed("unexpected character", text_);
      }
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return TermParser{text}.parse(); }

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string{s.substr(b, e - b + 1)};
}

std::uint32_t to_id(const Term& t) {
  std::uint32_t v = 0;
  const auto& s = t.name;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (!t.is_atom() || ec != std::errc{} || ptr != s.data() + s.size() || v == 0) {
    malformed("expected a positive object id", s);
  }
  return v;
}

std::vector<std::string> split_statements(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || line.front() == '%') continue;
    // Several statements may share a line: "isA(1,frame). isA(2,moduleI)."
    std::size_t start = 0;
    while (start < line.size()) {
      auto dot = line.find('.', start);
      std::string piece = trim(std::string_view{line}.substr(
          start, dot == std::string::npos ? std::string::npos : dot - start));
      if (!piece.empty()) out.push_back(std::move(piece));
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
  }
  return out;
}

}  // namespace detail

std::string format_fact(const Fact& f) {
  std::string out;
  if (f.kind == FactKind::IsA) {
    out = "isA(" + std::to_string(f.first.value) + "," + std::string{to_string(f.cls)} + ")";
  } else {
    out = std::string{to_string(f.assoc())} + "(" + std::to_string(f.first.value) + "," +
          std::to_string(f.second.value) + ")";
  }
  return out;
}

Fact parse_fact(std::string_view text) {
  std::string body = detail::trim(text);
  if (!body.empty() && body.back() == '.') body.pop_back();
  detail::Term t = detail::parse_term(body);
  if (t.args.size() != 2) detail::malformed("expected a binary fact", text);
  if (t.name == "isA") {
    auto cls = parse_class_name(t.args[1].name);
    if (!cls || !t.args[1].is_atom()) detail::malformed("unknown class", text);
    return Fact::is_a(ObjectId{detail::to_id(t.args[0])}, *cls);
  }
  auto kind = parse_assoc_kind(t.name);
  if (!kind) detail::malformed("unknown fact", text);
  return Fact::link(*kind, ObjectId{detail::to_id(t.args[0])},
                    ObjectId{detail::to_id(t.args[1])});
}

std::string print_configuration(const ConfigurationState& state) {
  std::string out;
  for (const auto& f : state.facts()) {
    out += format_fact(f);
    out += ".\n";
  }
  return out;
}

std::vector<Fact> parse_facts(std::string_view text) {
  std::vector<Fact> facts;
  for (const auto& piece : detail::split_statements(text)) facts.push_back(parse_fact(piece));
  return facts;
}

ConfigurationState parse_configuration(std::string_view text) {
  auto facts = parse_facts(text);
  try {
    return from_facts(facts);
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedConfiguration) throw;
    throw Error{Errc::MalformedConfiguration,
                std::string{"invalid configuration ("} + std::string{to_string(e.code())} +
                    "): " + e.what()};
  }
}

}  // namespace rackconf
