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

#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "rackconf/facts_io.hpp"
#include "rackconf/isomorphism.hpp"
#include "rackconf/model.hpp"

using namespace rackconf;

namespace {

ObjectId id(std::uint32_t v) { return ObjectId{v}; }

ConfigurationState minimal_element_a() {
  return parse_configuration(
      "isA(1,elementA). isA(2,moduleI). isA(3,rackSingle).\n"
      "isA(4,frame). isA(5,frame). isA(6,frame). isA(7,frame).\n"
      "element_module(1,2). frame_module(4,2).\n"
      "rack_frame(3,4). rack_frame(3,5). rack_frame(3,6). rack_frame(3,7).\n");
}

Errc error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::UnknownObject;
}

}  // namespace

TEST_CASE("create_object assigns increasing ids") {
  auto [s1, a] = create_object(ConfigurationState{}, ClassName::ElementA);
  CHECK(a == id(1));
  CHECK(s1.facts() == std::vector<Fact>{Fact::is_a(id(1), ClassName::ElementA)});
  auto [s2, b] = create_object(s1, ClassName::Frame);
  auto [s3, c] = create_object(s2, ClassName::Frame);
  auto [s4, d] = create_object(s3, ClassName::Frame);
  CHECK(d == id(4));
  CHECK(s4.object_count() == 4);
  CHECK(error_of([] { (void)create_object(ConfigurationState{}, ClassName::Rack); }) ==
        Errc::AbstractClass);
}

TEST_CASE("hard constraints reject the edit") {
  auto s = parse_configuration(
      "isA(1,rackSingle). isA(2,frame). isA(3,frame). isA(4,frame). isA(5,frame). isA(6,frame).\n"
      "rack_frame(1,2). rack_frame(1,3). rack_frame(1,4). rack_frame(1,5).\n");
  try {
    (void)associate(s, AssocKind::RackFrame, id(1), id(6));
    FAIL("accepted a fifth frame");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UpperBoundViolation);
    CHECK(e.constraint() == HardConstraint::RackSingleMaxFrames);
  }

  auto t = parse_configuration("isA(1,elementA). isA(2,moduleII).");
  CHECK(error_of([&] { (void)associate(t, AssocKind::ElementModule, id(1), id(2)); }) ==
        Errc::TypeMismatch);

  std::string text = "isA(1,frame).";
  for (int m = 2; m <= 7; ++m) text += " isA(" + std::to_string(m) + ",moduleI).";
  for (int m = 2; m <= 6; ++m) text += " frame_module(1," + std::to_string(m) + ").";
  auto full = parse_configuration(text);
  try {
    (void)associate(full, AssocKind::FrameModule, id(1), id(7));
    FAIL("accepted a sixth module");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UpperBoundViolation);
    CHECK(e.constraint() == HardConstraint::FrameMaxModules);
  }
}

TEST_CASE("detect_violations examples") {
  CHECK(detect_violations(ConfigurationState{}).empty());
  CHECK(is_valid(ConfigurationState{}));

  auto a = parse_configuration("isA(1,elementA).");
  CHECK(detect_violations(a) ==
        std::vector<Violation>{{ViolationKind::ElementNeedsModules, id(1), 1, 0}});
  CHECK_FALSE(is_valid(a));

  auto r = parse_configuration("isA(1,rackSingle).");
  CHECK(detect_violations(r) ==
        std::vector<Violation>{{ViolationKind::RackNeedsMoreFrames, id(1), 4, 0}});

  auto m = minimal_element_a();
  CHECK(m.object_count() == 7);
  CHECK(m.link_count() == 6);
  CHECK(is_valid(m));
  CHECK(oracle::check(m.facts()).verdict == oracle::Verdict::Valid);
}

TEST_CASE("moduleV rules in both directions") {
  auto ii = parse_configuration(
      "isA(1,frame). isA(2,moduleII). frame_module(1,2). isA(3,rackSingle). rack_frame(3,1).");
  auto vs = detect_violations(ii);
  CHECK(std::count_if(vs.begin(), vs.end(), [](const Violation& v) {
          return v.kind == ViolationKind::FrameModuleIIWithoutModuleV;
        }) == 1);

  auto v = parse_configuration("isA(1,frame). isA(2,moduleV). frame_module(1,2).");
  auto with = detect_violations(v, CheckOptions{true});
  auto without = detect_violations(v, CheckOptions{false});
  CHECK(with.size() == without.size() + 1);
  CHECK(std::find_if(with.begin(), with.end(), [](const Violation& x) {
          return x.kind == ViolationKind::FrameModuleVWithoutModuleII;
        }) != with.end());

  CHECK(error_of([] {
          (void)parse_configuration(
              "isA(1,frame). isA(2,moduleV). isA(3,moduleV). frame_module(1,2). "
              "frame_module(1,3).");
        }) == Errc::MalformedConfiguration);
}

TEST_CASE("from_facts rules") {
  std::vector<Fact> dup = {Fact::is_a(id(1), ClassName::ElementA),
                           Fact::is_a(id(1), ClassName::ElementA)};
  CHECK(from_facts(dup).object_count() == 1);
  std::vector<Fact> clash = {Fact::is_a(id(1), ClassName::ElementA),
                             Fact::is_a(id(1), ClassName::Frame)};
  CHECK(error_of([&] { (void)from_facts(clash); }) == Errc::DuplicateObject);
  std::vector<Fact> zero = {Fact::is_a(id(0), ClassName::Frame)};
  CHECK_THROWS_AS((void)from_facts(zero), Error);
  std::vector<Fact> abstract = {Fact::is_a(id(1), ClassName::Module)};
  CHECK(error_of([&] { (void)from_facts(abstract); }) == Errc::AbstractClass);
  std::vector<Fact> dangling = {Fact::is_a(id(1), ClassName::Frame),
                                Fact::link(AssocKind::RackFrame, id(2), id(1))};
  CHECK(error_of([&] { (void)from_facts(dangling); }) == Errc::UnknownObject);
  std::vector<Fact> gaps = {Fact::is_a(id(3), ClassName::Frame),
                            Fact::is_a(id(9), ClassName::ModuleI)};
  auto g = from_facts(gaps);
  CHECK(g.next_id() == id(10));
}

TEST_CASE("text round trip is canonical") {
  const auto m = minimal_element_a();
  const std::string text = print_configuration(m);
  CHECK(print_configuration(parse_configuration(text)) == text);
  CHECK(text.rfind("isA(1,elementA).", 0) == 0);
  for (const auto& f : m.facts()) CHECK(parse_fact(format_fact(f)) == f);
  CHECK(parse_facts("% comment\n\nisA(2,frame).\n").size() == 1);
  CHECK(error_of([] { (void)parse_configuration("isA(1,widget)."); }) ==
        Errc::MalformedConfiguration);
  CHECK(error_of([] { (void)parse_configuration("isA(1,frame"); }) ==
        Errc::MalformedConfiguration);
}

TEST_CASE("checker agrees with the per-constraint oracle on all small configurations") {
  for (bool reverse : {true, false}) {
    CAPTURE(reverse);
    std::size_t total = 0, representable = 0, valid = 0;
    oracle::for_each_small_configuration(6, [&](const std::vector<Fact>& facts) {
      ++total;
      const auto expected = oracle::check(facts, reverse);
      const bool audited = audit_facts(facts).empty();
      std::optional<ConfigurationState> built;
      try {
        built = from_facts(facts);
      } catch (const Error&) {
      }
      if (expected.verdict == oracle::Verdict::Unrepresentable) {
        if (built.has_value() || audited) {
          FAIL("accepted: " << print_configuration(*built));
        }
        return;
      }
      ++representable;
      if (!built || !audited) FAIL("rejected a representable configuration");
      const auto got = detect_violations(*built, CheckOptions{reverse});
      if (got != expected.violations) {
        FAIL("violations differ on " << print_configuration(*built));
      }
      if (is_valid(*built, CheckOptions{reverse})) ++valid;
      // Pure function of the facts.
      if (detect_violations(*built, CheckOptions{reverse}) != got) FAIL("not deterministic");
    });
    MESSAGE("configurations: " << total << ", representable: " << representable
                               << ", valid: " << valid);
    CHECK(total > 0);
    CHECK(valid > 0);
  }
}

TEST_CASE("canonical_form matches brute-force isomorphism") {
  std::vector<std::vector<Fact>> sample;
  std::size_t n = 0;
  std::mt19937 rng{11};
  oracle::for_each_small_configuration(4, [&](const std::vector<Fact>& facts) {
    if (oracle::check(facts).verdict == oracle::Verdict::Unrepresentable) return;
    if (n++ % 13 != 0) return;
    sample.push_back(facts);
    // The same configuration under shuffled, spread-out ids.
    std::vector<std::uint32_t> ids;
    for (const auto& f : facts) if (f.kind == FactKind::IsA) ids.push_back(f.first.value);
    std::vector<std::uint32_t> image = ids;
    std::shuffle(image.begin(), image.end(), rng);
    std::map<std::uint32_t, std::uint32_t> rename;
    for (std::size_t i = 0; i < ids.size(); ++i) rename[ids[i]] = 3 * image[i] + 5;
    std::vector<Fact> moved;
    for (auto f : facts) {
      f.first = ObjectId{rename[f.first.value]};
      if (f.is_association()) f.second = ObjectId{rename[f.second.value]};
      moved.push_back(f);
    }
    sample.push_back(moved);
  });
  REQUIRE(sample.size() > 50);
  std::size_t iso_pairs = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i; j < sample.size(); ++j) {
      const bool brute = oracle::brute_isomorphic(sample[i], sample[j]);
      const bool fast = canonical_form(sample[i]) == canonical_form(sample[j]);
      if (brute != fast) FAIL("disagree on pair " << i << "," << j);
      if (brute && i != j) ++iso_pairs;
    }
  }
  CHECK(iso_pairs > 0);
}

TEST_CASE("canonical_form ignores id renaming") {
  auto a = parse_configuration(
      "isA(1,frame). isA(2,moduleI). isA(3,moduleI). isA(4,elementB). isA(5,moduleII).\n"
      "frame_module(1,2). element_module(4,5).");
  auto b = parse_configuration(
      "isA(7,moduleII). isA(8,frame). isA(9,moduleI). isA(10,elementB). isA(11,moduleI).\n"
      "frame_module(8,11). element_module(10,7).");
  CHECK(isomorphic(a, b));
  CHECK(oracle::brute_isomorphic(a.facts(), b.facts()));
  auto c = parse_configuration(
      "isA(7,moduleII). isA(8,frame). isA(9,moduleI). isA(10,elementB). isA(11,moduleI).\n"
      "frame_module(8,7). element_module(10,7).");
  CHECK_FALSE(isomorphic(a, c));
}
