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

#include <sstream>

#include "oracles.hpp"
#include "rackconf/bench.hpp"
#include "rackconf/facts_io.hpp"

using namespace rackconf;

namespace {

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

TEST_CASE("instances") {
  auto one = bench::generate_instance(1);
  CHECK(print_configuration(one.initial) ==
        "isA(1,elementA).\nisA(2,elementB).\nisA(3,elementC).\nisA(4,elementD).\n");
  CHECK(bench::generate_instance(4).initial.count(ClassName::ElementB) == 4);
  CHECK(bench::generate_instance(4).initial.object_count() == 16);
  CHECK(bench::generate_instance(20).initial.object_count() == 80);
  CHECK(print_configuration(bench::generate_instance(7).initial) ==
        print_configuration(bench::generate_instance(7).initial));
  CHECK(error_of([] { (void)bench::generate_instance(0); }) == Errc::IndexOutOfRange);
  CHECK(error_of([] { (void)bench::generate_instance(21); }) == Errc::IndexOutOfRange);
}

TEST_CASE("worst-case domain size matches the constructed configuration") {
  for (int i = 1; i <= 5; ++i) {
    CAPTURE(i);
    const auto facts = oracle::worst_case_facts(i);
    // Counting construction: moduleV frames without a moduleII keep it from
    // being valid, but it must still be representable.
    CHECK(oracle::check(facts).verdict != oracle::Verdict::Unrepresentable);
    CHECK(from_facts(facts).object_count() == bench::worst_case_domainsize(i));
    CHECK(bench::generate_instance(i).domainsize == bench::worst_case_domainsize(i));
  }
  CHECK(bench::worst_case_domainsize(1) == 76);
  CHECK(bench::worst_case_domainsize(4) == 304);
  CHECK(error_of([] { (void)bench::worst_case_domainsize(0); }) == Errc::IndexOutOfRange);
}

TEST_CASE("algorithmic solutions fit in the domain size") {
  std::vector<bench::Instance> instances;
  for (int i = 1; i <= 5; ++i) instances.push_back(bench::generate_instance(i));
  auto results = bench::run_benchmark({"algorithmic"}, instances, std::chrono::seconds{60});
  REQUIRE(results.size() == 5);
  for (const auto& r : results) {
    CAPTURE(r.instance);
    REQUIRE(r.outcome == bench::Outcome::Solved);
    REQUIRE(r.configuration.has_value());
    CHECK(oracle::check(r.configuration->facts()).verdict == oracle::Verdict::Valid);
    CHECK(r.objects == r.configuration->object_count());
    CHECK(r.objects <= bench::worst_case_domainsize(r.instance));
    CHECK(r.steps > 0);
  }
}

TEST_CASE("run_benchmark bookkeeping") {
  CHECK(bench::run_benchmark({"algorithmic", "generic"}, {}, std::chrono::seconds{1}).empty());
  auto inst = bench::generate_instance(1);
  auto results =
      bench::run_benchmark({"ordered", "algorithmic"}, {inst}, std::chrono::milliseconds{200});
  REQUIRE(results.size() == 2);
  CHECK(results[0].strategy == "ordered");
  CHECK(results[1].strategy == "algorithmic");
  for (const auto& r : results) {
    if (r.outcome != bench::Outcome::Solved) CHECK_FALSE(r.configuration.has_value());
  }
  CHECK(error_of([&] { (void)bench::run_benchmark({"magic"}, {inst}, std::chrono::seconds{1}); }) ==
        Errc::UnknownStrategy);

  std::ostringstream csv;
  bench::write_csv(csv, results);
  const std::string text = csv.str();
  CHECK(text.rfind("strategy,instance,outcome,wall_time_s,steps,peak_mem_bytes\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  std::ostringstream summary;
  bench::write_summary(summary, results);
  CHECK(summary.str().find("algorithmic") != std::string::npos);
}

TEST_CASE("baseline") {
  auto inst = bench::generate_instance(1);
  auto r = bench::baseline_generate_and_test(inst, std::chrono::seconds{60});
  REQUIRE(r.outcome == bench::Outcome::Solved);
  REQUIRE(r.configuration.has_value());
  CHECK(oracle::check(r.configuration->facts()).verdict == oracle::Verdict::Valid);
  CHECK(r.objects <= inst.domainsize);
  CHECK(r.configuration->count(ClassName::ElementD) == 1);

  bench::Instance cramped = inst;
  cramped.domainsize = 0;
  CHECK(bench::baseline_generate_and_test(cramped, std::chrono::seconds{5}).outcome ==
        bench::Outcome::Exhausted);
}

TEST_CASE("index lists") {
  CHECK(bench::parse_index_list("3") == std::vector<int>{3});
  CHECK(bench::parse_index_list("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(bench::parse_index_list("1,4,7..9") == std::vector<int>{1, 4, 7, 8, 9});
  CHECK(error_of([] { (void)bench::parse_index_list("5..2"); }) == Errc::IndexOutOfRange);
  CHECK(error_of([] { (void)bench::parse_index_list("x"); }) == Errc::IndexOutOfRange);
}
