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

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rackconf/engine.hpp"

// Benchmark instances (i elements of each type), timed strategy runs and a
// monolithic bounded search used as a baseline.

namespace rackconf::bench {

inline constexpr int kMaxInstance = 20;

struct Instance {
  int index = 0;
  ConfigurationState initial;
  std::size_t domainsize = 0;
};

// i of each element type, ids 1..4i in A, B, C, D blocks. Throws
// Error{IndexOutOfRange} unless 1 <= i <= 20.
Instance generate_instance(int i);

// Object count of the worst case where no two modules share a frame and
// every frame has its own rackSingle: 4i elements, 10i required modules,
// 2i moduleV, 12i racks holding 48i frames. Throws Error{IndexOutOfRange}
// for i < 1.
std::size_t worst_case_domainsize(int i);

enum class Outcome : std::uint8_t { Solved, Exhausted, Timeout };
std::string_view to_string(Outcome o);

inline constexpr std::string_view kBaselineName = "baseline";

struct BenchResult {
  int instance = 0;
  std::string strategy;
  Outcome outcome = Outcome::Exhausted;
  double wall_time_s = 0;
  std::size_t steps = 0;
  std::size_t peak_mem_bytes = 0;  // process high-water mark, best effort
  std::size_t objects = 0;         // object count of the final configuration
  std::optional<ConfigurationState> configuration;
};

// One result per (strategy, instance), strategies in the given order for
// each instance. Strategy names are those of get_strategy plus "baseline".
// A solution is reported Solved only if it passes is_valid.
std::vector<BenchResult> run_benchmark(const std::vector<std::string>& strategies,
                                       const std::vector<Instance>& instances,
                                       std::chrono::milliseconds timeout,
                                       const SolveOptions& base = {});

// Backtracking over complete configurations of at most instance.domainsize
// objects, without step semantics: create the required modules, choose a
// frame for every module, a rack for every frame, fill the racks, then
// test validity. `steps` in the result counts search nodes.
BenchResult baseline_generate_and_test(const Instance& instance,
                                       std::chrono::milliseconds timeout);

// strategy,instance,outcome,wall_time_s,steps,peak_mem_bytes
void write_csv(std::ostream& out, const std::vector<BenchResult>& results);
// Per strategy: solved instances, total time, mean memory.
void write_summary(std::ostream& out, const std::vector<BenchResult>& results);

// Parses "3", "1..20" or "1,4,7..9".
std::vector<int> parse_index_list(std::string_view text);

}  // namespace rackconf::bench
