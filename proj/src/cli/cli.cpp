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

#include "rackconf/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rackconf/bench.hpp"
#include "rackconf/facts_io.hpp"
#include "rackconf/http.hpp"
#include "rackconf/trace_io.hpp"
#include "rackconf/verifier.hpp"

namespace rackconf::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNotFound = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in{path, std::ios::binary};
  if (!in) throw UsageError{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out{path, std::ios::binary};
  if (!out || !(out << text)) throw UsageError{"cannot write '" + path + "'"};
}

// Seconds from RACKCONF_TIMEOUT, else the fallback.
double default_timeout(double fallback) {
  const char* env = std::getenv("RACKCONF_TIMEOUT");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (*end != '\0' || v <= 0) throw UsageError{"RACKCONF_TIMEOUT must be a positive number"};
  return v;
}

std::chrono::milliseconds to_ms(double seconds) {
  return std::chrono::milliseconds{static_cast<long long>(seconds * 1000.0)};
}

struct SolveArgs {
  std::string input;
  std::string strategy = "algorithmic";
  std::size_t max_steps = 500;
  double timeout = 0;
  std::string emit_trace;
  std::string out;
  bool visited = false;
  bool fixed = false;
  bool no_reverse = false;
};

int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Strategy& strategy = get_strategy(a.strategy);
  const ConfigurationState initial = parse_configuration(read_file(a.input));
  SolveOptions opts;
  opts.max_steps = a.max_steps;
  opts.visited_state_pruning = a.visited;
  opts.horizon = a.fixed ? SolveOptions::Horizon::Fixed : SolveOptions::Horizon::Deepening;
  opts.check.module_v_requires_module_ii = !a.no_reverse;
  opts.time_limit = to_ms(a.timeout > 0 ? a.timeout : default_timeout(600));
  const SolveTrace trace = solve(initial, strategy, opts);
  if (trace.result != SolveResult::Solved) {
    err << "no solution: " << to_string(trace.result) << " after " << trace.nodes << " nodes\n";
    return kNotFound;
  }
  const std::string config = print_configuration(trace.final_state());
  if (!a.emit_trace.empty()) write_file(a.emit_trace, format_trace(trace));
  if (!a.out.empty()) write_file(a.out, config);
  out << config << "steps: " << trace.steps.size() << '\n';
  return kOk;
}

int do_replay(const std::string& path, const std::string& out_path, std::ostream& out) {
  const ConfigurationState final_state = replay_trace(parse_trace(read_file(path)));
  const std::string config = print_configuration(final_state);
  if (!out_path.empty()) write_file(out_path, config);
  out << config;
  return kOk;
}

struct VerifyArgs {
  std::string property;
  std::size_t scope = 0;
  std::size_t max_steps = 0;
  std::size_t jobs = 1;
  std::string out = "counterexample.trace";
};

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.property == "ui-safety") {
    verify::Scope scope{0, a.max_steps ? a.max_steps : 3};
    auto report = verify::check_ui_safety(scope);
    out << "states: " << report.states << "\ninvalid: " << report.invalid_states
        << "\nunrepairable within scope: " << report.unrepairable.size() << '\n';
    if (report.hard_violation) {
      ConfigurationState s;
      std::vector<TraceStep> steps;
      for (const auto& act : *report.hard_violation) {
        s = apply_action(s, act);
        steps.push_back({steps.size() + 1, act, s});
      }
      write_file(a.out, "% hard constraint broken by this UI sequence\n" +
                            format_trace(ConfigurationState{}, steps));
      out << "counterexample written to " << a.out << '\n';
      return kNotFound;
    }
    out << "no hard constraint violation reachable\n";
    return kOk;
  }
  auto property = verify::property_by_name(a.property);
  if (!property) throw UsageError{"unknown property '" + a.property + "'"};
  verify::Scope scope{a.scope, a.max_steps ? a.max_steps : 500};
  try {
    auto ce = verify::check_algorithm(*property, scope, a.jobs);
    if (!ce) {
      out << "no counterexample within scope " << a.scope << '\n';
      return kOk;
    }
    std::string text = "% property " + property->name + " violated\n% input " +
                       verify::to_string(ce->input) + "\n";
    for (const auto& w : ce->witnesses) {
      text += "% witness";
      for (auto id : w) text += " " + std::to_string(id.value);
      text += "\n";
    }
    text += format_trace(ce->trace);
    write_file(a.out, text);
    out << "counterexample for input " << verify::to_string(ce->input) << " written to " << a.out
        << '\n';
    return kNotFound;
  } catch (const Error& e) {
    if (e.code() != Errc::ScopeExhaustedUnsolved) throw;
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

struct BenchArgs {
  std::string strategies = "algorithmic";
  std::string instances = "1..20";
  double timeout = 0;
  std::string out;
};

int do_bench(const BenchArgs& a, std::ostream& out) {
  std::vector<std::string> names;
  std::stringstream ss{a.strategies};
  for (std::string n; std::getline(ss, n, ',');) {
    if (n != bench::kBaselineName) get_strategy(n);
    names.push_back(n);
  }
  std::vector<bench::Instance> instances;
  for (int i : bench::parse_index_list(a.instances)) instances.push_back(bench::generate_instance(i));
  const auto results =
      bench::run_benchmark(names, instances, to_ms(a.timeout > 0 ? a.timeout : default_timeout(600)));
  if (!a.out.empty()) {
    std::ostringstream csv;
    bench::write_csv(csv, results);
    write_file(a.out, csv.str());
  } else {
    bench::write_csv(out, results);
  }
  bench::write_summary(out, results);
  return kOk;
}

int do_serve(const std::string& bind, double idle, std::ostream& out) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw UsageError{"--bind expects host:port"};
  const std::string host = bind.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError{"bad port in '" + bind + "'"};
  }
  service::ManagerOptions opts;
  opts.idle_timeout = std::chrono::seconds{static_cast<long long>(idle)};
  service::SessionManager sessions{opts};
  service::HttpServer server{sessions};
  const int bound = server.bind(host, port);
  if (bound < 0) throw UsageError{"cannot bind " + bind};
  out << "listening on " << host << ':' << bound << std::endl;
  return server.run() ? kOk : kUsage;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Step-wise product configuration for the hardware racks domain", "rackconf"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a configuration file");
  solve_cmd->add_option("input", solve_args.input, "Configuration file, '-' for stdin")->required();
  solve_cmd->add_option("--strategy", solve_args.strategy, "generic|ordered|algorithmic|ui")
      ->capture_default_str();
  solve_cmd->add_option("--max-steps", solve_args.max_steps)->capture_default_str()
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--timeout", solve_args.timeout,
                        "Seconds; default from RACKCONF_TIMEOUT or 600");
  solve_cmd->add_option("--emit-trace", solve_args.emit_trace, "Write the trace to this file");
  solve_cmd->add_option("--out", solve_args.out, "Write the final configuration to this file");
  solve_cmd->add_flag("--visited-pruning", solve_args.visited, "Skip revisited states");
  solve_cmd->add_flag("--fixed-horizon", solve_args.fixed,
                      "Search once with horizon max-steps instead of deepening");
  solve_cmd->add_flag("--no-reverse-modulev", solve_args.no_reverse,
                      "Allow frames with a moduleV but no moduleII");

  std::string replay_path, replay_out;
  auto* replay_cmd = app.add_subcommand("replay", "Replay a trace file and print its result");
  replay_cmd->add_option("trace", replay_path)->required();
  replay_cmd->add_option("--out", replay_out, "Write the final configuration to this file");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Bounded counterexample search");
  verify_cmd->add_option("--property", verify_args.property, "same-frame|valid|ui-safety")
      ->required();
  verify_cmd->add_option("--scope", verify_args.scope, "Max elements per type")
      ->capture_default_str();
  verify_cmd->add_option("--max-steps", verify_args.max_steps,
                         "Step bound (500; 3 for ui-safety)");
  verify_cmd->add_option("--jobs", verify_args.jobs)->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", verify_args.out, "Counterexample trace file")
      ->capture_default_str();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark instances");
  bench_cmd->add_option("--strategies", bench_args.strategies,
                        "Comma separated; 'baseline' adds the monolithic search")
      ->capture_default_str();
  bench_cmd->add_option("--instances", bench_args.instances, "e.g. 1..20")->capture_default_str();
  bench_cmd->add_option("--timeout", bench_args.timeout,
                        "Seconds per run; default from RACKCONF_TIMEOUT or 600");
  bench_cmd->add_option("--out", bench_args.out, "CSV output file");

  std::string bind = "127.0.0.1:8080";
  double idle = 1800;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the session API over HTTP");
  serve_cmd->add_option("--bind", bind)->capture_default_str();
  serve_cmd->add_option("--idle-timeout", idle, "Seconds before idle sessions are dropped")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return do_solve(solve_args, out, err);
    if (*replay_cmd) return do_replay(replay_path, replay_out, out);
    if (*verify_cmd) return do_verify(verify_args, out, err);
    if (*bench_cmd) return do_bench(bench_args, out);
    if (*serve_cmd) return do_serve(bind, idle, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace rackconf::cli
