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

#include "rackconf/bench.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <map>

#include "rackconf/facts_io.hpp"

namespace rackconf::bench {

namespace {

using Clock = std::chrono::steady_clock;

std::size_t peak_memory() {
  rusage u{};
  if (getrusage(RUSAGE_SELF, &u) != 0) return 0;
  return static_cast<std::size_t>(u.ru_maxrss) * 1024;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Timeout {};

class Baseline {
 public:
  Baseline(std::size_t domainsize, Clock::time_point deadline)
      : limit_{domainsize}, deadline_{deadline} {}

  std::optional<ConfigurationState> run(const ConfigurationState& initial) {
    if (initial.object_count() > limit_) return std::nullopt;
    StateEditor ed{initial};
    for (auto e : initial.objects_where(is_element)) {
      const ClassName c = initial.class_of(e);
      for (std::size_t i = initial.members(e).size(); i < required_count(c); ++i) {
        if (!room(ed.view(), 1)) return std::nullopt;
        ed.associate(AssocKind::ElementModule, e, ed.create(required_module(c)));
      }
    }
    return place_modules(std::move(ed).finish());
  }

  std::size_t nodes() const { return nodes_; }

 private:
  bool room(const ConfigurationState& s, std::size_t extra) const {
    return s.object_count() + extra <= limit_;
  }

  void tick() {
    ++nodes_;
    if ((nodes_ & 255) == 0 && Clock::now() > deadline_) throw Timeout{};
  }

  static std::optional<ObjectId> first_unplaced(const ConfigurationState& s,
                                                bool (*pred)(ClassName)) {
    for (auto id : s.objects_where(pred)) {
      if (!s.container_of(id).valid()) return id;
    }
    return std::nullopt;
  }

  std::optional<ConfigurationState> place_modules(const ConfigurationState& s) {
    tick();
    auto m = first_unplaced(s, is_module);
    if (!m) return add_module_v(s);
    for (auto f : s.objects_where(is_frame)) {
      if (check_associate(s, AssocKind::FrameModule, f, *m)) continue;
      if (auto r = place_modules(associate(s, AssocKind::FrameModule, f, *m))) return r;
    }
    if (!room(s, 1)) return std::nullopt;
    StateEditor ed{s};
    ed.associate(AssocKind::FrameModule, ed.create(ClassName::Frame), *m);
    return place_modules(std::move(ed).finish());
  }

  std::optional<ConfigurationState> add_module_v(const ConfigurationState& s) {
    StateEditor ed{s};
    for (auto f : s.objects_where(is_frame)) {
      if (s.count_in_frame(f, ClassName::ModuleII) == 0 ||
          s.count_in_frame(f, ClassName::ModuleV) > 0) {
        continue;
      }
      if (ed.view().members(f).size() >= kFrameCapacity || !room(ed.view(), 1)) {
        return std::nullopt;
      }
      ed.associate(AssocKind::FrameModule, f, ed.create(ClassName::ModuleV));
    }
    return place_frames(std::move(ed).finish());
  }

  std::optional<ConfigurationState> place_frames(const ConfigurationState& s) {
    tick();
    auto f = first_unplaced(s, is_frame);
    if (!f) return fill_racks(s);
    for (auto r : s.objects_where(is_rack)) {
      if (check_associate(s, AssocKind::RackFrame, r, *f)) continue;
      if (auto res = place_frames(associate(s, AssocKind::RackFrame, r, *f))) return res;
    }
    if (!room(s, 1)) return std::nullopt;
    for (auto rc : kRackClasses) {
      StateEditor ed{s};
      ed.associate(AssocKind::RackFrame, ed.create(rc), *f);
      if (auto res = place_frames(std::move(ed).finish())) return res;
    }
    return std::nullopt;
  }

  std::optional<ConfigurationState> fill_racks(const ConfigurationState& s) {
    tick();
    StateEditor ed{s};
    for (auto r : s.objects_where(is_rack)) {
      for (std::size_t i = s.members(r).size(); i < rack_capacity(s.class_of(r)); ++i) {
        if (!room(ed.view(), 1)) return std::nullopt;
        ed.associate(AssocKind::RackFrame, r, ed.create(ClassName::Frame));
      }
    }
    ConfigurationState done = std::move(ed).finish();
    if (!is_valid(done)) return std::nullopt;
    return done;
  }

  std::size_t limit_;
  Clock::time_point deadline_;
  std::size_t nodes_ = 0;
};

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw Error{Errc::IndexOutOfRange, "bad instance index '" + std::string{s} + "'"};
  }
  return v;
}

}  // namespace

Instance generate_instance(int i) {
  if (i < 1 || i > kMaxInstance) {
    throw Error{Errc::IndexOutOfRange, "instance index " + std::to_string(i) + " not in 1..20"};
  }
  StateEditor ed{ConfigurationState{}};
  for (auto c : kElementClasses) {
    for (int k = 0; k < i; ++k) ed.create(c);
  }
  return Instance{i, std::move(ed).finish(), worst_case_domainsize(i)};
}

std::size_t worst_case_domainsize(int i) {
  if (i < 1) throw Error{Errc::IndexOutOfRange, "domain size needs i >= 1"};
  const auto n = static_cast<std::size_t>(i);
  const std::size_t elements = 4 * n;
  const std::size_t modules = 10 * n + 2 * n;
  const std::size_t racks = modules;
  const std::size_t frames = racks * rack_capacity(ClassName::RackSingle);
  return elements + modules + frames + racks;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Solved: return "solved";
    case Outcome::Exhausted: return "exhausted";
    case Outcome::Timeout: return "timeout";
  }
  return "?";
}

BenchResult baseline_generate_and_test(const Instance& instance,
                                       std::chrono::milliseconds timeout) {
  BenchResult r;
  r.instance = instance.index;
  r.strategy = std::string{kBaselineName};
  const auto t0 = Clock::now();
  Baseline search{instance.domainsize, t0 + timeout};
  try {
    auto found = search.run(instance.initial);
    if (found && is_valid(*found)) {
      r.outcome = Outcome::Solved;
      r.objects = found->object_count();
      r.configuration = std::move(found);
    } else {
      r.outcome = Outcome::Exhausted;
    }
  } catch (const Timeout&) {
    r.outcome = Outcome::Timeout;
  }
  r.wall_time_s = seconds_since(t0);
  r.steps = search.nodes();
  r.peak_mem_bytes = peak_memory();
  return r;
}

std::vector<BenchResult> run_benchmark(const std::vector<std::string>& strategies,
                                       const std::vector<Instance>& instances,
                                       std::chrono::milliseconds timeout,
                                       const SolveOptions& base) {
  std::vector<BenchResult> out;
  for (const auto& inst : instances) {
    for (const auto& name : strategies) {
      if (name == kBaselineName) {
        out.push_back(baseline_generate_and_test(inst, timeout));
        continue;
      }
      const Strategy& strategy = get_strategy(name);
      SolveOptions opts = base;
      opts.time_limit = timeout;
      BenchResult r;
      r.instance = inst.index;
      r.strategy = name;
      const auto t0 = Clock::now();
      SolveTrace trace = solve(inst.initial, strategy, opts);
      r.wall_time_s = seconds_since(t0);
      r.peak_mem_bytes = peak_memory();
      switch (trace.result) {
        case SolveResult::Solved:
          // Re-check independently of the engine's own stopping test.
          r.outcome = is_valid(trace.final_state()) ? Outcome::Solved : Outcome::Exhausted;
          break;
        case SolveResult::BudgetExhausted: r.outcome = Outcome::Timeout; break;
        default: r.outcome = Outcome::Exhausted; break;
      }
      if (r.outcome == Outcome::Solved) {
        r.steps = trace.steps.size();
        r.objects = trace.final_state().object_count();
        r.configuration = trace.final_state();
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<BenchResult>& results) {
  out << "strategy,instance,outcome,wall_time_s,steps,peak_mem_bytes\n";
  for (const auto& r : results) {
    out << r.strategy << ',' << r.instance << ',' << to_string(r.outcome) << ','
        << std::fixed << std::setprecision(6) << r.wall_time_s << ',' << r.steps << ','
        << r.peak_mem_bytes << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<BenchResult>& results) {
  struct Row {
    std::size_t solved = 0;
    std::size_t runs = 0;
    double time = 0;
    double mem = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Row> rows;
  for (const auto& r : results) {
    if (!rows.count(r.strategy)) order.push_back(r.strategy);
    Row& row = rows[r.strategy];
    ++row.runs;
    row.time += r.wall_time_s;
    row.mem += static_cast<double>(r.peak_mem_bytes);
    if (r.outcome == Outcome::Solved) ++row.solved;
  }
  out << std::left << std::setw(14) << "strategy" << std::right << std::setw(8) << "solved"
      << std::setw(14) << "sum_time_s" << std::setw(14) << "mean_mem_MB" << '\n';
  for (const auto& name : order) {
    const Row& row = rows[name];
    out << std::left << std::setw(14) << name << std::right << std::setw(8) << row.solved
        << std::setw(14) << std::fixed << std::setprecision(3) << row.time << std::setw(14)
        << std::setprecision(1) << row.mem / static_cast<double>(row.runs) / (1024.0 * 1024.0)
        << '\n';
  }
}

std::vector<int> parse_index_list(std::string_view text) {
  std::vector<int> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    const std::string piece = detail::trim(text.substr(start, comma - start));
    const auto dots = piece.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(piece));
    } else {
      const int lo = parse_int(std::string_view{piece}.substr(0, dots));
      const int hi = parse_int(std::string_view{piece}.substr(dots + 2));
      if (lo > hi) throw Error{Errc::IndexOutOfRange, "empty range '" + piece + "'"};
      for (int i = lo; i <= hi; ++i) out.push_back(i);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace rackconf::bench
