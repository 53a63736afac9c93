/*
 * Copyright 2026 The pdevs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Acceptance checks. One line per criterion:
//
//   PASS|FAIL|SKIP <criterion> <measurements>
//
// Run with a criterion name to check one (exit 0 pass, 1 fail, 77 skip) or
// with no argument to check all of them. Tolerances are the constants below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pdevs/bench/bench.hpp"
#include "pdevs/devstone/busy_cpu.hpp"
#include "pdevs/devstone/delays.hpp"
#include "pdevs/devstone/devstone.hpp"
#include "pdevs/dist/coordinator.hpp"
#include "pdevs/dist/wire.hpp"
#include "pdevs/models/efp.hpp"
#include "pdevs/parallel/parallel_coordinator.hpp"
#include "pdevs/parallel/worker_pool.hpp"
#include "pdevs/sim/coordinator.hpp"

namespace {

using namespace pdevs;
using devstone::DelayDistribution;
using devstone::DelayKind;
using devstone::Shape;
using Clock = std::chrono::steady_clock;

// ---- tolerances
constexpr double kEquivalenceBudgetSeconds = 120.0;
constexpr double kClosedFormBudgetSeconds = 60.0;
constexpr double kBusyTarget = 0.1;
constexpr double kBusyUpper = 0.11;
constexpr int kBusyTrials = 20;
constexpr double kConcurrentBusy = 0.5;
constexpr double kConcurrentWallLimit = 0.65;
constexpr double kDeskDelay = 0.02;
constexpr double kDeskSpeedupMin = 2.5;
constexpr double kBarrierNoise = 0.05;  // 2-pool may beat 1-pool by at most this share
constexpr double kMonotoneNoise = 0.10;
constexpr double kDistributedBudgetSeconds = 60.0;
constexpr int kRandomFrames = 1000;
constexpr std::size_t kChiSamples = 100000;
constexpr double kChiMeanLo = 1.96;
constexpr double kChiMeanHi = 2.04;
constexpr double kStaircaseDelay = 0.01;
constexpr double kStaircaseTolerance = 0.20;
constexpr std::size_t kRequiredCpus = 4;

enum class Status { pass, fail, skip };

struct Result {
  Status status;
  std::string detail;
};

Result pass(std::string d) { return {Status::pass, std::move(d)}; }
Result fail(std::string d) { return {Status::fail, std::move(d)}; }
Result skip(std::string d) { return {Status::skip, std::move(d)}; }

std::string fmt(double v, int precision = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string counters_text(const CounterTriple& c) {
  return std::to_string(c.num_delt_ints) + "/" + std::to_string(c.num_delt_exts) + "/" +
         std::to_string(c.num_of_events);
}

std::vector<bench::AtomicProfile> profile_of(const RunReport& r) {
  std::vector<bench::AtomicProfile> p;
  for (const auto& [name, cpu] : r.cpu) p.push_back({name, cpu.external_seconds, cpu.internal_seconds});
  bench::rank_profile(p);
  return p;
}

// ---------------------------------------------------------------------------

Result backend_equivalence() {
  const auto start = Clock::now();
  int runs = 0;
  for (auto [w, d] : {std::pair{3, 3}, std::pair{5, 5}, std::pair{8, 4}}) {
    for (double delay : {0.0, 0.005}) {
      auto m = devstone::generate({Shape::ho, w, d, {DelayKind::constant, delay}, 0});
      const ModelGraph flat = flatten(m.graph);
      const std::string tag = "HO(" + std::to_string(w) + "," + std::to_string(d) + ") delay=" + fmt(delay);

      RunReport seq = Coordinator(m.graph, builtin_registry(), {true, true}).simulate(UINT64_MAX);
      auto same = [&](const RunReport& r, const std::string& backend) -> std::string {
        if (r.counters != seq.counters) {
          return tag + " " + backend + " counters " + counters_text(r.counters) + " vs " +
                 counters_text(seq.counters);
        }
        if (r.traces != seq.traces) return tag + " " + backend + " traces differ";
        return {};
      };

      RunReport one = ParallelCoordinator(m.graph, PoolPlan::single(flat, 4), builtin_registry(), {true, true})
                          .simulate(UINT64_MAX);
      auto alloc = bench::allocate_two_level(profile_of(seq), 0.25, 2, 2, bench::generator_atomics(flat));
      auto two = std::get<PooledPlan>(bench::two_level_plan(flat, alloc, bench::Target::pools));
      RunReport pools = ParallelCoordinator(two.graph, two.pools, builtin_registry(), {true, true})
                            .simulate(UINT64_MAX);
      dist::LocalRunOptions o;
      o.executable = PDEVS_CLI_PATH;
      o.trace = true;
      RunReport dist = dist::run_distributed_local(m.graph, UINT64_MAX, o);
      runs += 4;

      for (auto [r, name] : {std::pair{&one, "parallel 1x4"}, std::pair{&pools, "parallel 2x2"},
                             std::pair{&dist, "distributed-local"}}) {
        if (auto why = same(*r, name); !why.empty()) return fail(why);
      }
    }
  }
  const double t = seconds_since(start);
  if (t > kEquivalenceBudgetSeconds) return fail("identical but took " + fmt(t, 1) + " s");
  return pass(std::to_string(runs) + " runs identical to sequential, " + fmt(t, 1) + " s");
}

Result counter_closed_forms() {
  const auto start = Clock::now();
  int cases = 0;
  for (int w = 2; w <= 10; ++w) {
    for (int d = 1; d <= 10; ++d) {
      auto m = devstone::generate({Shape::ho, w, d, {}, 0});
      const auto e = devstone::expected_counts(w, d);
      RunReport r = Coordinator(m.graph).simulate(UINT64_MAX);
      const CounterTriple want{e.delt_ints, e.delt_exts, e.events};
      if (r.counters != want) {
        return fail("HO(" + std::to_string(w) + "," + std::to_string(d) + ") " + counters_text(r.counters) +
                    " expected " + counters_text(want));
      }
      if (m.atomics.size() != e.atomics) {
        return fail("HO(" + std::to_string(w) + "," + std::to_string(d) + ") has " +
                    std::to_string(m.atomics.size()) + " atomics, expected " + std::to_string(e.atomics));
      }
      ++cases;
    }
  }
  const double t = seconds_since(start);
  if (t > kClosedFormBudgetSeconds) return fail("exact but took " + fmt(t, 1) + " s");
  return pass(std::to_string(cases) + " (w,d) cases exact, " + fmt(t, 2) + " s");
}

Result atomic_count_table() {
  const std::vector<std::size_t> want = {82, 101, 122, 145, 170, 197};
  std::string got;
  for (int w = 10; w <= 15; ++w) {
    auto m = devstone::generate({Shape::ho, w, w, {}, 0});
    const std::size_t n = m.atomics.size();
    got += (got.empty() ? "" : ",") + std::to_string(n);
    if (n != want[static_cast<std::size_t>(w - 10)] || devstone::expected_counts(w, w).atomics != n) {
      return fail("HO(" + std::to_string(w) + "," + std::to_string(w) + ") gives " + std::to_string(n));
    }
  }
  return pass("atomics " + got);
}

Result cpu_delay_single() {
  std::vector<double> used;
  for (int i = 0; i < kBusyTrials; ++i) {
    const double before = devstone::process_cpu_seconds();
    devstone::busy_cpu(kBusyTarget);
    used.push_back(devstone::process_cpu_seconds() - before);
  }
  std::sort(used.begin(), used.end());
  const double median = (used[kBusyTrials / 2 - 1] + used[kBusyTrials / 2]) / 2;
  const std::string d = "median " + fmt(median, 4) + " s over " + std::to_string(kBusyTrials) + " trials";
  if (median < kBusyTarget || median > kBusyUpper) return fail(d);
  return pass(d);
}

Result cpu_delay_concurrent() {
  const std::size_t cpus = hardware_workers();
  const double cpu_before = devstone::process_cpu_seconds();
  const auto start = Clock::now();
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) threads.emplace_back([] { devstone::busy_cpu(kConcurrentBusy); });
  for (auto& t : threads) t.join();
  const double wall = seconds_since(start);
  const double cpu = devstone::process_cpu_seconds() - cpu_before;
  const std::string d = "4 x busy(" + fmt(kConcurrentBusy, 1) + "): wall " + fmt(wall) + " s, cpu " + fmt(cpu) +
                        " s, " + std::to_string(cpus) + " CPUs";
  if (cpus < kRequiredCpus) return skip(d + " (needs " + std::to_string(kRequiredCpus) + ")");
  if (wall > kConcurrentWallLimit) return fail(d);
  return pass(d);
}

Result desk_speedup() {
  const std::size_t cpus = hardware_workers();
  auto m = devstone::generate({Shape::ho, 8, 8, {DelayKind::constant, kDeskDelay}, 0});
  const ModelGraph flat = flatten(m.graph);
  const auto start = Clock::now();
  RunReport seq = Coordinator(m.graph).simulate(UINT64_MAX);
  const auto profile = profile_of(seq);

  auto balanced = std::get<PooledPlan>(
      bench::balanced_plan(flat, bench::allocate_balanced(profile, 4), bench::Target::pools));
  RunReport one = ParallelCoordinator(balanced.graph, balanced.pools).simulate(UINT64_MAX);
  auto alloc = bench::allocate_two_level(profile, 0.25, 2, 2, bench::generator_atomics(flat));
  auto two = std::get<PooledPlan>(bench::two_level_plan(flat, alloc, bench::Target::pools));
  RunReport pools = ParallelCoordinator(two.graph, two.pools).simulate(UINT64_MAX);
  const double total = seconds_since(start);

  const double speedup = seq.wall_seconds / one.wall_seconds;
  const std::string d = "baseline " + fmt(seq.wall_seconds, 2) + " s, balanced 1x4 " + fmt(one.wall_seconds, 2) +
                        " s (speedup " + fmt(speedup, 2) + "), 2x2 pools " + fmt(pools.wall_seconds, 2) + " s, " +
                        std::to_string(cpus) + " CPUs, " + fmt(total, 1) + " s total";
  if (seq.counters != one.counters || seq.counters != pools.counters) return fail("counters differ; " + d);
  if (cpus < kRequiredCpus) return skip(d + " (needs " + std::to_string(kRequiredCpus) + ")");
  if (speedup < kDeskSpeedupMin) return fail(d);
  if (pools.wall_seconds < one.wall_seconds * (1.0 - kBarrierNoise)) return fail("2-pool faster; " + d);
  return pass(d);
}

Result two_level_monotonicity() {
  const std::size_t cpus = hardware_workers();
  auto m = devstone::generate({Shape::ho, 8, 8, {DelayKind::constant, kStaircaseDelay}, 0});
  const ModelGraph flat = flatten(m.graph);
  const auto profile = profile_of(Coordinator(m.graph).simulate(UINT64_MAX));
  std::vector<double> walls;
  std::string d;
  for (std::size_t n : {1u, 2u, 4u}) {
    auto alloc = bench::allocate_two_level(profile, 0.25, n, 1, bench::generator_atomics(flat));
    auto plan = std::get<PooledPlan>(bench::two_level_plan(flat, alloc, bench::Target::pools));
    walls.push_back(ParallelCoordinator(plan.graph, plan.pools).simulate(UINT64_MAX).wall_seconds);
    d += (d.empty() ? "" : ", ") + std::to_string(n) + "x1 " + fmt(walls.back(), 2) + " s";
  }
  d += ", " + std::to_string(cpus) + " CPUs";
  for (std::size_t i = 1; i < walls.size(); ++i) {
    if (walls[i] > walls[i - 1] * (1.0 + kMonotoneNoise)) return fail(d);
  }
  return pass(d);
}

EventValue random_value(std::mt19937& rng, int depth) {
  switch (rng() % (depth > 2 ? 3 : 4)) {
    case 0:
      return EventValue(static_cast<std::int64_t>(rng()) - (std::int64_t{1} << 31));
    case 1:
      return EventValue(std::uniform_real_distribution<double>(-1e9, 1e9)(rng));
    case 2: {
      static const std::vector<std::string> pieces = {"a", "Z", " ", "\"", "\\", "\n", "/", "\xc3\xa9", "0"};
      std::string s;
      for (int i = static_cast<int>(rng() % 10); i > 0; --i) s += pieces[rng() % pieces.size()];
      return EventValue(s);
    }
    default: {
      EventValue::List l;
      for (int i = static_cast<int>(rng() % 4); i > 0; --i) l.push_back(random_value(rng, depth + 1));
      return EventValue(std::move(l));
    }
  }
}

Result distributed_protocol() {
  std::mt19937 rng(2026);
  for (int n = 0; n < kRandomFrames; ++n) {
    dist::WireFrame f;
    f.command = static_cast<dist::Command>(rng() % dist::kCommandCount);
    f.sender = "A" + std::to_string(rng() % 20);
    f.port = rng() % 2 ? "in" : "out";
    for (int i = static_cast<int>(rng() % 5); i > 0; --i) f.values.push_back(random_value(rng, 0));
    f.time = rng() % 4 == 0 ? kInfinity : std::uniform_real_distribution<double>(0, 1e6)(rng);
    f.coupling = f.command == dist::Command::propagate ? static_cast<std::int64_t>(rng() % 500) : -1;
    const std::string bytes = dist::encode(f);
    std::size_t used = 0;
    auto back = dist::decode(bytes, used);
    if (!back || *back != f || used != bytes.size()) return fail("frame " + std::to_string(n) + " changed");
  }

  models::EfpParams p;
  p.jobs = 8;
  dist::FrameStats stats;
  dist::LocalRunOptions o;
  o.executable = PDEVS_CLI_PATH;
  o.stats = &stats;
  RunReport gpt = dist::run_distributed_local(models::make_gpt(p), UINT64_MAX, o);
  const auto relayed = stats.sent_of(dist::Command::propagate) + stats.received_of(dist::Command::propagate);
  if (relayed != 0 || gpt.counters != Coordinator(models::make_gpt(p)).simulate(UINT64_MAX).counters) {
    return fail("GPT: " + std::to_string(relayed) + " PROPAGATE frames crossed the coordinator");
  }

  const auto start = Clock::now();
  dist::LocalRunOptions procs;
  procs.executable = PDEVS_CLI_PATH;
  RunReport ho = dist::run_distributed_local(devstone::generate({Shape::ho, 5, 5, {}, 0}).graph, UINT64_MAX,
                                             procs);
  const double t = seconds_since(start);
  const std::string d = std::to_string(kRandomFrames) + " frames round-trip, GPT 0 relayed of " +
                        std::to_string(stats.sent_of(dist::Command::lambda)) + " LAMBDA, HO(5,5) " +
                        counters_text(ho.counters) + " over " + ho.resources + " processes in " + fmt(t, 2) + " s";
  if (ho.counters != CounterTriple{41, 41, 41} || t > kDistributedBudgetSeconds) return fail(d);
  return pass(d);
}

Result chi_square_sampler() {
  auto v = devstone::sample_values({DelayKind::chi_square, 0.0}, kChiSamples, 42);
  double sum = 0;
  double lo = INFINITY;
  for (double x : v) {
    sum += x;
    lo = std::min(lo, x);
  }
  const double mean = sum / static_cast<double>(v.size());
  const std::string d = std::to_string(v.size()) + " samples, mean " + fmt(mean, 4) + ", min " + fmt(lo, 6);
  if (v.size() != kChiSamples || mean < kChiMeanLo || mean > kChiMeanHi || lo < 0) return fail(d);
  return pass(d);
}

ModelGraph random_graph(std::mt19937& rng, const std::string& name, int depth) {
  std::uniform_int_distribution<int> pick(0, 99);
  ModelGraph g(name, {"i0", "i1"}, {"o0", "o1"});
  std::vector<std::string> atoms;
  const int n = 1 + pick(rng) % 3;
  for (int k = 0; k < n; ++k) {
    atoms.push_back(name + "a" + std::to_string(k));
    g.add_component(builtin_registry().make_spec(atoms.back(), "processor"));
  }
  std::string child;
  if (depth > 0 && pick(rng) < 80) {
    child = name + "c";
    g.add_component(random_graph(rng, child, depth - 1));
  }
  auto any_atom = [&] { return atoms[static_cast<std::size_t>(pick(rng)) % atoms.size()]; };
  for (int k = 0; k < 6; ++k) {
    switch (pick(rng) % 5) {
      case 0: g.couple(name, k % 2 ? "i1" : "i0", any_atom(), "in"); break;
      case 1: g.couple(any_atom(), "out", any_atom(), "in"); break;
      case 2: g.couple(any_atom(), "out", name, k % 2 ? "o1" : "o0"); break;
      case 3:
        if (!child.empty()) g.couple(name, "i0", child, k % 2 ? "i1" : "i0");
        break;
      case 4:
        if (!child.empty()) {
          g.couple(child, k % 2 ? "o1" : "o0", any_atom(), "in");
          g.couple(child, "o0", name, "o1");
        }
        break;
    }
  }
  return g;
}

Result flattening() {
  models::EfpParams p;
  p.jobs = 10;
  p.period = 2;
  p.processing_time = 3;
  RunReport gpt = Coordinator(models::make_gpt(p), builtin_registry(), {true, true}).simulate(UINT64_MAX);
  for (bool flat : {true, false}) {
    RunReport efp = Coordinator(models::make_efp(p), builtin_registry(), {flat, true}).simulate(UINT64_MAX);
    if (efp.traces != gpt.traces) return fail(std::string("EF-P traces differ from GPT, flatten=") + (flat ? "on" : "off"));
  }
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    ModelGraph g = random_graph(rng, "r" + std::to_string(trial), 3);
    if (has_errors(validate(g))) return fail("random graph " + std::to_string(trial) + " invalid");
    ModelGraph once = flatten(g);
    if (!once.is_flat() || once.atomic_count() != g.atomic_count() || !(flatten(once) == once)) {
      return fail("flatten not idempotent on random graph " + std::to_string(trial));
    }
  }
  return pass("EF-P == GPT over " + std::to_string(gpt.cycles) + " cycles, 20 random graphs idempotent");
}

Result profile_staircase() {
  const int w = 8;
  const int d = 8;
  auto m = devstone::generate({Shape::ho, w, d, {DelayKind::constant, kStaircaseDelay}, 0});
  const auto prof = bench::profile(m.graph);
  std::map<std::string, double> t;
  for (const auto& a : prof) t[a.name] = a.total();

  const double top_expected = 2.0 * (w - 1) * kStaircaseDelay;
  double top_lo = INFINITY, top_hi = 0;
  for (int i = 0; i < d - 1; ++i) {
    const auto& a = prof[static_cast<std::size_t>(i)];
    if (a.name.rfind("A" + std::to_string(w - 1) + "_L", 0) != 0) {
      return fail("rank " + std::to_string(i + 1) + " is " + a.name);
    }
    top_lo = std::min(top_lo, a.total());
    top_hi = std::max(top_hi, a.total());
  }
  std::string detail = "top 7 in [" + fmt(top_lo) + ", " + fmt(top_hi) + "] s, expected " + fmt(top_expected) + " s";
  if (std::abs(top_lo - top_expected) > kStaircaseTolerance * top_expected ||
      std::abs(top_hi - top_expected) > kStaircaseTolerance * top_expected) {
    return fail(detail);
  }
  double worst = 0;
  for (int l = 1; l < d; ++l) {
    const double top = t.at(devstone::atomic_name(l, w - 1));
    for (int i = 1; i < w; ++i) {
      const double want = top * i / (w - 1);
      worst = std::max(worst, std::abs(t.at(devstone::atomic_name(l, i)) - want) / want);
    }
  }
  detail += ", staircase worst deviation " + fmt(100 * worst, 1) + "%";
  if (worst > kStaircaseTolerance) return fail(detail);
  return pass(detail);
}

const std::vector<std::pair<std::string, std::function<Result()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Result()>>> all = {
      {"backend_equivalence", backend_equivalence},
      {"counter_closed_forms", counter_closed_forms},
      {"atomic_count_table", atomic_count_table},
      {"cpu_delay_single", cpu_delay_single},
      {"cpu_delay_concurrent", cpu_delay_concurrent},
      {"desk_speedup", desk_speedup},
      {"two_level_monotonicity", two_level_monotonicity},
      {"distributed_protocol", distributed_protocol},
      {"chi_square_sampler", chi_square_sampler},
      {"flattening", flattening},
      {"profile_staircase", profile_staircase},
  };
  return all;
}

Status check(const std::string& name, const std::function<Result()>& f) {
  Result r;
  try {
    r = f();
  } catch (const std::exception& e) {
    r = fail(std::string("exception: ") + e.what());
  }
  static constexpr const char* labels[] = {"PASS", "FAIL", "SKIP"};
  std::printf("%s %s %s\n", labels[static_cast<int>(r.status)], name.c_str(), r.detail.c_str());
  std::fflush(stdout);
  return r.status;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: %s [criterion]\n", argv[0]);
    return 2;
  }
  bool any_fail = false;
  bool found = false;
  Status last = Status::pass;
  for (const auto& [name, f] : criteria()) {
    if (argc == 2 && name != argv[1]) continue;
    found = true;
    last = check(name, f);
    any_fail = any_fail || last == Status::fail;
  }
  if (!found) {
    std::fprintf(stderr, "unknown criterion '%s'\n", argv[1]);
    return 2;
  }
  if (argc == 2 && last == Status::skip) return 77;
  return any_fail ? 1 : 0;
}
