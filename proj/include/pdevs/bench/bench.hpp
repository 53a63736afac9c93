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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pdevs/devstone/devstone.hpp"
#include "pdevs/model/model_graph.hpp"
#include "pdevs/model/registry.hpp"
#include "pdevs/plan/plan.hpp"
#include "pdevs/sim/run_report.hpp"

namespace pdevs::bench {

using devstone::AtomicProfile;

// ---------------------------------------------------------------- profiling

/// Runs `graph` sequentially `runs` times and averages the CPU seconds each
/// atomic spent in its transitions. Result is ranked (see rank_profile).
std::vector<AtomicProfile> profile(const ModelGraph& graph, int runs = 1,
                                   std::uint64_t max_iterations = UINT64_MAX,
                                   const ModelRegistry& registry = builtin_registry());

/// Descending total CPU time, ties by atomic name.
void rank_profile(std::vector<AtomicProfile>& profile);

/// Header: atomic,cpu_seconds_ext,cpu_seconds_int,total
std::string_view profile_csv_header();
std::string profile_csv(const std::vector<AtomicProfile>& profile);
std::vector<AtomicProfile> parse_profile_csv(std::istream& in);

// --------------------------------------------------------------- allocation

/// Slow atomics (level 1) and the rest (level 2), each with its resource
/// count: workers of a pool, or container groups of a distributed plan.
struct Allocation2Level {
  std::vector<std::string> l1;
  std::vector<std::string> l2;
  std::size_t n = 1;
  std::size_t m = 1;
};

/// Puts the llround(fraction * ranked) slowest atomics in L1 and the rest in
/// L2; `pinned_l2` atomics (the benchmark generator) skip the ranking and
/// always go to L2. Both lists keep rank order. Throws std::invalid_argument
/// for n or m < 1 or a fraction outside [0, 1].
Allocation2Level allocate_two_level(const std::vector<AtomicProfile>& profile, double fraction,
                                    std::size_t n, std::size_t m,
                                    const std::set<std::string>& pinned_l2 = {});

/// Round-robin of the ranked atomics over `m` bins, heaviest first, so that
/// per-bin totals differ by at most the largest single t_i.
std::vector<std::vector<std::string>> allocate_balanced(const std::vector<AtomicProfile>& profile,
                                                        std::size_t m);

/// Atomics of a flat graph whose model is the benchmark generator.
std::set<std::string> generator_atomics(const ModelGraph& flat);

/// Same flat graph with `first` moved to the front in the given order and
/// the remaining components after them in their original order. Couplings
/// are untouched, so simulation results do not change; only the order in
/// which a worker pool picks up tasks does.
ModelGraph reorder(const ModelGraph& flat, const std::vector<std::string>& first);

enum class Target { pools, endpoints };

/// Pools "L1" (n workers) then "L2" (m workers), or for endpoints: L1 atomics
/// round-robin over n groups "l1-k", L2 atomics over m groups "l2-k".
Plan two_level_plan(const ModelGraph& flat, const Allocation2Level& allocation, Target target,
                    const PlanDefaults& defaults = {});

/// One pool with bins.size() workers, tasks in heaviest-first order, or one
/// container group per bin.
Plan balanced_plan(const ModelGraph& flat, const std::vector<std::vector<std::string>>& bins,
                   Target target, const PlanDefaults& defaults = {});

// ------------------------------------------------------------------ running

enum class Backend { sequential, parallel, distributed_local };

Backend parse_backend(std::string_view text);  // throws std::invalid_argument
std::string_view to_string(Backend backend);

struct RunOptions {
  std::uint64_t max_iterations = UINT64_MAX;
  bool trace = false;
  /// distributed-local: CLI executable spawned once per atomic. Empty runs
  /// the services on threads instead.
  std::string executable;
};

/// Sequential runs any plan. Parallel needs pool addressing and
/// distributed-local endpoint addressing; a mismatch throws PlanError.
RunReport run(const Plan& plan, Backend backend, const RunOptions& options = {});

// ---------------------------------------------------------------- reporting

struct SpeedupRow {
  std::string model;
  std::string backend;
  std::string label;  // "i" for one pool, "ixj" for two
  double wall_seconds = 0.0;
  double speedup = 0.0;

  friend bool operator==(const SpeedupRow&, const SpeedupRow&) = default;
};

/// One row per non-sequential run, speedup = baseline / wall. Every model
/// needs exactly one sequential row; otherwise std::invalid_argument.
std::vector<SpeedupRow> speedups(const std::vector<RunReport>& rows);

/// Header: model,backend,label,wall_seconds,speedup
std::string_view speedup_csv_header();
std::string speedup_csv(const std::vector<SpeedupRow>& rows);
std::vector<SpeedupRow> parse_speedup_csv(std::istream& in);

/// Plot data, one series per (model, backend) in first-seen order.
/// Header: series,x,label,speedup (x counts from 0 within a series)
std::string plot_data_csv(const std::vector<SpeedupRow>& rows);

}  // namespace pdevs::bench
