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

#include "pdevs/bench/bench.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pdevs/dist/coordinator.hpp"
#include "pdevs/model/event_json.hpp"
#include "pdevs/parallel/parallel_coordinator.hpp"
#include "pdevs/sim/coordinator.hpp"

namespace pdevs::bench {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (!line.empty() && line.back() == ',') f.emplace_back();
  return f;
}

template <typename Row, typename Parse>
std::vector<Row> parse_rows(std::istream& in, std::string_view header, std::size_t fields,
                            const char* what, Parse parse) {
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == header) continue;
    auto f = split_csv(line);
    if (f.size() != fields) {
      throw std::invalid_argument(std::string(what) + " line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(fields) + " fields");
    }
    try {
      rows.push_back(parse(f));
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string(what) + " line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<std::string> ranked_names(const std::vector<AtomicProfile>& profile) {
  auto ranked = profile;
  rank_profile(ranked);
  std::vector<std::string> names;
  for (const auto& p : ranked) names.push_back(p.name);
  return names;
}

void check_covers(const ModelGraph& flat, const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (flat.find(n) == nullptr) throw PlanError("allocation names unknown atomic '" + n + "'");
    if (!seen.insert(n).second) throw PlanError("allocation names atomic '" + n + "' twice");
  }
  for (const auto& c : flat.components()) {
    if (!seen.count(c.name)) throw PlanError("allocation does not cover atomic '" + c.name + "'");
  }
}

DistributedPlan endpoint_plan(const ModelGraph& flat, const PlanDefaults& defaults) {
  PlanDefaults d = defaults;
  d.mode = PlanDefaults::Mode::endpoint;
  return std::get<DistributedPlan>(default_plan(flat, d));
}

void round_robin_groups(DistributedPlan& plan, const std::vector<std::string>& names, std::size_t count,
                        const std::string& prefix) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    plan.groups[names[i]] = prefix + std::to_string(i % count);
  }
}

}  // namespace

// ------------------------------------------------------------------ profile

std::vector<AtomicProfile> profile(const ModelGraph& graph, int runs, std::uint64_t max_iterations,
                                   const ModelRegistry& registry) {
  if (runs < 1) throw std::invalid_argument("profile needs at least one run");
  std::map<std::string, AtomicProfile> sum;
  for (int r = 0; r < runs; ++r) {
    RunReport report = Coordinator(graph, registry).simulate(max_iterations);
    for (const auto& [name, cpu] : report.cpu) {
      auto& p = sum[name];
      p.name = name;
      p.cpu_seconds_ext += cpu.external_seconds;
      p.cpu_seconds_int += cpu.internal_seconds;
    }
  }
  std::vector<AtomicProfile> out;
  for (auto& [name, p] : sum) {
    p.cpu_seconds_ext /= runs;
    p.cpu_seconds_int /= runs;
    out.push_back(p);
  }
  rank_profile(out);
  return out;
}

void rank_profile(std::vector<AtomicProfile>& profile) {
  std::stable_sort(profile.begin(), profile.end(), [](const AtomicProfile& a, const AtomicProfile& b) {
    if (a.total() != b.total()) return a.total() > b.total();
    return a.name < b.name;
  });
}

std::string_view profile_csv_header() { return "atomic,cpu_seconds_ext,cpu_seconds_int,total"; }

std::string profile_csv(const std::vector<AtomicProfile>& profile) {
  std::string out = std::string(profile_csv_header()) + "\n";
  for (const auto& p : profile) {
    out += p.name + "," + format_double(p.cpu_seconds_ext) + "," + format_double(p.cpu_seconds_int) + "," +
           format_double(p.total()) + "\n";
  }
  return out;
}

std::vector<AtomicProfile> parse_profile_csv(std::istream& in) {
  return parse_rows<AtomicProfile>(in, profile_csv_header(), 4, "profile", [](const auto& f) {
    AtomicProfile p;
    p.name = f[0];
    p.cpu_seconds_ext = parse_double(f[1]);
    p.cpu_seconds_int = parse_double(f[2]);
    if (p.cpu_seconds_ext < 0 || p.cpu_seconds_int < 0) throw std::invalid_argument("negative CPU time");
    return p;
  });
}

// --------------------------------------------------------------- allocation

Allocation2Level allocate_two_level(const std::vector<AtomicProfile>& profile, double fraction,
                                    std::size_t n, std::size_t m, const std::set<std::string>& pinned_l2) {
  if (n < 1 || m < 1) throw std::invalid_argument("resource counts n and m must be at least 1");
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must lie in [0, 1]");
  Allocation2Level a;
  a.n = n;
  a.m = m;
  std::vector<std::string> ranked;
  std::vector<std::string> pinned;
  for (const auto& name : ranked_names(profile)) (pinned_l2.count(name) ? pinned : ranked).push_back(name);

  auto l1_size = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(ranked.size())));
  if (fraction > 0.0 && !ranked.empty()) l1_size = std::max<std::size_t>(l1_size, 1);
  l1_size = std::min(l1_size, ranked.size());

  a.l1.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(l1_size));
  a.l2.assign(ranked.begin() + static_cast<std::ptrdiff_t>(l1_size), ranked.end());
  a.l2.insert(a.l2.end(), pinned.begin(), pinned.end());
  return a;
}

std::vector<std::vector<std::string>> allocate_balanced(const std::vector<AtomicProfile>& profile,
                                                        std::size_t m) {
  if (m < 1) throw std::invalid_argument("resource count m must be at least 1");
  std::vector<std::vector<std::string>> bins(m);
  const auto names = ranked_names(profile);
  for (std::size_t i = 0; i < names.size(); ++i) bins[i % m].push_back(names[i]);
  return bins;
}

std::set<std::string> generator_atomics(const ModelGraph& flat) {
  std::set<std::string> out;
  for (const auto& c : flat.components()) {
    if (c.is_atomic() && c.atomic().model == devstone::kGeneratorModel) out.insert(c.name);
  }
  return out;
}

ModelGraph reorder(const ModelGraph& flat, const std::vector<std::string>& first) {
  if (!flat.is_flat()) throw PlanError("reorder needs a flat graph");
  ModelGraph out(flat.name(), flat.inputs(), flat.outputs());
  std::set<std::string> placed;
  for (const auto& name : first) {
    const auto* c = flat.find(name);
    if (c == nullptr) throw PlanError("unknown atomic '" + name + "'");
    if (placed.insert(name).second) out.add_component(c->atomic());
  }
  for (const auto& c : flat.components()) {
    if (!placed.count(c.name)) out.add_component(c.atomic());
  }
  for (const auto& c : flat.couplings()) out.add_coupling(c);
  return out;
}

Plan two_level_plan(const ModelGraph& flat, const Allocation2Level& a, Target target,
                    const PlanDefaults& defaults) {
  std::vector<std::string> all = a.l1;
  all.insert(all.end(), a.l2.begin(), a.l2.end());
  check_covers(flat, all);
  const ModelGraph ordered = reorder(flat, all);
  if (target == Target::pools) {
    PooledPlan plan{ordered, {}};
    plan.pools.pools = {{"L1", a.n}, {"L2", a.m}};
    for (const auto& name : a.l1) plan.pools.assignment[name] = "L1";
    for (const auto& name : a.l2) plan.pools.assignment[name] = "L2";
    return plan;
  }
  DistributedPlan plan = endpoint_plan(ordered, defaults);
  round_robin_groups(plan, a.l1, a.n, "l1-");
  round_robin_groups(plan, a.l2, a.m, "l2-");
  return plan;
}

Plan balanced_plan(const ModelGraph& flat, const std::vector<std::vector<std::string>>& bins, Target target,
                   const PlanDefaults& defaults) {
  if (bins.empty()) throw std::invalid_argument("balanced plan needs at least one bin");
  // interleave the bins back into rank order: bin k holds ranks k, k+m, ...
  std::vector<std::string> ranked;
  for (std::size_t row = 0;; ++row) {
    bool any = false;
    for (const auto& b : bins) {
      if (row < b.size()) {
        ranked.push_back(b[row]);
        any = true;
      }
    }
    if (!any) break;
  }
  check_covers(flat, ranked);
  const ModelGraph ordered = reorder(flat, ranked);
  if (target == Target::pools) {
    PlanDefaults d = defaults;
    d.mode = PlanDefaults::Mode::pool;
    d.workers = bins.size();
    return default_plan(ordered, d);
  }
  DistributedPlan plan = endpoint_plan(ordered, defaults);
  for (std::size_t k = 0; k < bins.size(); ++k) {
    for (const auto& name : bins[k]) plan.groups[name] = "g-" + std::to_string(k);
  }
  return plan;
}

// ------------------------------------------------------------------ running

Backend parse_backend(std::string_view text) {
  if (text == "sequential") return Backend::sequential;
  if (text == "parallel") return Backend::parallel;
  if (text == "distributed-local") return Backend::distributed_local;
  throw std::invalid_argument("unknown backend '" + std::string(text) +
                              "' (sequential, parallel, distributed-local)");
}

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::sequential:
      return "sequential";
    case Backend::parallel:
      return "parallel";
    case Backend::distributed_local:
      return "distributed-local";
  }
  return "?";
}

RunReport run(const Plan& plan, Backend backend, const RunOptions& options) {
  const CoordinatorOptions co{true, options.trace};
  switch (backend) {
    case Backend::sequential:
      return Coordinator(plan_graph(plan), builtin_registry(), co).simulate(options.max_iterations);
    case Backend::parallel: {
      const auto* p = std::get_if<PooledPlan>(&plan);
      if (p == nullptr) throw PlanError("backend 'parallel' needs a plan whose atomics name pools");
      return ParallelCoordinator(p->graph, p->pools, builtin_registry(), co).simulate(options.max_iterations);
    }
    case Backend::distributed_local: {
      const auto* d = std::get_if<DistributedPlan>(&plan);
      if (d == nullptr) {
        throw PlanError("backend 'distributed-local' needs a plan whose atomics name host and ports");
      }
      dist::LocalRunOptions lo;
      lo.executable = options.executable;
      lo.trace = options.trace;
      return dist::run_distributed_local(*d, options.max_iterations, lo);
    }
  }
  throw std::invalid_argument("unknown backend");
}

// ---------------------------------------------------------------- reporting

std::vector<SpeedupRow> speedups(const std::vector<RunReport>& rows) {
  std::map<std::string, double> baseline;
  for (const auto& r : rows) {
    if (r.backend != "sequential") continue;
    if (!baseline.emplace(r.model, r.wall_seconds).second) {
      throw std::invalid_argument("model '" + r.model + "' has more than one sequential baseline");
    }
  }
  std::vector<SpeedupRow> out;
  for (const auto& r : rows) {
    if (r.backend == "sequential") continue;
    auto it = baseline.find(r.model);
    if (it == baseline.end()) {
      throw std::invalid_argument("model '" + r.model + "' has no sequential baseline");
    }
    if (!(r.wall_seconds > 0.0)) {
      throw std::invalid_argument("model '" + r.model + "': " + r.backend + " run has no wall time");
    }
    out.push_back({r.model, r.backend, r.resources, r.wall_seconds, it->second / r.wall_seconds});
  }
  return out;
}

std::string_view speedup_csv_header() { return "model,backend,label,wall_seconds,speedup"; }

std::string speedup_csv(const std::vector<SpeedupRow>& rows) {
  std::string out = std::string(speedup_csv_header()) + "\n";
  for (const auto& r : rows) {
    out += r.model + "," + r.backend + "," + r.label + "," + format_double(r.wall_seconds) + "," +
           format_double(r.speedup) + "\n";
  }
  return out;
}

std::vector<SpeedupRow> parse_speedup_csv(std::istream& in) {
  return parse_rows<SpeedupRow>(in, speedup_csv_header(), 5, "speedup", [](const auto& f) {
    return SpeedupRow{f[0], f[1], f[2], parse_double(f[3]), parse_double(f[4])};
  });
}

std::string plot_data_csv(const std::vector<SpeedupRow>& rows) {
  std::string out = "series,x,label,speedup\n";
  std::map<std::string, int> next_x;
  for (const auto& r : rows) {
    const std::string series = r.model + "/" + r.backend;
    out += series + "," + std::to_string(next_x[series]++) + "," + r.label + "," + format_double(r.speedup) +
           "\n";
  }
  return out;
}

}  // namespace pdevs::bench
