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

// pdevs: command-line harness for the Parallel-DEVS engine.
//
//   generate       DEVStone model -> plan XML
//   profile        per-atomic CPU profile of a sequential run -> CSV
//   allocate       profile -> two-level or balanced plan XML
//   run            run a plan on one backend -> report CSV row
//   report         report rows -> speedup CSV and plot data
//   emit-manifest  distributed plan -> pod manifest YAML
//   serve          host one atomic of a distributed plan
//   coordinate     drive the services of a distributed plan

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pdevs/bench/bench.hpp"
#include "pdevs/devstone/devstone.hpp"
#include "pdevs/dist/coordinator.hpp"
#include "pdevs/dist/manifest.hpp"
#include "pdevs/dist/service.hpp"
#include "pdevs/plan/plan.hpp"

namespace {

using namespace pdevs;

constexpr std::uint64_t kDefaultIterations = UINT64_MAX;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes to `path`, or stdout when it is empty or "-".
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

std::string self_executable() {
  std::error_code ec;
  auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (ec) throw std::runtime_error("cannot locate own executable: " + ec.message());
  return p.string();
}

PlanDefaults::Mode parse_mode(const std::string& s) {
  if (s == "pool") return PlanDefaults::Mode::pool;
  if (s == "endpoint") return PlanDefaults::Mode::endpoint;
  throw std::invalid_argument("unknown plan mode '" + s + "' (pool, endpoint)");
}

struct Common {
  std::string plan;
  std::string out;
  std::uint64_t iterations = kDefaultIterations;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel-DEVS engine harness", "pdevs"};
  app.require_subcommand(1);

  Common common;

  // generate
  std::string shape = "HO";
  int width = 2;
  int depth = 1;
  std::string dist = "constant";
  double k = 0.0;
  std::uint64_t seed = 0;
  std::string mode = "pool";
  std::size_t workers = 0;
  int base_port = 5000;
  auto* generate = app.add_subcommand("generate", "Generate a DEVStone model as plan XML");
  generate->add_option("--shape", shape, "LI, HI or HO")->capture_default_str();
  generate->add_option("-w,--width", width, "Width")->capture_default_str();
  generate->add_option("-d,--depth", depth, "Depth")->capture_default_str();
  generate->add_option("--dist", dist, "constant, uniform or chi2")->capture_default_str();
  generate->add_option("-k,--delay", k, "Delay parameter in CPU seconds")->capture_default_str();
  generate->add_option("--seed", seed, "Delay sampling seed")->capture_default_str();
  generate->add_option("--mode", mode, "pool or endpoint addressing")->capture_default_str();
  generate->add_option("--workers", workers, "Pool workers, 0 = one per CPU")->capture_default_str();
  generate->add_option("--base-port", base_port, "First endpoint port")->capture_default_str();
  generate->add_option("--out", common.out, "Output file (default stdout)");

  // profile
  int runs = 1;
  auto* profile = app.add_subcommand("profile", "Per-atomic CPU profile of a sequential run");
  profile->add_option("--plan", common.plan, "Plan XML")->required();
  profile->add_option("--runs", runs, "Runs to average")->capture_default_str();
  profile->add_option("--iterations", common.iterations, "Cycle cap");
  profile->add_option("--out", common.out, "Profile CSV (default stdout)");

  // allocate
  std::string profile_path;
  double fraction = 0.25;
  std::size_t n = 1;
  std::size_t m = 1;
  bool balanced = false;
  std::string target = "pools";
  auto* allocate = app.add_subcommand("allocate", "Two-level or balanced allocation from a profile");
  allocate->add_option("--plan", common.plan, "Plan XML")->required();
  allocate->add_option("--profile", profile_path, "Profile CSV")->required();
  allocate->add_option("--fraction", fraction, "Share of ranked atomics put in L1")->capture_default_str();
  allocate->add_option("-n", n, "L1 resources")->capture_default_str();
  allocate->add_option("-m", m, "L2 resources (balanced: bins)")->capture_default_str();
  allocate->add_flag("--balanced", balanced, "Single level, round-robin over m resources");
  allocate->add_option("--target", target, "pools or endpoints")->capture_default_str();
  allocate->add_option("--base-port", base_port, "First endpoint port")->capture_default_str();
  allocate->add_option("--out", common.out, "Plan XML (default stdout)");

  // run
  std::string backend = "sequential";
  bool threads = false;
  std::string trace_out;
  auto* run = app.add_subcommand("run", "Run a plan on one backend and append a report row");
  run->add_option("--plan", common.plan, "Plan XML")->required();
  run->add_option("--backend", backend, "sequential, parallel or distributed-local")->capture_default_str();
  run->add_option("--iterations", common.iterations, "Cycle cap");
  run->add_option("--seed", seed, "Accepted for symmetry; plans carry their sampled delays");
  run->add_flag("--threads", threads, "distributed-local: services on threads, not processes");
  run->add_option("--trace-out", trace_out, "Write per-atomic event traces here");
  run->add_option("--out", common.out, "Report CSV to append to (default stdout)");

  // report
  std::vector<std::string> inputs;
  std::string plot;
  auto* report = app.add_subcommand("report", "Speedup table from report rows");
  report->add_option("inputs", inputs, "Report CSV files")->required();
  report->add_option("--out", common.out, "Speedup CSV (default stdout)");
  report->add_option("--plot", plot, "Plot-data CSV");

  // emit-manifest
  dist::ManifestOptions manifest_options;
  auto* manifest = app.add_subcommand("emit-manifest", "Pod manifest for a distributed plan");
  manifest->add_option("--plan", common.plan, "Distributed plan XML")->required();
  manifest->add_option("--image", manifest_options.image, "Container image")->capture_default_str();
  manifest->add_option("--exec", manifest_options.executable, "Executable inside the image")
      ->capture_default_str();
  manifest->add_option("--plan-path", manifest_options.plan_path, "Plan path inside containers")
      ->capture_default_str();
  manifest->add_option("--out", common.out, "Manifest YAML (default stdout)");

  // serve
  std::string atomic;
  dist::NetworkOptions network;
  auto* serve = app.add_subcommand("serve", "Host one atomic of a distributed plan");
  serve->add_option("--plan", common.plan, "Distributed plan XML")->required();
  serve->add_option("--atomic", atomic, "Atomic to host")->required();
  serve->add_option("--bind", network.bind_host, "Listen address (default: host in the plan)");
  serve->add_option("--read-timeout", network.read_timeout, "Seconds to wait for a command")
      ->capture_default_str();

  // coordinate
  bool trace = false;
  auto* coordinate = app.add_subcommand("coordinate", "Drive the services of a distributed plan");
  coordinate->add_option("--plan", common.plan, "Distributed plan XML")->required();
  coordinate->add_option("--iterations", common.iterations, "Cycle cap");
  coordinate->add_option("--connect-timeout", network.connect_timeout, "Seconds to reach each service")
      ->capture_default_str();
  coordinate->add_flag("--trace", trace, "Collect event traces");
  coordinate->add_option("--trace-out", trace_out, "Write per-atomic event traces here");
  coordinate->add_option("--out", common.out, "Report CSV to append to (default stdout)");

  CLI11_PARSE(app, argc, argv);

  auto write_traces = [&](const RunReport& r) {
    if (trace_out.empty()) return;
    std::string text;
    for (const auto& [name, lines] : r.traces) {
      for (const auto& l : lines) text += name + " " + l + "\n";
    }
    write_output(trace_out, text);
  };
  auto emit_row = [&](const RunReport& r) {
    const std::string row = std::string(r.csv_row()) + "\n";
    if (common.out.empty() || common.out == "-") {
      std::cout << RunReport::csv_header() << "\n" << row;
      return;
    }
    const bool fresh = !std::filesystem::exists(common.out) || std::filesystem::file_size(common.out) == 0;
    std::ofstream out(common.out, std::ios::app);
    if (fresh) out << RunReport::csv_header() << "\n";
    out << row;
    if (!out) throw std::runtime_error("cannot write " + common.out);
  };

  try {
    if (generate->parsed()) {
      devstone::DevstoneConfig config{devstone::parse_shape(shape), width, depth,
                                      devstone::DelayDistribution::parse(dist, k), seed};
      auto model = devstone::generate(config);
      PlanDefaults d;
      d.mode = parse_mode(mode);
      d.workers = workers;
      d.base_port = base_port;
      write_output(common.out, emit_plan_xml(model.graph, d));
    } else if (profile->parsed()) {
      const Plan plan = load_plan(common.plan);
      write_output(common.out, bench::profile_csv(bench::profile(plan_graph(plan), runs, common.iterations)));
    } else if (allocate->parsed()) {
      const Plan plan = load_plan(common.plan);
      const ModelGraph& flat = plan_graph(plan);
      std::ifstream in(profile_path);
      if (!in) throw std::runtime_error("cannot read " + profile_path);
      const auto prof = bench::parse_profile_csv(in);
      const auto t = target == "pools"       ? bench::Target::pools
                     : target == "endpoints" ? bench::Target::endpoints
                                             : throw std::invalid_argument("unknown target '" + target +
                                                                           "' (pools, endpoints)");
      PlanDefaults d;
      d.base_port = base_port;
      Plan out;
      if (balanced) {
        auto bins = bench::allocate_balanced(prof, m);
        out = bench::balanced_plan(flat, bins, t, d);
        std::cerr << "balanced: " << prof.size() << " atomics over " << m << " resources\n";
      } else {
        auto a = bench::allocate_two_level(prof, fraction, n, m, bench::generator_atomics(flat));
        out = bench::two_level_plan(flat, a, t, d);
        std::cerr << "L1: " << a.l1.size() << " atomics on " << a.n << ", L2: " << a.l2.size() << " atomics on "
                  << a.m << "\n";
      }
      write_output(common.out, emit_plan_xml(out));
    } else if (run->parsed()) {
      const Plan plan = load_plan(common.plan);
      bench::RunOptions o;
      o.max_iterations = common.iterations;
      o.trace = !trace_out.empty();
      if (!threads) o.executable = self_executable();
      RunReport r = bench::run(plan, bench::parse_backend(backend), o);
      write_traces(r);
      emit_row(r);
    } else if (report->parsed()) {
      std::vector<RunReport> rows;
      for (const auto& path : inputs) {
        std::istringstream in(read_file(path));
        auto part = parse_report_csv(in);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      const auto s = bench::speedups(rows);
      write_output(common.out, bench::speedup_csv(s));
      if (!plot.empty()) write_output(plot, bench::plot_data_csv(s));
    } else if (manifest->parsed()) {
      const Plan plan = load_plan(common.plan);
      const auto* d = std::get_if<DistributedPlan>(&plan);
      if (d == nullptr) throw PlanError("emit-manifest needs a plan whose atomics name host and ports");
      write_output(common.out, dist::emit_manifest(*d, {}, manifest_options));
    } else if (serve->parsed()) {
      const Plan plan = load_plan(common.plan);
      const auto* d = std::get_if<DistributedPlan>(&plan);
      if (d == nullptr) throw PlanError("serve needs a plan whose atomics name host and ports");
      dist::SimulatorService service(*d, atomic, builtin_registry(), network);
      service.run();
    } else if (coordinate->parsed()) {
      const Plan plan = load_plan(common.plan);
      const auto* d = std::get_if<DistributedPlan>(&plan);
      if (d == nullptr) throw PlanError("coordinate needs a plan whose atomics name host and ports");
      dist::DistributedCoordinator c(*d, network, trace || !trace_out.empty());
      RunReport r = c.simulate(common.iterations);
      write_traces(r);
      emit_row(r);
    }
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (auto& ch : msg) {
      if (ch == '\n') ch = ' ';
    }
    std::cerr << "pdevs: error: " << msg << "\n";
    return 1;
  }
  return 0;
}
