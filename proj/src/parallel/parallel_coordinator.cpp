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

#include "pdevs/parallel/parallel_coordinator.hpp"

#include <map>

namespace pdevs {

namespace {

CoordinatorOptions flattened(CoordinatorOptions o) {
  o.flatten = true;
  return o;
}

}  // namespace

ParallelCoordinator::ParallelCoordinator(const ModelGraph& graph, PoolPlan plan,
                                         const ModelRegistry& registry, CoordinatorOptions options,
                                         TaskLog* log)
    : Coordinator(graph, registry, flattened(options)), plan_(std::move(plan)), log_(log) {
  plan_.check(executed_graph());
  std::map<std::string, std::size_t> by_name;
  for (const auto& spec : plan_.pools) {
    by_name.emplace(spec.name, pools_.size());
    const std::size_t workers = spec.workers == 0 ? hardware_workers() : spec.workers;
    pools_.push_back({spec.name, std::make_unique<WorkerPool>(workers), {}});
  }
  for (std::size_t i = 0; i < simulators().size(); ++i) {
    const auto& pool = plan_.assignment.at(simulators()[i]->name());
    pools_[by_name.at(pool)].members.push_back(i);
  }
}

ParallelCoordinator::~ParallelCoordinator() = default;

std::string ParallelCoordinator::resources_label() const {
  std::string label;
  for (const auto& p : pools_) label += (label.empty() ? "" : "x") + std::to_string(p.workers->size());
  return label;
}

void ParallelCoordinator::run_lambdas(double t) { run_phase(Phase::lambda, t); }
void ParallelCoordinator::run_deltas(double t) { run_phase(Phase::delta, t); }

void ParallelCoordinator::run_phase(Phase phase, double t) {
  const std::uint64_t cycle = iterations();
  for (auto& pool : pools_) {
    pool.workers->run(pool.members.size(), [&](std::size_t k) {
      Simulator& sim = simulator(pool.members[k]);
      const auto start = std::chrono::steady_clock::now();
      if (phase == Phase::lambda) {
        sim.lambda(t);
      } else {
        sim.deltfcn(t);
      }
      if (log_ != nullptr) {
        log_->record({pool.name, phase, sim.name(), cycle, start, std::chrono::steady_clock::now()});
      }
    });
  }
}

}  // namespace pdevs
