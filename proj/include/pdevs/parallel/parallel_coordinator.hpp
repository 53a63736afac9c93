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

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pdevs/parallel/pool_plan.hpp"
#include "pdevs/parallel/worker_pool.hpp"
#include "pdevs/sim/coordinator.hpp"

namespace pdevs {

enum class Phase { lambda, delta };

struct TaskRecord {
  std::string pool;
  Phase phase = Phase::lambda;
  std::string atomic;
  std::uint64_t cycle = 0;
  std::chrono::steady_clock::time_point start;
  std::chrono::steady_clock::time_point end;
};

/// Optional instrumentation: one record per executed phase task.
class TaskLog {
 public:
  void record(TaskRecord r) {
    std::lock_guard lock(mutex_);
    records_.push_back(std::move(r));
  }
  std::vector<TaskRecord> records() const {
    std::lock_guard lock(mutex_);
    return records_;
  }

 private:
  mutable std::mutex mutex_;
  std::vector<TaskRecord> records_;
};

/// Same protocol as Coordinator, with each simulator's lambda and delta work
/// run as tasks inside its assigned pool. Pools run one after another in plan
/// order; tasks inside a pool run concurrently. ta() and output propagation
/// stay on the calling thread, between the phases.
class ParallelCoordinator : public Coordinator {
 public:
  ParallelCoordinator(const ModelGraph& graph, PoolPlan plan,
                      const ModelRegistry& registry = builtin_registry(),
                      CoordinatorOptions options = {}, TaskLog* log = nullptr);
  ~ParallelCoordinator() override;

  const PoolPlan& plan() const { return plan_; }
  std::size_t pool_count() const { return pools_.size(); }
  std::size_t pool_workers(std::size_t pool) const { return pools_[pool].workers->size(); }
  /// One lambda task and one delta task per member simulator.
  std::size_t task_count(std::size_t pool) const { return pools_[pool].members.size(); }

 protected:
  void run_lambdas(double t) override;
  void run_deltas(double t) override;
  std::string backend_name() const override { return "parallel"; }
  std::string resources_label() const override;

 private:
  struct Pool {
    std::string name;
    std::unique_ptr<WorkerPool> workers;
    std::vector<std::size_t> members;  // simulator indices
  };

  void run_phase(Phase phase, double t);

  PoolPlan plan_;
  std::vector<Pool> pools_;
  TaskLog* log_;
};

}  // namespace pdevs
