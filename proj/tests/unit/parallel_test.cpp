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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <chrono>

#include "pdevs/devstone/busy_cpu.hpp"
#include "pdevs/devstone/devstone.hpp"
#include "pdevs/models/efp.hpp"
#include "pdevs/parallel/parallel_coordinator.hpp"
#include "pdevs/parallel/worker_pool.hpp"

namespace pdevs {
namespace {

using devstone::DelayDistribution;
using devstone::Shape;

TEST(WorkerPool, RunsEveryTaskOnce) {
  WorkerPool pool(3);
  std::vector<std::atomic<int>> hits(100);
  pool.run(100, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  pool.run(0, [](std::size_t) { FAIL(); });  // empty batch is a no-op
}

TEST(WorkerPool, RethrowsTaskFailureAfterDrain) {
  WorkerPool pool(2);
  std::atomic<int> ran{0};
  EXPECT_THROW(pool.run(10,
                        [&](std::size_t i) {
                          ran++;
                          if (i == 3) throw std::runtime_error("x");
                        }),
               std::runtime_error);
  EXPECT_EQ(ran.load(), 10);
  pool.run(4, [&](std::size_t) { ran++; });  // still usable
  EXPECT_EQ(ran.load(), 14);
}

TEST(WorkerPool, RejectsZeroWorkers) { EXPECT_THROW(WorkerPool(0), std::invalid_argument); }

PoolPlan two_pools(const ModelGraph& flat, std::size_t l1_workers, std::size_t l2_workers,
                   std::size_t l1_count) {
  PoolPlan plan;
  plan.pools = {{"L1", l1_workers}, {"L2", l2_workers}};
  std::size_t k = 0;
  for (const auto& c : flat.components()) {
    plan.assignment[c.name] = (c.name != "generator" && k++ < l1_count) ? "L1" : "L2";
  }
  return plan;
}

TEST(Parallel, MatchesSequentialExactly) {
  for (auto shape : {Shape::li, Shape::hi, Shape::ho}) {
    auto m = devstone::generate({shape, 5, 4, {}, 0});
    const ModelGraph flat = flatten(m.graph);
    RunReport seq = Coordinator(m.graph, builtin_registry(), {true, true}).simulate(100000);
    for (std::size_t workers : {1u, 4u}) {
      ParallelCoordinator p(m.graph, PoolPlan::single(flat, workers), builtin_registry(), {true, true});
      RunReport r = p.simulate(100000);
      EXPECT_EQ(r.traces, seq.traces);
      EXPECT_EQ(r.counters, seq.counters);
      EXPECT_EQ(r.cycles, seq.cycles);
      EXPECT_EQ(r.backend, "parallel");
    }
    ParallelCoordinator p2(m.graph, two_pools(flat, 2, 2, 4), builtin_registry(), {true, true});
    RunReport r2 = p2.simulate(100000);
    EXPECT_EQ(r2.traces, seq.traces);
    EXPECT_EQ(r2.counters, seq.counters);
    EXPECT_EQ(r2.resources, "2x2");
  }
}

TEST(Parallel, GptMatchesSequential) {
  models::EfpParams p;
  p.jobs = 10;
  ModelGraph g = models::make_efp(p);
  RunReport seq = Coordinator(g, builtin_registry(), {true, true}).simulate(1000);
  RunReport par = ParallelCoordinator(g, PoolPlan::single(flatten(g), 3), builtin_registry(), {true, true})
                      .simulate(1000);
  EXPECT_EQ(seq.traces, par.traces);
}

TEST(Parallel, Ho15TwoLevelPlanHasAllTasks) {
  auto m = devstone::generate({Shape::ho, 15, 15, {}, 0});
  const ModelGraph flat = flatten(m.graph);
  ParallelCoordinator p(m.graph, two_pools(flat, 4, 8, 49));
  EXPECT_EQ(p.pool_count(), 2u);
  EXPECT_EQ(p.task_count(0), 49u);
  EXPECT_EQ(p.task_count(1), 149u);
  EXPECT_EQ(p.task_count(0) + p.task_count(1), 198u);
  EXPECT_EQ(p.pool_workers(0), 4u);
  EXPECT_EQ(p.pool_workers(1), 8u);
  EXPECT_EQ(p.simulate(1'000'000).counters.num_delt_ints, 1471u);
}

TEST(Parallel, MissingAtomicIsNamed) {
  auto m = devstone::generate({Shape::ho, 3, 3, {}, 0});
  PoolPlan plan = PoolPlan::single(flatten(m.graph), 2);
  plan.assignment.erase("A2_L1");
  try {
    ParallelCoordinator p(m.graph, plan);
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("A2_L1"), std::string::npos);
  }
}

TEST(Parallel, UnknownPoolRejected) {
  auto m = devstone::generate({Shape::ho, 3, 3, {}, 0});
  PoolPlan plan = PoolPlan::single(flatten(m.graph), 2);
  plan.assignment["A1_L1"] = "nowhere";
  EXPECT_THROW(ParallelCoordinator(m.graph, plan), ModelError);
}

TEST(Parallel, EmptyPoolIsNoOp) {
  auto m = devstone::generate({Shape::ho, 3, 3, {}, 0});
  PoolPlan plan = PoolPlan::single(flatten(m.graph), 2);
  plan.pools.push_back({"idle", 1});
  ParallelCoordinator p(m.graph, plan);
  EXPECT_EQ(p.task_count(1), 0u);
  EXPECT_EQ(p.simulate(1000).counters.num_delt_ints, devstone::expected_counts(3, 3).delt_ints);
}

TEST(Parallel, DefaultWorkersIsHardwareCount) {
  auto m = devstone::generate({Shape::ho, 3, 3, {}, 0});
  ParallelCoordinator p(m.graph, PoolPlan::single(flatten(m.graph), 0));
  EXPECT_EQ(p.pool_workers(0), hardware_workers());
}

TEST(Parallel, PoolsRunInOrderAndPhasesAreBarriered) {
  auto m = devstone::generate({Shape::ho, 5, 4, DelayDistribution::parse("constant", 0.001), 0});
  const ModelGraph flat = flatten(m.graph);
  TaskLog log;
  ParallelCoordinator p(m.graph, two_pools(flat, 2, 2, 5), builtin_registry(), {}, &log);
  p.simulate(100000);
  auto records = log.records();
  ASSERT_FALSE(records.empty());

  // Group by (cycle, phase) preserving pool identity.
  std::map<std::pair<std::uint64_t, int>, std::vector<TaskRecord>> groups;
  for (const auto& r : records) groups[{r.cycle, static_cast<int>(r.phase)}].push_back(r);
  for (const auto& [key, recs] : groups) {
    std::chrono::steady_clock::time_point l1_end{}, l2_start = std::chrono::steady_clock::time_point::max();
    for (const auto& r : recs) {
      if (r.pool == "L1") l1_end = std::max(l1_end, r.end);
      else l2_start = std::min(l2_start, r.start);
    }
    EXPECT_LE(l1_end, l2_start) << "cycle " << key.first;
  }
  // Every delta task of cycle k starts after every lambda task of cycle k.
  std::map<std::uint64_t, std::chrono::steady_clock::time_point> lambda_end, delta_start;
  for (const auto& r : records) {
    if (r.phase == Phase::lambda) {
      lambda_end[r.cycle] = std::max(lambda_end[r.cycle], r.end);
    } else {
      auto it = delta_start.find(r.cycle);
      if (it == delta_start.end() || r.start < it->second) delta_start[r.cycle] = r.start;
    }
  }
  for (const auto& [cycle, start] : delta_start) EXPECT_LE(lambda_end[cycle], start);
}

TEST(Parallel, PhaseWallTimeScalesWithWorkers) {
  // 8 tasks of 100 ms CPU on 4 workers take about two task lengths, given
  // four CPUs to run them on.
  if (hardware_workers() < 4) GTEST_SKIP() << "needs 4 CPUs, have " << hardware_workers();
  WorkerPool pool(4);
  auto start = std::chrono::steady_clock::now();
  pool.run(8, [](std::size_t) { devstone::busy_cpu(0.1); });
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_GE(wall, 0.2);
  EXPECT_LE(wall, 0.3);
}

TEST(Parallel, GraphUnchanged) {
  auto m = devstone::generate({Shape::ho, 4, 4, {}, 0});
  auto h = structural_hash(m.graph);
  ParallelCoordinator(m.graph, PoolPlan::single(flatten(m.graph), 2)).simulate(1000);
  Coordinator(m.graph).simulate(1000);
  EXPECT_EQ(structural_hash(m.graph), h);
}

}  // namespace
}  // namespace pdevs
