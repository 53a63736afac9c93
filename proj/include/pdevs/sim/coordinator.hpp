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

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pdevs/model/counters.hpp"
#include "pdevs/model/model_graph.hpp"
#include "pdevs/model/registry.hpp"
#include "pdevs/sim/run_report.hpp"
#include "pdevs/sim/simulator.hpp"

namespace pdevs {

struct CoordinatorOptions {
  /// Execute the flattened graph. Off keeps one nested coordinator per
  /// coupled model, which is only useful to check closure under coupling.
  bool flatten = true;
  bool trace = false;
};

/// Sequential root coordinator; the reference semantics for every backend.
///
/// One cycle is ta -> lambda (imminent simulators emit, then outputs are
/// copied along IC/EOC couplings in insertion order) -> deltfcn (EIC copy,
/// transitions, bags cleared). The graph handed in is never modified.
class Coordinator {
 public:
  explicit Coordinator(const ModelGraph& graph,
                       const ModelRegistry& registry = builtin_registry(),
                       CoordinatorOptions options = {});
  virtual ~Coordinator();

  Coordinator(const Coordinator&) = delete;
  Coordinator& operator=(const Coordinator&) = delete;

  void initialize();
  /// Minimum next-event time over all simulators; infinity means passive.
  double ta() const;
  void lambda();
  void deltfcn();
  /// One full cycle at ta(); false (and nothing done) once passive.
  bool step();
  RunReport simulate(std::uint64_t max_iterations);

  double clock() const { return clock_; }
  std::uint64_t iterations() const { return iterations_; }
  const ModelGraph& executed_graph() const { return graph_; }
  const std::vector<std::unique_ptr<Simulator>>& simulators() const { return simulators_; }
  CounterTriple counters() const { return context_.counters.snapshot(); }
  bool bags_empty() const;

 protected:
  virtual void run_lambdas(double t);
  virtual void run_deltas(double t);
  virtual std::string backend_name() const { return "sequential"; }
  virtual std::string resources_label() const { return "1"; }

  Simulator& simulator(std::size_t i) { return *simulators_[i]; }
  std::size_t simulator_index(const std::string& name) const;

 private:
  struct Node;

  std::unique_ptr<Node> build(const ModelGraph& g, const ModelRegistry& registry);
  void propagate_output(Node& node);
  void propagate_input(Node& node);
  void clear(Node& node);
  bool node_empty(const Node& node) const;

  ModelGraph graph_;
  CoordinatorOptions options_;
  ModelContext context_;
  std::vector<std::unique_ptr<Simulator>> simulators_;
  std::unique_ptr<Node> root_;
  std::vector<MessageBag*> unrouted_outputs_;
  double clock_ = 0.0;
  std::uint64_t iterations_ = 0;
  std::uint64_t dropped_ = 0;
  std::uint64_t external_ = 0;
  bool initialized_ = false;
};

}  // namespace pdevs
