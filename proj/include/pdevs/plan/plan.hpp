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

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "pdevs/model/model_graph.hpp"
#include "pdevs/model/registry.hpp"
#include "pdevs/parallel/pool_plan.hpp"

namespace pdevs {

class PlanError : public ModelError {
 public:
  using ModelError::ModelError;
};

struct Endpoint {
  std::string host;
  int main_port = 0;  // coordinator commands
  int aux_port = 0;   // peer PROPAGATE frames

  std::string label() const { return host + ":" + std::to_string(main_port); }
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Flat model whose atomics are assigned to named worker pools.
struct PooledPlan {
  ModelGraph graph;
  PoolPlan pools;
};

/// Flat model whose atomics each run in their own simulator service.
struct DistributedPlan {
  ModelGraph graph;
  std::map<std::string, Endpoint> endpoints;
  std::optional<Endpoint> coordinator;        // aux_port unused
  std::map<std::string, std::string> groups;  // atomic -> container group, optional

  /// Every atomic has an endpoint, ports are in range and no (host, port)
  /// is used twice. Throws PlanError.
  void check() const;
};

using Plan = std::variant<PooledPlan, DistributedPlan>;

/// Reads the plan document:
///
///   <coupled name="...">
///     <port name="..." direction="input|output"/>*
///     <coordinator host="..." port="..."/>?
///     <pool name="..." workers="N"/>*
///     <atomic name model [param="..."]* (host mainPort auxPort [group] | pool)/>*
///     <connection componentFrom portFrom componentTo portTo/>*
///   </coupled>
///
/// Atomics with host/port attributes give a DistributedPlan, atomics with a
/// pool attribute give a PooledPlan; mixing the two is an error.
Plan parse_plan_xml(std::istream& in, const ModelRegistry& registry = builtin_registry());
Plan load_plan(const std::string& path, const ModelRegistry& registry = builtin_registry());
PooledPlan load_pool_plan(const std::string& path,
                          const ModelRegistry& registry = builtin_registry());

struct PlanDefaults {
  enum class Mode { pool, endpoint };
  Mode mode = Mode::pool;
  std::string pool = "default";
  std::size_t workers = 0;  // 0: omitted, meaning one worker per CPU
  std::string host = "127.0.0.1";
  int base_port = 5000;     // atomic k gets base+2k (main) and base+2k+1 (aux)
};

/// Flattens `graph` and assigns every atomic the default pool or endpoint.
Plan default_plan(const ModelGraph& graph, const PlanDefaults& defaults = {});

/// Byte-stable serialization: emit(parse(emit(p))) == emit(p).
std::string emit_plan_xml(const Plan& plan);
std::string emit_plan_xml(const ModelGraph& graph, const PlanDefaults& defaults = {});

const ModelGraph& plan_graph(const Plan& plan);

}  // namespace pdevs
