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
#include <map>
#include <string>
#include <vector>

#include "pdevs/model/model_graph.hpp"

namespace pdevs {

struct PoolSpec {
  std::string name;
  std::size_t workers = 0;  // 0: one worker per logical CPU

  friend bool operator==(const PoolSpec&, const PoolSpec&) = default;
};

/// Which named worker pool runs each atomic. Pool order is execution order
/// inside every phase.
struct PoolPlan {
  std::vector<PoolSpec> pools;
  std::map<std::string, std::string> assignment;  // atomic -> pool

  static PoolPlan single(const ModelGraph& flat, std::size_t workers, std::string pool = "default");

  /// Throws ModelError naming the first atomic missing from the plan, the
  /// first unknown pool or the first assigned name that is not an atomic.
  void check(const ModelGraph& flat) const;

  friend bool operator==(const PoolPlan&, const PoolPlan&) = default;
};

}  // namespace pdevs
