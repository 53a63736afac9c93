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

#include "pdevs/parallel/pool_plan.hpp"

#include <set>

namespace pdevs {

PoolPlan PoolPlan::single(const ModelGraph& flat, std::size_t workers, std::string pool) {
  PoolPlan plan;
  plan.pools.push_back({pool, workers});
  for (const auto& c : flat.components()) plan.assignment.emplace(c.name, pool);
  return plan;
}

void PoolPlan::check(const ModelGraph& flat) const {
  std::set<std::string> names;
  for (const auto& p : pools) {
    if (!names.insert(p.name).second) throw ModelError("duplicate pool name '" + p.name + "'");
  }
  for (const auto& c : flat.components()) {
    auto it = assignment.find(c.name);
    if (it == assignment.end()) throw ModelError("atomic '" + c.name + "' is not assigned to any pool");
    if (names.count(it->second) == 0) {
      throw ModelError("atomic '" + c.name + "' assigned to unknown pool '" + it->second + "'");
    }
  }
  for (const auto& [atomic, pool] : assignment) {
    const auto* c = flat.find(atomic);
    if (c == nullptr || !c->is_atomic()) {
      throw ModelError("pool plan assigns unknown atomic '" + atomic + "'");
    }
  }
}

}  // namespace pdevs
