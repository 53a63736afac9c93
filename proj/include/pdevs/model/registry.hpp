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

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pdevs/model/atomic.hpp"
#include "pdevs/model/counters.hpp"
#include "pdevs/model/model_graph.hpp"

namespace pdevs {

using AtomicFactory =
    std::function<std::unique_ptr<Atomic>(const AtomicSpec&, ModelContext&)>;

struct ModelType {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  AtomicFactory make;
};

/// Maps the `model` attribute of an AtomicSpec onto a behavior factory and
/// its port signature. Plans only name models, so every process that runs a
/// simulator must be able to rebuild the behavior from this table.
class ModelRegistry {
 public:
  void add(std::string model, ModelType type);
  const ModelType& at(std::string_view model) const;
  bool contains(std::string_view model) const;

  AtomicSpec make_spec(std::string name, std::string model,
                       std::map<std::string, std::string> params = {}) const;
  std::unique_ptr<Atomic> instantiate(const AtomicSpec& spec, ModelContext& ctx) const;

 private:
  std::map<std::string, ModelType, std::less<>> types_;
};

/// Registry holding every model shipped with the library (DEVStone atomics
/// and the generator/processor/transducer example).
const ModelRegistry& builtin_registry();

double param_seconds(const AtomicSpec& spec, std::string_view key, double fallback);
long long param_integer(const AtomicSpec& spec, std::string_view key, long long fallback);

}  // namespace pdevs
