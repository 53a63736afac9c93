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

#include "pdevs/model/registry.hpp"

#include <stdexcept>

#include "pdevs/model/event_json.hpp"

namespace pdevs {

void ModelRegistry::add(std::string model, ModelType type) {
  if (!types_.emplace(std::move(model), std::move(type)).second) {
    throw ModelError("model type registered twice");
  }
}

const ModelType& ModelRegistry::at(std::string_view model) const {
  auto it = types_.find(model);
  if (it == types_.end()) throw ModelError("unknown model type '" + std::string(model) + "'");
  return it->second;
}

bool ModelRegistry::contains(std::string_view model) const { return types_.find(model) != types_.end(); }

AtomicSpec ModelRegistry::make_spec(std::string name, std::string model,
                                    std::map<std::string, std::string> params) const {
  const auto& type = at(model);
  return {std::move(name), std::move(model), type.inputs, type.outputs, std::move(params)};
}

std::unique_ptr<Atomic> ModelRegistry::instantiate(const AtomicSpec& spec, ModelContext& ctx) const {
  const auto& type = at(spec.model);
  if (type.inputs != spec.inputs || type.outputs != spec.outputs) {
    throw ModelError("atomic '" + spec.name + "' declares ports that do not match model '" +
                     spec.model + "'");
  }
  auto atomic = type.make(spec, ctx);
  if (atomic->name() != spec.name) {
    throw ModelError("factory for '" + spec.model + "' renamed atomic '" + spec.name + "'");
  }
  return atomic;
}

double param_seconds(const AtomicSpec& spec, std::string_view key, double fallback) {
  auto it = spec.params.find(std::string(key));
  if (it == spec.params.end()) return fallback;
  try {
    return parse_double(it->second);
  } catch (const std::exception&) {
    throw ModelError("atomic '" + spec.name + "': parameter " + std::string(key) + "='" +
                     it->second + "' is not a number");
  }
}

long long param_integer(const AtomicSpec& spec, std::string_view key, long long fallback) {
  auto it = spec.params.find(std::string(key));
  if (it == spec.params.end()) return fallback;
  try {
    std::size_t used = 0;
    long long v = std::stoll(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ModelError("atomic '" + spec.name + "': parameter " + std::string(key) + "='" +
                     it->second + "' is not an integer");
  }
}

}  // namespace pdevs
