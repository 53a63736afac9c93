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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pdevs/devstone/delays.hpp"
#include "pdevs/model/atomic.hpp"
#include "pdevs/model/counters.hpp"
#include "pdevs/model/model_graph.hpp"
#include "pdevs/model/registry.hpp"

namespace pdevs::devstone {

inline constexpr std::string_view kAtomicModel = "devstone";
inline constexpr std::string_view kGeneratorModel = "devstone_generator";
inline constexpr std::string_view kGeneratorName = "generator";

enum class Shape { li, hi, ho };

Shape parse_shape(std::string_view text);
std::string_view to_string(Shape shape);

struct DevstoneConfig {
  Shape shape = Shape::ho;
  int width = 2;
  int depth = 1;
  DelayDistribution delays;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on w < 2 (with d >= 2), d < 1 or w < 1.
  void check() const;
};

struct DevstoneModel {
  /// Top-level wrapper holding the generator and the level-1 coupled model.
  ModelGraph graph;
  /// Benchmark atomics in generation order (level 1 chain first, deepest last).
  std::vector<std::string> atomics;
  std::map<std::string, double> delays;  // Delta_int == Delta_ext per atomic
};

DevstoneModel generate(const DevstoneConfig& config);

/// Name of chain atomic `index` (1-based) in coupled level `level` (1 = root).
std::string atomic_name(int level, int index);
std::string level_name(int level);

/// Closed-form sizes and transition totals of HO(w, d).
struct ExpectedCounts {
  std::uint64_t atomics = 0;
  std::uint64_t eic = 0;
  std::uint64_t ic = 0;
  std::uint64_t eoc = 0;
  std::uint64_t delt_ints = 0;
  std::uint64_t delt_exts = 0;
  std::uint64_t events = 0;

  friend bool operator==(const ExpectedCounts&, const ExpectedCounts&) = default;
};

ExpectedCounts expected_counts(int width, int depth);

struct AtomicProfile {
  std::string name;
  double cpu_seconds_ext = 0.0;
  double cpu_seconds_int = 0.0;

  double total() const { return cpu_seconds_ext + cpu_seconds_int; }
};

/// Benchmark atomic: stores every event it receives, forwards the whole list
/// on its next internal event, and burns CPU time in both transitions.
class DevstoneAtomic : public Atomic {
 public:
  DevstoneAtomic(std::string name, double delay_int, double delay_ext, Counters& counters);

  void initialize() override;
  void deltint() override;
  void deltext(double elapsed) override;
  void lambda() override;
  std::string state_text() const override;
  TransitionCpu cpu_usage() const override { return cpu_; }

  const EventValue::List& list() const { return list_; }

 private:
  double delay_int_;
  double delay_ext_;
  Counters& counters_;
  EventValue::List list_;
  TransitionCpu cpu_;
};

/// Emits one seed event at t = 0, then stays passive.
class DevstoneGenerator : public Atomic {
 public:
  explicit DevstoneGenerator(std::string name);

  void initialize() override;
  void deltint() override;
  void deltext(double elapsed) override;
  void lambda() override;
};

void register_models(ModelRegistry& registry);

}  // namespace pdevs::devstone
