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
#include <stdexcept>
#include <string>
#include <vector>

#include "pdevs/model/atomic.hpp"

namespace pdevs {

/// A user transition threw; the run is aborted and the atomic is named.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& atomic, const std::string& what)
      : std::runtime_error("atomic '" + atomic + "': " + what), atomic_(atomic) {}
  const std::string& atomic() const { return atomic_; }

 private:
  std::string atomic_;
};

enum class Transition { none, internal, external, confluent };

/// Abstract simulator for one atomic: owns the behavior and its tL/tN
/// bookkeeping, and applies the transition selection rule.
class Simulator {
 public:
  Simulator(std::unique_ptr<Atomic> atomic, bool tracing);

  Atomic& atomic() { return *atomic_; }
  const Atomic& atomic() const { return *atomic_; }
  const std::string& name() const { return atomic_->name(); }

  double last_time() const { return tl_; }
  double next_time() const { return tn_; }

  void initialize();
  void exit();
  /// Runs lambda only when `t` equals the next event time.
  void lambda(double t);
  /// int when imminent with no input, ext when input arrives early, con when
  /// both coincide; otherwise nothing. Ports are cleared afterwards.
  Transition deltfcn(double t);

  std::uint64_t transitions() const { return transitions_; }
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  std::unique_ptr<Atomic> atomic_;
  bool tracing_;
  double tl_ = 0.0;
  double tn_ = kInfinity;
  std::uint64_t transitions_ = 0;
  std::vector<std::string> trace_;
};

}  // namespace pdevs
