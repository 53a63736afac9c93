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

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "pdevs/model/event_value.hpp"

namespace pdevs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PortBag {
  std::string name;
  MessageBag bag;
};

/// CPU seconds an atomic reports having spent inside its transitions.
struct TransitionCpu {
  double internal_seconds = 0.0;
  double external_seconds = 0.0;
};

/// Behavior of a DEVS atomic model: state (phase, sigma and whatever the
/// subclass owns), the transition functions, the output function and ta.
///
/// Coordinators drive an atomic through the abstract simulator protocol and
/// never touch its state directly. Input bags are filled before a transition
/// and output bags are read after lambda(); both are cleared by the simulator.
class Atomic {
 public:
  explicit Atomic(std::string name) : name_(std::move(name)) {}
  virtual ~Atomic() = default;

  Atomic(const Atomic&) = delete;
  Atomic& operator=(const Atomic&) = delete;

  const std::string& name() const { return name_; }

  virtual void initialize() {}
  virtual void exit() {}
  virtual void deltint() = 0;
  virtual void deltext(double elapsed) = 0;
  /// Collision of an internal and an external event: internal first, then
  /// external with zero elapsed time.
  virtual void deltcon(double elapsed);
  virtual void lambda() = 0;
  virtual double ta() const { return sigma_; }

  /// Rendering of the model-owned state, written into event traces.
  virtual std::string state_text() const;
  virtual TransitionCpu cpu_usage() const { return {}; }

  const std::string& phase() const { return phase_; }
  double sigma() const { return sigma_; }
  bool passive() const { return sigma_ == kInfinity; }

  std::vector<PortBag>& inputs() { return inputs_; }
  std::vector<PortBag>& outputs() { return outputs_; }
  const std::vector<PortBag>& inputs() const { return inputs_; }
  const std::vector<PortBag>& outputs() const { return outputs_; }

  MessageBag& input(std::string_view port);
  MessageBag& output(std::string_view port);
  const MessageBag& input(std::string_view port) const;

  bool inputs_empty() const;
  void clear_ports();

 protected:
  void add_input(std::string port) { inputs_.push_back({std::move(port), {}}); }
  void add_output(std::string port) { outputs_.push_back({std::move(port), {}}); }

  void hold_in(std::string phase, double sigma) {
    phase_ = std::move(phase);
    sigma_ = sigma;
  }
  void passivate() { hold_in("passive", kInfinity); }
  void send(std::string_view port, EventValue value) {
    output(port).push_back(std::move(value));
  }

 private:
  std::string name_;
  std::string phase_ = "passive";
  double sigma_ = kInfinity;
  std::vector<PortBag> inputs_;
  std::vector<PortBag> outputs_;
};

}  // namespace pdevs
