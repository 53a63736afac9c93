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

#include "pdevs/sim/simulator.hpp"

#include <exception>

#include "pdevs/model/event_json.hpp"

namespace pdevs {

namespace {

std::string ports_text(const std::vector<PortBag>& ports) {
  std::string s;
  for (const auto& p : ports) {
    if (p.bag.empty()) continue;
    s += " " + p.name + "=" + bag_to_text(p.bag);
  }
  return s;
}

template <typename F>
void guarded(const Atomic& atomic, const char* phase, F&& f) {
  try {
    f();
  } catch (const SimulationError&) {
    throw;
  } catch (const std::exception& e) {
    throw SimulationError(atomic.name(), std::string(phase) + " failed: " + e.what());
  } catch (...) {
    throw SimulationError(atomic.name(), std::string(phase) + " failed");
  }
}

// ta must lie in [0, inf]; anything else would move the clock backwards.
double checked_ta(const Atomic& atomic) {
  const double ta = atomic.ta();
  if (!(ta >= 0.0)) {
    throw SimulationError(atomic.name(), "time advance " + format_double(ta) + " is not in [0, inf]");
  }
  return ta;
}

}  // namespace

Simulator::Simulator(std::unique_ptr<Atomic> atomic, bool tracing)
    : atomic_(std::move(atomic)), tracing_(tracing) {}

void Simulator::initialize() {
  guarded(*atomic_, "initialize", [&] { atomic_->initialize(); });
  tl_ = 0.0;
  tn_ = tl_ + checked_ta(*atomic_);
  if (tracing_) trace_.push_back("t=0 init -> " + atomic_->state_text());
}

void Simulator::exit() {
  guarded(*atomic_, "exit", [&] { atomic_->exit(); });
}

void Simulator::lambda(double t) {
  if (t != tn_) return;
  guarded(*atomic_, "lambda", [&] { atomic_->lambda(); });
  if (tracing_) trace_.push_back("t=" + format_double(t) + " lambda" + ports_text(atomic_->outputs()));
}

Transition Simulator::deltfcn(double t) {
  const bool has_input = !atomic_->inputs_empty();
  const bool imminent = t == tn_;
  Transition kind = Transition::none;
  std::string inputs;
  if (tracing_ && has_input) inputs = ports_text(atomic_->inputs());

  if (imminent && !has_input) {
    kind = Transition::internal;
    guarded(*atomic_, "deltint", [&] { atomic_->deltint(); });
  } else if (has_input && !imminent) {
    kind = Transition::external;
    guarded(*atomic_, "deltext", [&] { atomic_->deltext(t - tl_); });
  } else if (has_input && imminent) {
    kind = Transition::confluent;
    guarded(*atomic_, "deltcon", [&] { atomic_->deltcon(t - tl_); });
  }
  atomic_->clear_ports();
  if (kind == Transition::none) return kind;

  ++transitions_;
  if (tracing_) {
    static constexpr const char* names[] = {"none", "int", "ext", "con"};
    std::string line = "t=" + format_double(t) + " " + names[static_cast<int>(kind)];
    if (kind == Transition::external) line += " e=" + format_double(t - tl_);
    line += inputs + " -> " + atomic_->state_text();
    trace_.push_back(std::move(line));
  }
  tl_ = t;
  tn_ = tl_ + checked_ta(*atomic_);
  return kind;
}

}  // namespace pdevs
