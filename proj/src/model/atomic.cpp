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

#include "pdevs/model/atomic.hpp"

#include <algorithm>
#include <stdexcept>

#include "pdevs/model/event_json.hpp"

namespace pdevs {

namespace {

template <typename Ports>
auto& find_bag(Ports& ports, std::string_view port, const std::string& owner) {
  auto it = std::find_if(ports.begin(), ports.end(),
                         [&](const PortBag& p) { return p.name == port; });
  if (it == ports.end()) {
    throw std::out_of_range("atomic '" + owner + "' has no port '" + std::string(port) + "'");
  }
  return it->bag;
}

}  // namespace

void Atomic::deltcon(double /*elapsed*/) {
  deltint();
  deltext(0.0);
}

std::string Atomic::state_text() const { return phase_ + " " + format_double(sigma_); }

MessageBag& Atomic::input(std::string_view port) { return find_bag(inputs_, port, name_); }
MessageBag& Atomic::output(std::string_view port) { return find_bag(outputs_, port, name_); }
const MessageBag& Atomic::input(std::string_view port) const {
  return find_bag(inputs_, port, name_);
}

bool Atomic::inputs_empty() const {
  return std::all_of(inputs_.begin(), inputs_.end(),
                     [](const PortBag& p) { return p.bag.empty(); });
}

void Atomic::clear_ports() {
  for (auto& p : inputs_) p.bag.clear();
  for (auto& p : outputs_) p.bag.clear();
}

}  // namespace pdevs
