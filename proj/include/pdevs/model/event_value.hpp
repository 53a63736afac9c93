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
#include <string>
#include <variant>
#include <vector>

namespace pdevs {

/// Content carried through ports. The payload set is closed so that anything a
/// sequential run can carry also crosses the distributed wire unchanged.
class EventValue {
 public:
  using List = std::vector<EventValue>;

  EventValue() : payload_(std::int64_t{0}) {}
  EventValue(std::int64_t v) : payload_(v) {}
  EventValue(int v) : payload_(std::int64_t{v}) {}
  EventValue(double v) : payload_(v) {}
  EventValue(std::string v) : payload_(std::move(v)) {}
  EventValue(const char* v) : payload_(std::string(v)) {}
  EventValue(List v) : payload_(std::move(v)) {}

  bool is_integer() const { return std::holds_alternative<std::int64_t>(payload_); }
  bool is_real() const { return std::holds_alternative<double>(payload_); }
  bool is_text() const { return std::holds_alternative<std::string>(payload_); }
  bool is_list() const { return std::holds_alternative<List>(payload_); }

  std::int64_t as_integer() const { return std::get<std::int64_t>(payload_); }
  double as_real() const { return std::get<double>(payload_); }
  const std::string& as_text() const { return std::get<std::string>(payload_); }
  const List& as_list() const { return std::get<List>(payload_); }

  /// Compact JSON-text rendering; the same text the wire protocol carries.
  std::string to_text() const;

  friend bool operator==(const EventValue& a, const EventValue& b);

 private:
  std::variant<std::int64_t, double, std::string, List> payload_;
};

/// Ordered multiset of values waiting on (or emitted by) one port.
using MessageBag = std::vector<EventValue>;

std::string bag_to_text(const MessageBag& bag);

}  // namespace pdevs
