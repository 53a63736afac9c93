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

#include <atomic>
#include <cstdint>

namespace pdevs {

/// Plain snapshot of the three global benchmark totals.
struct CounterTriple {
  std::uint64_t num_delt_ints = 0;
  std::uint64_t num_delt_exts = 0;
  std::uint64_t num_of_events = 0;

  friend bool operator==(const CounterTriple&, const CounterTriple&) = default;
  CounterTriple& operator+=(const CounterTriple& o) {
    num_delt_ints += o.num_delt_ints;
    num_delt_exts += o.num_delt_exts;
    num_of_events += o.num_of_events;
    return *this;
  }
};

/// Run-wide totals shared by every atomic of one run. Increments are atomic so
/// concurrent transitions inside a worker pool never lose updates.
class Counters {
 public:
  void add_internal() { ints_.fetch_add(1, std::memory_order_relaxed); }
  void add_external() { exts_.fetch_add(1, std::memory_order_relaxed); }
  void add_events(std::uint64_t n) { events_.fetch_add(n, std::memory_order_relaxed); }

  CounterTriple snapshot() const {
    return {ints_.load(), exts_.load(), events_.load()};
  }

 private:
  std::atomic<std::uint64_t> ints_{0};
  std::atomic<std::uint64_t> exts_{0};
  std::atomic<std::uint64_t> events_{0};
};

/// Services a coordinator hands to every atomic it instantiates.
struct ModelContext {
  Counters counters;
};

}  // namespace pdevs
