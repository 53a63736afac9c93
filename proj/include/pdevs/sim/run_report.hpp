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
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pdevs/model/atomic.hpp"
#include "pdevs/model/counters.hpp"

namespace pdevs {

using EventTraces = std::map<std::string, std::vector<std::string>>;

struct RunReport {
  std::string model;
  std::string backend;
  std::string resources = "1";  // "n" for one pool, "i x j" style "4x8" for two
  std::uint64_t cycles = 0;
  double wall_seconds = 0.0;
  double final_time = 0.0;
  CounterTriple counters;

  // Values emitted on atomic ports with no coupling, and values that reached
  // the root's output ports. Neither is an error.
  std::uint64_t dropped_values = 0;
  std::uint64_t external_outputs = 0;

  EventTraces traces;  // filled only when tracing is enabled
  std::map<std::string, TransitionCpu> cpu;

  std::uint64_t trace_hash() const;

  static std::string_view csv_header();
  std::string csv_row() const;
};

/// Parses rows written by csv_row() (header line optional). Only the CSV
/// columns are restored.
std::vector<RunReport> parse_report_csv(std::istream& in);

}  // namespace pdevs
