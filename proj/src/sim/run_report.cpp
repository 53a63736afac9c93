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

#include "pdevs/sim/run_report.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

#include "pdevs/model/event_json.hpp"

namespace pdevs {

std::uint64_t RunReport::trace_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  for (const auto& [name, lines] : traces) {
    mix(name);
    for (const auto& l : lines) mix(l);
  }
  return h;
}

std::string_view RunReport::csv_header() {
  return "model,backend,workers,cycles,wall_seconds,num_delt_ints,num_delt_exts,num_events";
}

std::string RunReport::csv_row() const {
  std::ostringstream os;
  os << model << ',' << backend << ',' << resources << ',' << cycles << ','
     << format_double(wall_seconds) << ',' << counters.num_delt_ints << ','
     << counters.num_delt_exts << ',' << counters.num_of_events;
  return os.str();
}

std::vector<RunReport> parse_report_csv(std::istream& in) {
  std::vector<RunReport> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == RunReport::csv_header()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 8) {
      throw std::invalid_argument("report line " + std::to_string(lineno) + ": expected 8 fields");
    }
    RunReport r;
    r.model = f[0];
    r.backend = f[1];
    r.resources = f[2];
    try {
      r.cycles = std::stoull(f[3]);
      r.wall_seconds = parse_double(f[4]);
      r.counters = {std::stoull(f[5]), std::stoull(f[6]), std::stoull(f[7])};
    } catch (const std::exception& e) {
      throw std::invalid_argument("report line " + std::to_string(lineno) + ": " + e.what());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace pdevs
