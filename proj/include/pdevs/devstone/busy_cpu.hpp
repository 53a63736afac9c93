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

namespace pdevs::devstone {

/// CPU seconds consumed so far by the calling thread / the whole process.
double thread_cpu_seconds();
double process_cpu_seconds();

/// Throws std::runtime_error when per-thread CPU time cannot be measured.
/// Called when a delayed atomic is constructed, so a run never starts on a
/// platform where the delay contract cannot be honoured.
void require_cpu_clock();

/// Burns at least `seconds` of CPU time (not wall time) on the calling thread
/// with a Dhrystone-style integer/string loop. Returns the iterations run.
std::uint64_t busy_cpu(double seconds);

}  // namespace pdevs::devstone
