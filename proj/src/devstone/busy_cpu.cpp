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

#include "pdevs/devstone/busy_cpu.hpp"

#include <time.h>

#include <array>
#include <cstring>
#include <stdexcept>
#include <string>

namespace pdevs::devstone {

namespace {

double read_clock(clockid_t id) {
  timespec ts{};
  if (clock_gettime(id, &ts) != 0) throw std::runtime_error("CPU clock unavailable");
  return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

struct Record {
  int int_comp = 0;
  char enum_comp = 'A';
  std::array<char, 31> str_comp{};
};

}  // namespace

double thread_cpu_seconds() { return read_clock(CLOCK_THREAD_CPUTIME_ID); }
double process_cpu_seconds() { return read_clock(CLOCK_PROCESS_CPUTIME_ID); }

void require_cpu_clock() {
  timespec res{};
  if (clock_getres(CLOCK_THREAD_CPUTIME_ID, &res) != 0) {
    throw std::runtime_error("per-thread CPU clock is not available on this platform");
  }
}

std::uint64_t busy_cpu(double seconds) {
  if (!(seconds > 0.0)) return 0;
  const double deadline = thread_cpu_seconds() + seconds;

  static constexpr char kSource1[] = "DHRYSTONE PROGRAM, 1'ST STRING";
  static constexpr char kSource2[] = "DHRYSTONE PROGRAM, 2'ND STRING";
  Record a, b;
  std::memcpy(a.str_comp.data(), kSource1, sizeof(kSource1));
  volatile int sink = 0;
  int int_1 = 2, int_2 = 3, int_3 = 0;
  std::uint64_t iterations = 0;

  for (;;) {
    for (int k = 0; k < 64; ++k) {
      int_3 = 5 * int_1 - int_2;
      std::memcpy(b.str_comp.data(), (k & 1) ? kSource1 : kSource2, sizeof(kSource1));
      b.int_comp = int_3 + a.int_comp;
      b.enum_comp = static_cast<char>('A' + (b.int_comp & 3));
      if (std::memcmp(a.str_comp.data(), b.str_comp.data(), sizeof(kSource1)) != 0) {
        a.int_comp = (a.int_comp + int_3 + b.enum_comp) & 0xffff;
      }
      int_1 = (int_1 * 7 + k) % 1013;
      int_2 = int_2 ^ int_1;
    }
    sink = sink + a.int_comp;
    iterations += 64;
    if (thread_cpu_seconds() >= deadline) break;
  }
  return iterations;
}

}  // namespace pdevs::devstone
