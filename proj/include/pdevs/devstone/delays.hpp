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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pdevs::devstone {

enum class DelayKind { constant, uniform, chi_square };

/// Distribution of per-atomic transition delays, in CPU seconds.
/// constant(k): every atomic gets k. uniform(0,k): i.i.d. on [0,k].
/// chi_square: two degrees of freedom (mean 2), k is ignored.
struct DelayDistribution {
  DelayKind kind = DelayKind::constant;
  double k = 0.0;

  static DelayDistribution parse(std::string_view kind, double k);
  std::string label() const;
};

/// One draw per entry of `atomics`, in order; identical inputs always give
/// identical maps. Internal and external delays of an atomic share the draw.
std::map<std::string, double> sample_delays(const DelayDistribution& dist,
                                            const std::vector<std::string>& atomics,
                                            std::uint64_t seed);

/// Raw draws, exposed for statistical checks.
std::vector<double> sample_values(const DelayDistribution& dist, std::size_t count,
                                  std::uint64_t seed);

}  // namespace pdevs::devstone
