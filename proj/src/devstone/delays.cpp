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

#include "pdevs/devstone/delays.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "pdevs/model/event_json.hpp"

namespace pdevs::devstone {

namespace {

// 53 random bits -> [0, 1). Avoids generate_canonical so draws are identical
// across standard library implementations.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double draw(const DelayDistribution& dist, std::mt19937_64& rng) {
  switch (dist.kind) {
    case DelayKind::constant:
      return dist.k;
    case DelayKind::uniform:
      return dist.k * unit_uniform(rng);
    case DelayKind::chi_square:
      return -2.0 * std::log1p(-unit_uniform(rng));
  }
  return 0.0;
}

}  // namespace

DelayDistribution DelayDistribution::parse(std::string_view kind, double k) {
  if (k < 0.0 || !std::isfinite(k)) throw std::invalid_argument("delay parameter must be >= 0");
  if (kind == "constant") return {DelayKind::constant, k};
  if (kind == "uniform") return {DelayKind::uniform, k};
  if (kind == "chi2" || kind == "chi_square") return {DelayKind::chi_square, k};
  throw std::invalid_argument("unknown delay distribution '" + std::string(kind) +
                              "' (constant, uniform, chi2)");
}

std::string DelayDistribution::label() const {
  switch (kind) {
    case DelayKind::constant: return "constant(" + format_double(k) + ")";
    case DelayKind::uniform: return "uniform(0," + format_double(k) + ")";
    case DelayKind::chi_square: return "chi2(2)";
  }
  return "?";
}

std::vector<double> sample_values(const DelayDistribution& dist, std::size_t count,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(draw(dist, rng));
  return out;
}

std::map<std::string, double> sample_delays(const DelayDistribution& dist,
                                            const std::vector<std::string>& atomics,
                                            std::uint64_t seed) {
  auto values = sample_values(dist, atomics.size(), seed);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < atomics.size(); ++i) out.emplace(atomics[i], values[i]);
  return out;
}

}  // namespace pdevs::devstone
