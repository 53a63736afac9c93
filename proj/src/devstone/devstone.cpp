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

#include "pdevs/devstone/devstone.hpp"

#include <stdexcept>

#include "pdevs/devstone/busy_cpu.hpp"
#include "pdevs/model/event_json.hpp"

namespace pdevs::devstone {

Shape parse_shape(std::string_view text) {
  if (text == "LI" || text == "li") return Shape::li;
  if (text == "HI" || text == "hi") return Shape::hi;
  if (text == "HO" || text == "ho") return Shape::ho;
  throw std::invalid_argument("unknown DEVStone shape '" + std::string(text) + "' (LI, HI, HO)");
}

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::li: return "LI";
    case Shape::hi: return "HI";
    case Shape::ho: return "HO";
  }
  return "?";
}

void DevstoneConfig::check() const {
  if (depth < 1) throw std::invalid_argument("DEVStone depth must be >= 1");
  if (width < 1) throw std::invalid_argument("DEVStone width must be >= 1");
  if (depth >= 2 && width < 2) throw std::invalid_argument("DEVStone width must be >= 2 when depth >= 2");
}

std::string atomic_name(int level, int index) {
  return "A" + std::to_string(index) + "_L" + std::to_string(level);
}

std::string level_name(int level) { return "L" + std::to_string(level); }

namespace {

struct Builder {
  const DevstoneConfig& config;
  const ModelRegistry& registry;
  const std::map<std::string, double>& delays;

  AtomicSpec atomic(const std::string& name) const {
    const std::string d = format_double(delays.at(name));
    return registry.make_spec(name, std::string(kAtomicModel), {{"delayExt", d}, {"delayInt", d}});
  }

  ModelGraph level(int l) const {
    const bool ho = config.shape == Shape::ho;
    std::vector<std::string> ins{"in1"}, outs{"out1"};
    if (ho) {
      ins.push_back("in2");
      outs.push_back("out2");
    }
    ModelGraph g(level_name(l), ins, outs);

    if (l == config.depth) {
      const std::string a = atomic_name(l, 1);
      g.add_component(atomic(a));
      g.couple(g.name(), "in1", a, "in");
      g.couple(a, "out", g.name(), "out1");
      return g;
    }

    const std::string child = level_name(l + 1);
    g.add_component(level(l + 1));
    const int chain = config.width - 1;
    for (int i = 1; i <= chain; ++i) g.add_component(atomic(atomic_name(l, i)));

    g.couple(g.name(), "in1", child, "in1");
    if (ho) {
      g.couple(g.name(), "in2", child, "in2");
      for (int i = 1; i <= chain; ++i) g.couple(g.name(), "in2", atomic_name(l, i), "in");
    } else {
      for (int i = 1; i <= chain; ++i) g.couple(g.name(), "in1", atomic_name(l, i), "in");
    }
    if (config.shape != Shape::li) {
      for (int i = 1; i < chain; ++i) g.couple(atomic_name(l, i), "out", atomic_name(l, i + 1), "in");
    }
    g.couple(child, "out1", g.name(), "out1");
    if (ho) {
      for (int i = 1; i <= chain; ++i) g.couple(atomic_name(l, i), "out", g.name(), "out2");
    }
    return g;
  }
};

}  // namespace

DevstoneModel generate(const DevstoneConfig& config) {
  config.check();
  DevstoneModel model;
  for (int l = 1; l < config.depth; ++l) {
    for (int i = 1; i < config.width; ++i) model.atomics.push_back(atomic_name(l, i));
  }
  model.atomics.push_back(atomic_name(config.depth, 1));
  model.delays = sample_delays(config.delays, model.atomics, config.seed);

  ModelRegistry registry;
  register_models(registry);
  Builder builder{config, registry, model.delays};

  ModelGraph top(std::string(to_string(config.shape)) + "_" + std::to_string(config.width) + "_" +
                 std::to_string(config.depth));
  top.add_component(registry.make_spec(std::string(kGeneratorName), std::string(kGeneratorModel)));
  top.add_component(builder.level(1));
  top.couple(kGeneratorName, "out", level_name(1), "in1");
  if (config.shape == Shape::ho) top.couple(kGeneratorName, "out", level_name(1), "in2");
  model.graph = std::move(top);
  return model;
}

ExpectedCounts expected_counts(int width, int depth) {
  DevstoneConfig{Shape::ho, width, depth, {}, 0}.check();
  const std::uint64_t w = static_cast<std::uint64_t>(width);
  const std::uint64_t d1 = static_cast<std::uint64_t>(depth) - 1;
  ExpectedCounts c;
  c.atomics = 1 + d1 * (w - 1);
  c.eic = 1 + d1 * (w + 1);
  c.ic = d1 * (w >= 2 ? w - 2 : 0);
  c.eoc = 1 + d1 * w;
  c.delt_ints = 1 + d1 * (w * w - w) / 2;
  c.delt_exts = c.delt_ints;
  c.events = c.delt_ints;
  return c;
}

// ---------------------------------------------------------------------------

DevstoneAtomic::DevstoneAtomic(std::string name, double delay_int, double delay_ext,
                               Counters& counters)
    : Atomic(std::move(name)), delay_int_(delay_int), delay_ext_(delay_ext), counters_(counters) {
  if (delay_int < 0.0 || delay_ext < 0.0) throw ModelError("DEVStone delays must be >= 0");
  if (delay_int > 0.0 || delay_ext > 0.0) require_cpu_clock();
  add_input("in");
  add_output("out");
}

void DevstoneAtomic::initialize() {
  list_.clear();
  passivate();
}

void DevstoneAtomic::deltint() {
  const double start = thread_cpu_seconds();
  counters_.add_internal();
  busy_cpu(delay_int_);
  list_.clear();
  passivate();
  cpu_.internal_seconds += thread_cpu_seconds() - start;
}

void DevstoneAtomic::deltext(double /*elapsed*/) {
  const double start = thread_cpu_seconds();
  counters_.add_external();
  busy_cpu(delay_ext_);
  const MessageBag& values = input("in");
  counters_.add_events(values.size());
  list_.insert(list_.end(), values.begin(), values.end());
  hold_in("active", 0.0);
  cpu_.external_seconds += thread_cpu_seconds() - start;
}

void DevstoneAtomic::lambda() { send("out", EventValue(list_)); }

std::string DevstoneAtomic::state_text() const {
  return phase() + " " + format_double(sigma()) + " list=" + EventValue(list_).to_text();
}

DevstoneGenerator::DevstoneGenerator(std::string name) : Atomic(std::move(name)) {
  add_output("out");
}

void DevstoneGenerator::initialize() { hold_in("active", 0.0); }
void DevstoneGenerator::deltint() { passivate(); }
void DevstoneGenerator::deltext(double /*elapsed*/) {}
void DevstoneGenerator::lambda() { send("out", EventValue(0)); }

void register_models(ModelRegistry& registry) {
  registry.add(std::string(kAtomicModel),
               {{"in"}, {"out"}, [](const AtomicSpec& spec, ModelContext& ctx) {
                  return std::make_unique<DevstoneAtomic>(spec.name,
                                                          param_seconds(spec, "delayInt", 0.0),
                                                          param_seconds(spec, "delayExt", 0.0),
                                                          ctx.counters);
                }});
  registry.add(std::string(kGeneratorModel),
               {{}, {"out"}, [](const AtomicSpec& spec, ModelContext&) {
                  return std::make_unique<DevstoneGenerator>(spec.name);
                }});
}

}  // namespace pdevs::devstone
