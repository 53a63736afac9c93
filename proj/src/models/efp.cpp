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

#include "pdevs/models/efp.hpp"

#include "pdevs/model/event_json.hpp"

namespace pdevs::models {

Generator::Generator(std::string name, double period, long long jobs)
    : Atomic(std::move(name)), period_(period), jobs_(jobs) {
  add_input("stop");
  add_output("out");
}

void Generator::initialize() {
  sent_ = 0;
  if (jobs_ == 0) {
    passivate();
  } else {
    hold_in("active", 0.0);
  }
}

void Generator::deltint() {
  ++sent_;
  if (jobs_ >= 0 && sent_ >= jobs_) {
    passivate();
  } else {
    hold_in("active", period_);
  }
}

void Generator::deltext(double /*elapsed*/) { passivate(); }

void Generator::lambda() { send("out", EventValue(static_cast<std::int64_t>(sent_))); }

std::string Generator::state_text() const {
  return phase() + " " + format_double(sigma()) + " sent=" + std::to_string(sent_);
}

Processor::Processor(std::string name, double processing_time)
    : Atomic(std::move(name)), processing_time_(processing_time) {
  add_input("in");
  add_output("out");
}

void Processor::initialize() { passivate(); }

void Processor::deltint() { passivate(); }

void Processor::deltext(double elapsed) {
  if (phase() == "passive") {
    job_ = input("in").front();
    hold_in("busy", processing_time_);
  } else {
    hold_in(phase(), sigma() - elapsed);
  }
}

void Processor::lambda() { send("out", job_); }

std::string Processor::state_text() const {
  return phase() + " " + format_double(sigma()) + " job=" + job_.to_text();
}

Transducer::Transducer(std::string name) : Atomic(std::move(name)) {
  add_input("arrived");
  add_input("solved");
}

void Transducer::initialize() { passivate(); }

void Transducer::deltint() { passivate(); }

void Transducer::deltext(double elapsed) {
  clock_ += elapsed;
  arrived_ += static_cast<long long>(input("arrived").size());
  if (!input("solved").empty()) {
    solved_ += static_cast<long long>(input("solved").size());
    last_solved_at_ = clock_;
  }
  passivate();
}

std::string Transducer::state_text() const {
  return "arrived=" + std::to_string(arrived_) + " solved=" + std::to_string(solved_) +
         " last_solved_at=" + format_double(last_solved_at_);
}

namespace {

std::map<std::string, std::string> generator_params(const EfpParams& p) {
  return {{"jobs", std::to_string(p.jobs)}, {"period", format_double(p.period)}};
}

std::map<std::string, std::string> processor_params(const EfpParams& p) {
  return {{"processingTime", format_double(p.processing_time)}};
}

const ModelRegistry& efp_registry() {
  static const ModelRegistry registry = [] {
    ModelRegistry r;
    register_models(r);
    return r;
  }();
  return registry;
}

}  // namespace

ModelGraph make_efp(const EfpParams& params) {
  const auto& r = efp_registry();
  ModelGraph ef("ef", {"in"}, {"out"});
  ef.add_component(r.make_spec("generator", "generator", generator_params(params)));
  ef.add_component(r.make_spec("transducer", "transducer"));
  ef.couple("ef", "in", "transducer", "solved");
  ef.couple("generator", "out", "transducer", "arrived");
  ef.couple("generator", "out", "ef", "out");

  ModelGraph efp("efp");
  efp.add_component(std::move(ef));
  efp.add_component(r.make_spec("processor", "processor", processor_params(params)));
  efp.couple("ef", "out", "processor", "in");
  efp.couple("processor", "out", "ef", "in");
  return efp;
}

ModelGraph make_gpt(const EfpParams& params) {
  const auto& r = efp_registry();
  ModelGraph gpt("gpt");
  gpt.add_component(r.make_spec("generator", "generator", generator_params(params)));
  gpt.add_component(r.make_spec("processor", "processor", processor_params(params)));
  gpt.add_component(r.make_spec("transducer", "transducer"));
  gpt.couple("generator", "out", "processor", "in");
  gpt.couple("generator", "out", "transducer", "arrived");
  gpt.couple("processor", "out", "transducer", "solved");
  return gpt;
}

void register_models(ModelRegistry& registry) {
  registry.add("generator", {{"stop"}, {"out"}, [](const AtomicSpec& s, ModelContext&) {
                 return std::make_unique<Generator>(s.name, param_seconds(s, "period", 1.0),
                                                    param_integer(s, "jobs", -1));
               }});
  registry.add("processor", {{"in"}, {"out"}, [](const AtomicSpec& s, ModelContext&) {
                 return std::make_unique<Processor>(s.name,
                                                    param_seconds(s, "processingTime", 3.0));
               }});
  registry.add("transducer", {{"arrived", "solved"}, {}, [](const AtomicSpec& s, ModelContext&) {
                 return std::make_unique<Transducer>(s.name);
               }});
}

}  // namespace pdevs::models
