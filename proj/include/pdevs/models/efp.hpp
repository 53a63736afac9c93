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

#include <string>

#include "pdevs/model/atomic.hpp"
#include "pdevs/model/model_graph.hpp"
#include "pdevs/model/registry.hpp"

namespace pdevs::models {

/// Emits job ids 0, 1, 2, ... on "out": the first at t = 0, then one every
/// `period` until `jobs` have been sent (jobs < 0 means unlimited). Any value
/// on "stop" passivates it.
class Generator : public Atomic {
 public:
  Generator(std::string name, double period, long long jobs);
  void initialize() override;
  void deltint() override;
  void deltext(double elapsed) override;
  void lambda() override;
  std::string state_text() const override;

 private:
  double period_;
  long long jobs_;
  long long sent_ = 0;
};

/// Single-server processor: accepts a job when idle and emits it after
/// `processing_time`; jobs arriving while busy are discarded.
class Processor : public Atomic {
 public:
  Processor(std::string name, double processing_time);
  void initialize() override;
  void deltint() override;
  void deltext(double elapsed) override;
  void lambda() override;
  std::string state_text() const override;

 private:
  double processing_time_;
  EventValue job_;
};

/// Passive observer counting arrived and solved jobs.
class Transducer : public Atomic {
 public:
  explicit Transducer(std::string name);
  void initialize() override;
  void deltint() override;
  void deltext(double elapsed) override;
  void lambda() override {}
  std::string state_text() const override;

 private:
  double clock_ = 0.0;
  long long arrived_ = 0;
  long long solved_ = 0;
  double last_solved_at_ = 0.0;
};

struct EfpParams {
  double period = 1.0;
  long long jobs = -1;
  double processing_time = 3.0;
};

/// Hierarchical experimental frame + processor: coupled "ef" (generator and
/// transducer) feeding atomic "processor", whose output returns into ef.
ModelGraph make_efp(const EfpParams& params = {});
/// Hand-flattened single-level equivalent of make_efp().
ModelGraph make_gpt(const EfpParams& params = {});

void register_models(ModelRegistry& registry);

}  // namespace pdevs::models
