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

#include "pdevs/sim/coordinator.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

namespace pdevs {

struct Coordinator::Node {
  struct Route {
    MessageBag* from;
    MessageBag* to;
  };
  std::vector<MessageBag> in_bags;
  std::vector<MessageBag> out_bags;
  std::vector<std::unique_ptr<Node>> children;
  std::vector<Route> output_routes;  // IC and EOC, insertion order
  std::vector<Route> input_routes;   // EIC, insertion order
};

Coordinator::Coordinator(const ModelGraph& graph, const ModelRegistry& registry,
                         CoordinatorOptions options)
    : options_(options) {
  auto violations = validate(graph);
  if (has_errors(violations)) {
    throw ModelError("invalid model '" + graph.name() + "':\n" + describe(violations));
  }
  graph_ = options_.flatten ? flatten(graph) : graph;
  root_ = build(graph_, registry);
}

Coordinator::~Coordinator() = default;

std::unique_ptr<Coordinator::Node> Coordinator::build(const ModelGraph& g,
                                                      const ModelRegistry& registry) {
  auto node = std::make_unique<Node>();
  node->in_bags.resize(g.inputs().size());
  node->out_bags.resize(g.outputs().size());

  std::map<std::string, Simulator*> atomics;
  std::map<std::string, Node*> nodes;
  std::map<std::string, const ModelGraph*> graphs;
  for (const auto& c : g.components()) {
    if (c.is_atomic()) {
      auto atomic = registry.instantiate(c.atomic(), context_);
      simulators_.push_back(std::make_unique<Simulator>(std::move(atomic), options_.trace));
      atomics.emplace(c.name, simulators_.back().get());
    } else {
      node->children.push_back(build(c.coupled(), registry));
      nodes.emplace(c.name, node->children.back().get());
      graphs.emplace(c.name, &c.coupled());
    }
  }

  auto index_of = [](const std::vector<std::string>& ports, const std::string& p) {
    return static_cast<std::size_t>(std::find(ports.begin(), ports.end(), p) - ports.begin());
  };
  auto bag = [&](const PortRef& ref) -> MessageBag* {
    const bool in = ref.direction == Direction::input;
    if (ref.component == g.name()) {
      return in ? &node->in_bags[index_of(g.inputs(), ref.port)]
                : &node->out_bags[index_of(g.outputs(), ref.port)];
    }
    if (auto it = atomics.find(ref.component); it != atomics.end()) {
      return in ? &it->second->atomic().input(ref.port) : &it->second->atomic().output(ref.port);
    }
    Node* child = nodes.at(ref.component);
    const ModelGraph* cg = graphs.at(ref.component);
    return in ? &child->in_bags[index_of(cg->inputs(), ref.port)]
              : &child->out_bags[index_of(cg->outputs(), ref.port)];
  };

  for (const auto& cp : g.couplings()) {
    Node::Route r{bag(cp.from), bag(cp.to)};
    (cp.kind == CouplingKind::eic ? node->input_routes : node->output_routes).push_back(r);
  }
  for (const auto& [name, sim] : atomics) {
    for (auto& port : sim->atomic().outputs()) {
      bool routed = std::any_of(g.couplings().begin(), g.couplings().end(), [&](const Coupling& cp) {
        return cp.from.component == name && cp.from.port == port.name;
      });
      if (!routed) unrouted_outputs_.push_back(&port.bag);
    }
  }
  return node;
}

std::size_t Coordinator::simulator_index(const std::string& name) const {
  for (std::size_t i = 0; i < simulators_.size(); ++i) {
    if (simulators_[i]->name() == name) return i;
  }
  throw std::out_of_range("no simulator named '" + name + "'");
}

void Coordinator::initialize() {
  for (auto& s : simulators_) s->initialize();
  clock_ = ta();
  iterations_ = 0;
  initialized_ = true;
}

double Coordinator::ta() const {
  double tn = kInfinity;
  for (const auto& s : simulators_) tn = std::min(tn, s->next_time());
  return tn;
}

void Coordinator::run_lambdas(double t) {
  for (auto& s : simulators_) s->lambda(t);
}

void Coordinator::run_deltas(double t) {
  for (auto& s : simulators_) s->deltfcn(t);
}

void Coordinator::lambda() {
  run_lambdas(clock_);
  for (MessageBag* b : unrouted_outputs_) dropped_ += b->size();
  propagate_output(*root_);
  for (auto& b : root_->out_bags) external_ += b.size();
}

void Coordinator::deltfcn() {
  propagate_input(*root_);
  run_deltas(clock_);
  clear(*root_);
}

void Coordinator::propagate_output(Node& node) {
  for (auto& child : node.children) propagate_output(*child);
  for (const auto& r : node.output_routes) {
    r.to->insert(r.to->end(), r.from->begin(), r.from->end());
  }
}

void Coordinator::propagate_input(Node& node) {
  for (const auto& r : node.input_routes) {
    r.to->insert(r.to->end(), r.from->begin(), r.from->end());
  }
  for (auto& child : node.children) propagate_input(*child);
}

void Coordinator::clear(Node& node) {
  for (auto& b : node.in_bags) b.clear();
  for (auto& b : node.out_bags) b.clear();
  for (auto& child : node.children) clear(*child);
}

bool Coordinator::node_empty(const Node& node) const {
  auto empty = [](const MessageBag& b) { return b.empty(); };
  return std::all_of(node.in_bags.begin(), node.in_bags.end(), empty) &&
         std::all_of(node.out_bags.begin(), node.out_bags.end(), empty) &&
         std::all_of(node.children.begin(), node.children.end(),
                     [&](const auto& c) { return node_empty(*c); });
}

bool Coordinator::bags_empty() const {
  for (const auto& s : simulators_) {
    if (!s->atomic().inputs_empty()) return false;
    for (const auto& p : s->atomic().outputs()) {
      if (!p.bag.empty()) return false;
    }
  }
  return node_empty(*root_);
}

bool Coordinator::step() {
  if (!initialized_) initialize();
  const double t = ta();
  if (t == kInfinity) return false;
  if (t < clock_) throw std::logic_error("simulation clock moved backwards");
  clock_ = t;
  lambda();
  deltfcn();
  ++iterations_;
  return true;
}

RunReport Coordinator::simulate(std::uint64_t max_iterations) {
  if (!initialized_) initialize();
  const auto start = std::chrono::steady_clock::now();
  while (iterations_ < max_iterations && step()) {
  }
  const auto stop = std::chrono::steady_clock::now();
  for (auto& s : simulators_) s->exit();

  RunReport report;
  report.model = graph_.name();
  report.backend = backend_name();
  report.resources = resources_label();
  report.cycles = iterations_;
  report.wall_seconds = std::chrono::duration<double>(stop - start).count();
  report.final_time = clock_;
  report.counters = context_.counters.snapshot();
  report.dropped_values = dropped_;
  report.external_outputs = external_;
  for (const auto& s : simulators_) {
    report.cpu[s->name()] = s->atomic().cpu_usage();
    if (options_.trace) report.traces[s->name()] = s->trace();
  }
  return report;
}

}  // namespace pdevs
