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

#include "pdevs/plan/plan.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace pdevs {

namespace {

namespace pt = boost::property_tree;

const std::set<std::string, std::less<>> kAddressing{"host", "mainPort", "auxPort", "pool", "group"};

using Attributes = std::vector<std::pair<std::string, std::string>>;

Attributes attributes(const pt::ptree& node) {
  Attributes out;
  if (auto attrs = node.get_child_optional("<xmlattr>")) {
    for (const auto& [key, value] : *attrs) out.emplace_back(key, value.data());
  }
  return out;
}

const std::string* find(const Attributes& attrs, std::string_view key) {
  for (const auto& [k, v] : attrs) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string require(const Attributes& attrs, std::string_view key, std::string_view element) {
  const std::string* v = find(attrs, key);
  if (v == nullptr) {
    throw PlanError("<" + std::string(element) + "> is missing attribute '" + std::string(key) + "'");
  }
  return *v;
}

long long to_integer(const std::string& text, std::string_view what) {
  long long v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw PlanError(std::string(what) + "='" + text + "' is not an integer");
  }
  return v;
}

int to_port(const std::string& text, std::string_view what) {
  long long v = to_integer(text, what);
  if (v < 1 || v > 65535) throw PlanError(std::string(what) + "=" + text + " is outside 1-65535");
  return static_cast<int>(v);
}

struct ParsedAtomic {
  AtomicSpec spec;
  std::optional<Endpoint> endpoint;
  std::optional<std::string> pool;
  std::optional<std::string> group;
};

ParsedAtomic parse_atomic(const Attributes& attrs, const ModelRegistry& registry) {
  ParsedAtomic a;
  const std::string name = require(attrs, "name", "atomic");
  const std::string model = require(attrs, "model", "atomic");
  if (!registry.contains(model)) throw PlanError("atomic '" + name + "': unknown model '" + model + "'");
  std::map<std::string, std::string> params;
  for (const auto& [k, v] : attrs) {
    if (k == "name" || k == "model" || kAddressing.count(k)) continue;
    params[k] = v;
  }
  a.spec = registry.make_spec(name, model, std::move(params));

  const bool has_host = find(attrs, "host") || find(attrs, "mainPort") || find(attrs, "auxPort");
  const bool has_pool = find(attrs, "pool") != nullptr;
  if (has_host && has_pool) {
    throw PlanError("atomic '" + name + "' carries both network and pool addressing");
  }
  if (has_host) {
    a.endpoint = Endpoint{require(attrs, "host", "atomic"),
                          to_port(require(attrs, "mainPort", "atomic"), name + " mainPort"),
                          to_port(require(attrs, "auxPort", "atomic"), name + " auxPort")};
  }
  if (has_pool) a.pool = *find(attrs, "pool");
  if (const std::string* g = find(attrs, "group")) {
    if (has_pool) throw PlanError("atomic '" + name + "': group applies to network addressing only");
    a.group = *g;
  }
  return a;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void attr(std::ostringstream& os, std::string_view key, const std::string& value) {
  os << ' ' << key << "=\"" << escape(value) << '"';
}

void emit_atomic_head(std::ostringstream& os, const AtomicSpec& spec) {
  os << "  <atomic";
  attr(os, "name", spec.name);
  attr(os, "model", spec.model);
  // delays first, in the conventional order, then any other parameter
  for (const char* key : {"delayInt", "delayExt"}) {
    auto it = spec.params.find(key);
    if (it != spec.params.end()) attr(os, key, it->second);
  }
  for (const auto& [k, v] : spec.params) {
    if (k != "delayInt" && k != "delayExt") attr(os, k, v);
  }
}

}  // namespace

void DistributedPlan::check() const {
  std::set<std::pair<std::string, int>> used;
  auto claim = [&](const std::string& host, int port, const std::string& who) {
    if (port < 1 || port > 65535) throw PlanError(who + ": port " + std::to_string(port) + " outside 1-65535");
    if (!used.insert({host, port}).second) {
      throw PlanError(who + ": " + host + ":" + std::to_string(port) + " is already used in the plan");
    }
  };
  for (const auto& c : graph.components()) {
    if (!c.is_atomic()) throw PlanError("distributed plans hold only atomics, '" + c.name + "' is coupled");
    auto it = endpoints.find(c.name);
    if (it == endpoints.end()) throw PlanError("atomic '" + c.name + "' has no endpoint");
    claim(it->second.host, it->second.main_port, c.name);
    claim(it->second.host, it->second.aux_port, c.name);
  }
  for (const auto& [name, ep] : endpoints) {
    if (graph.find(name) == nullptr) throw PlanError("endpoint given for unknown atomic '" + name + "'");
  }
  for (const auto& [name, group] : groups) {
    if (graph.find(name) == nullptr) throw PlanError("group given for unknown atomic '" + name + "'");
  }
  if (coordinator) claim(coordinator->host, coordinator->main_port, "coordinator");
}

Plan parse_plan_xml(std::istream& in, const ModelRegistry& registry) {
  pt::ptree doc;
  try {
    pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw PlanError("malformed plan XML: " + std::string(e.what()));
  }
  auto root = doc.get_child_optional("coupled");
  if (!root || doc.size() != 1) throw PlanError("plan XML must have a single <coupled> root element");

  const Attributes root_attrs = attributes(*root);
  ModelGraph graph(require(root_attrs, "name", "coupled"));
  std::vector<ParsedAtomic> atomics;
  std::vector<Attributes> connections;
  std::vector<PoolSpec> pools;
  std::optional<Endpoint> coordinator;

  for (const auto& [tag, node] : *root) {
    if (tag == "<xmlattr>" || tag == "<xmlcomment>") continue;
    const Attributes a = attributes(node);
    if (tag == "port") {
      const std::string name = require(a, "name", "port");
      const std::string dir = require(a, "direction", "port");
      if (dir == "input") {
        graph.add_input(name);
      } else if (dir == "output") {
        graph.add_output(name);
      } else {
        throw PlanError("port '" + name + "': direction must be input or output");
      }
    } else if (tag == "coordinator") {
      coordinator = Endpoint{require(a, "host", "coordinator"),
                             to_port(require(a, "port", "coordinator"), "coordinator port"), 0};
    } else if (tag == "pool") {
      PoolSpec p{require(a, "name", "pool"), 0};
      if (const std::string* w = find(a, "workers")) {
        long long n = to_integer(*w, "pool " + p.name + " workers");
        if (n < 1) throw PlanError("pool '" + p.name + "' needs at least one worker");
        p.workers = static_cast<std::size_t>(n);
      }
      for (const auto& q : pools) {
        if (q.name == p.name) throw PlanError("duplicate pool name '" + p.name + "'");
      }
      pools.push_back(std::move(p));
    } else if (tag == "atomic") {
      atomics.push_back(parse_atomic(a, registry));
    } else if (tag == "connection") {
      connections.push_back(a);
    } else {
      throw PlanError("unexpected element <" + tag + "> in plan");
    }
  }

  std::size_t networked = 0, pooled = 0;
  for (const auto& a : atomics) {
    networked += a.endpoint.has_value();
    pooled += a.pool.has_value();
    try {
      graph.add_component(a.spec);
    } catch (const ModelError& e) {
      throw PlanError(e.what());
    }
  }
  if (networked > 0 && pooled > 0) throw PlanError("plan mixes network and pool addressing");
  if (!atomics.empty() && networked + pooled != atomics.size()) {
    for (const auto& a : atomics) {
      if (!a.endpoint && !a.pool) throw PlanError("atomic '" + a.spec.name + "' has no pool or endpoint");
    }
  }

  for (std::size_t i = 0; i < connections.size(); ++i) {
    const auto& c = connections[i];
    try {
      graph.couple(require(c, "componentFrom", "connection"), require(c, "portFrom", "connection"),
                   require(c, "componentTo", "connection"), require(c, "portTo", "connection"));
    } catch (const ModelError& e) {
      throw PlanError("connection " + std::to_string(i + 1) + ": " + e.what());
    }
  }

  if (networked > 0) {
    if (!pools.empty()) throw PlanError("<pool> elements are not allowed in a network plan");
    DistributedPlan plan;
    plan.graph = std::move(graph);
    plan.coordinator = coordinator;
    for (const auto& a : atomics) {
      plan.endpoints[a.spec.name] = *a.endpoint;
      if (a.group) plan.groups[a.spec.name] = *a.group;
    }
    plan.check();
    return plan;
  }
  if (coordinator) throw PlanError("<coordinator> is only meaningful in a network plan");
  PooledPlan plan;
  plan.graph = std::move(graph);
  plan.pools.pools = std::move(pools);
  for (const auto& a : atomics) plan.pools.assignment[a.spec.name] = *a.pool;
  try {
    plan.pools.check(plan.graph);
  } catch (const ModelError& e) {
    throw PlanError(e.what());
  }
  return plan;
}

Plan load_plan(const std::string& path, const ModelRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw PlanError("cannot open plan file '" + path + "'");
  return parse_plan_xml(in, registry);
}

PooledPlan load_pool_plan(const std::string& path, const ModelRegistry& registry) {
  Plan plan = load_plan(path, registry);
  if (auto* p = std::get_if<PooledPlan>(&plan)) return std::move(*p);
  throw PlanError("plan '" + path + "' addresses atomics by host/port, not by pool");
}

Plan default_plan(const ModelGraph& graph, const PlanDefaults& defaults) {
  ModelGraph flat = flatten(graph);
  if (defaults.mode == PlanDefaults::Mode::pool) {
    PooledPlan plan{flat, PoolPlan::single(flat, defaults.workers, defaults.pool)};
    return plan;
  }
  DistributedPlan plan;
  int port = defaults.base_port;
  for (const auto& c : flat.components()) {
    plan.endpoints[c.name] = {defaults.host, port, port + 1};
    port += 2;
  }
  plan.coordinator = Endpoint{defaults.host, port, 0};
  plan.graph = std::move(flat);
  plan.check();
  return plan;
}

const ModelGraph& plan_graph(const Plan& plan) {
  return std::visit([](const auto& p) -> const ModelGraph& { return p.graph; }, plan);
}

std::string emit_plan_xml(const Plan& plan) {
  const ModelGraph& g = plan_graph(plan);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<coupled";
  attr(os, "name", g.name());
  os << ">\n";
  for (const auto& p : g.inputs()) {
    os << "  <port";
    attr(os, "name", p);
    os << " direction=\"input\"/>\n";
  }
  for (const auto& p : g.outputs()) {
    os << "  <port";
    attr(os, "name", p);
    os << " direction=\"output\"/>\n";
  }

  if (const auto* d = std::get_if<DistributedPlan>(&plan)) {
    if (d->coordinator) {
      os << "  <coordinator";
      attr(os, "host", d->coordinator->host);
      attr(os, "port", std::to_string(d->coordinator->main_port));
      os << "/>\n";
    }
    for (const auto& c : g.components()) {
      emit_atomic_head(os, c.atomic());
      const Endpoint& ep = d->endpoints.at(c.name);
      attr(os, "host", ep.host);
      attr(os, "mainPort", std::to_string(ep.main_port));
      attr(os, "auxPort", std::to_string(ep.aux_port));
      if (auto it = d->groups.find(c.name); it != d->groups.end()) attr(os, "group", it->second);
      os << "/>\n";
    }
  } else {
    const auto& p = std::get<PooledPlan>(plan);
    for (const auto& pool : p.pools.pools) {
      os << "  <pool";
      attr(os, "name", pool.name);
      if (pool.workers > 0) attr(os, "workers", std::to_string(pool.workers));
      os << "/>\n";
    }
    for (const auto& c : g.components()) {
      emit_atomic_head(os, c.atomic());
      attr(os, "pool", p.pools.assignment.at(c.name));
      os << "/>\n";
    }
  }

  for (const auto& cp : g.couplings()) {
    os << "  <connection";
    attr(os, "componentFrom", cp.from.component);
    attr(os, "portFrom", cp.from.port);
    attr(os, "componentTo", cp.to.component);
    attr(os, "portTo", cp.to.port);
    os << "/>\n";
  }
  os << "</coupled>\n";
  return os.str();
}

std::string emit_plan_xml(const ModelGraph& graph, const PlanDefaults& defaults) {
  return emit_plan_xml(default_plan(graph, defaults));
}

}  // namespace pdevs
