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

#include "pdevs/model/model_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace pdevs {

std::string_view to_string(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::eic: return "EIC";
    case CouplingKind::ic: return "IC";
    case CouplingKind::eoc: return "EOC";
  }
  return "?";
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

namespace {

void require_identifier(std::string_view what, std::string_view name) {
  if (!is_identifier(name)) {
    throw ModelError(std::string(what) + " '" + std::string(name) +
                     "' is not an identifier ([A-Za-z0-9_-]+)");
  }
}

void require_unique_ports(std::string_view owner, const std::vector<std::string>& ports) {
  std::set<std::string_view> seen;
  for (const auto& p : ports) {
    require_identifier("port", p);
    if (!seen.insert(p).second) {
      throw ModelError("duplicate port '" + p + "' on '" + std::string(owner) + "'");
    }
  }
}

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string endpoint_text(const PortRef& r) { return r.component + "." + r.port; }

}  // namespace

ModelGraph::ModelGraph(std::string name, std::vector<std::string> inputs,
                       std::vector<std::string> outputs)
    : name_(std::move(name)), inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  require_identifier("coupled model name", name_);
  require_unique_ports(name_, inputs_);
  require_unique_ports(name_, outputs_);
}

ModelGraph& ModelGraph::add_input(std::string port) {
  inputs_.push_back(std::move(port));
  require_unique_ports(name_, inputs_);
  return *this;
}

ModelGraph& ModelGraph::add_output(std::string port) {
  outputs_.push_back(std::move(port));
  require_unique_ports(name_, outputs_);
  return *this;
}

void ModelGraph::check_new_name(const std::string& name) const {
  require_identifier("component name", name);
  if (name == name_ || index_.count(name) != 0) {
    throw ModelError("duplicate component name '" + name + "' in coupled model '" + name_ + "'");
  }
}

ModelGraph& ModelGraph::add_component(AtomicSpec child) {
  check_new_name(child.name);
  require_unique_ports(child.name, child.inputs);
  require_unique_ports(child.name, child.outputs);
  index_.emplace(child.name, components_.size());
  std::string name = child.name;
  components_.push_back({std::move(name), std::move(child)});
  return *this;
}

ModelGraph& ModelGraph::add_component(ModelGraph child) {
  check_new_name(child.name());
  index_.emplace(child.name(), components_.size());
  std::string name = child.name();
  components_.push_back({std::move(name), std::make_shared<const ModelGraph>(std::move(child))});
  return *this;
}

const ModelGraph::Component* ModelGraph::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &components_[it->second];
}

bool ModelGraph::has_port(const PortRef& ref) const {
  if (ref.component == name_) {
    return contains(ref.direction == Direction::input ? inputs_ : outputs_, ref.port);
  }
  const Component* c = find(ref.component);
  if (c == nullptr) return false;
  if (c->is_atomic()) {
    const auto& a = c->atomic();
    return contains(ref.direction == Direction::input ? a.inputs : a.outputs, ref.port);
  }
  const auto& g = c->coupled();
  return contains(ref.direction == Direction::input ? g.inputs() : g.outputs(), ref.port);
}

std::optional<CouplingKind> ModelGraph::classify(const PortRef& from, const PortRef& to) const {
  if (!has_port(from) || !has_port(to)) return std::nullopt;
  const bool from_self = from.component == name_;
  const bool to_self = to.component == name_;
  if (from_self && from.direction == Direction::input && !to_self &&
      to.direction == Direction::input) {
    return CouplingKind::eic;
  }
  if (!from_self && from.direction == Direction::output) {
    if (!to_self && to.direction == Direction::input) return CouplingKind::ic;
    if (to_self && to.direction == Direction::output) return CouplingKind::eoc;
  }
  return std::nullopt;
}

CouplingKind ModelGraph::couple(std::string_view from_component, std::string_view from_port,
                                std::string_view to_component, std::string_view to_port) {
  PortRef from{std::string(from_component), std::string(from_port),
               from_component == name_ ? Direction::input : Direction::output};
  PortRef to{std::string(to_component), std::string(to_port),
             to_component == name_ ? Direction::output : Direction::input};

  for (const PortRef* end : {&from, &to}) {
    if (end->component != name_ && find(end->component) == nullptr) {
      throw ModelError("coupled model '" + name_ + "' has no component '" + end->component + "'");
    }
  }
  if (auto kind = classify(from, to)) {
    couplings_.push_back({std::move(from), std::move(to), *kind});
    return couplings_.back().kind;
  }
  if (from.component == name_ && to.component == name_) {
    throw ModelError("illegal coupling " + endpoint_text(from) + " -> " + endpoint_text(to) +
                     ": both endpoints on the boundary of '" + name_ + "'");
  }
  for (PortRef* end : {&from, &to}) {
    if (!has_port(*end)) {
      PortRef flipped = *end;
      flipped.direction =
          end->direction == Direction::input ? Direction::output : Direction::input;
      if (has_port(flipped)) {
        throw ModelError("illegal coupling pattern " + endpoint_text(from) + " -> " +
                         endpoint_text(to) + ": '" + endpoint_text(*end) + "' is an " +
                         (flipped.direction == Direction::input ? "input" : "output") +
                         " port");
      }
      throw ModelError("nonexistent port '" + endpoint_text(*end) + "' in '" + name_ + "'");
    }
  }
  throw ModelError("illegal coupling pattern " + endpoint_text(from) + " -> " + endpoint_text(to));
}

bool ModelGraph::is_flat() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Component& c) { return c.is_atomic(); });
}

std::size_t ModelGraph::atomic_count() const {
  std::size_t n = 0;
  for (const auto& c : components_) n += c.is_atomic() ? 1 : c.coupled().atomic_count();
  return n;
}

std::size_t ModelGraph::depth() const {
  std::size_t deepest = 0;
  for (const auto& c : components_) {
    if (!c.is_atomic()) deepest = std::max(deepest, c.coupled().depth());
  }
  return 1 + deepest;
}

bool operator==(const ModelGraph& a, const ModelGraph& b) {
  if (a.name_ != b.name_ || a.inputs_ != b.inputs_ || a.outputs_ != b.outputs_ ||
      a.couplings_ != b.couplings_ || a.components_.size() != b.components_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.components_.size(); ++i) {
    const auto& ca = a.components_[i];
    const auto& cb = b.components_[i];
    if (ca.name != cb.name || ca.is_atomic() != cb.is_atomic()) return false;
    if (ca.is_atomic() ? !(ca.atomic() == cb.atomic()) : !(ca.coupled() == cb.coupled())) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// validation

namespace {

struct FlatLeaf {
  std::string path;  // dotted, root excluded
  std::string leaf;
  const AtomicSpec* spec;
};

void validate_level(const ModelGraph& g, const std::string& path, std::vector<Violation>& out) {
  auto error = [&](std::string msg) { out.push_back({Severity::error, path, std::move(msg)}); };
  if (!is_identifier(g.name())) error("name '" + g.name() + "' is not an identifier");

  std::set<std::string> names;
  for (const auto& c : g.components()) {
    if (!names.insert(c.name).second || c.name == g.name()) {
      error("duplicate component name '" + c.name + "'");
    }
    if (c.is_atomic()) {
      if (c.name != c.atomic().name) error("atomic registered as '" + c.name + "' is named '" + c.atomic().name + "'");
      if (c.atomic().model.empty()) error("atomic '" + c.name + "' has no model type");
    } else if (c.name != c.coupled().name()) {
      error("coupled registered as '" + c.name + "' is named '" + c.coupled().name() + "'");
    }
  }
  for (const auto& cp : g.couplings()) {
    auto kind = g.classify(cp.from, cp.to);
    std::string text = cp.from.component + "." + cp.from.port + " -> " + cp.to.component + "." +
                       cp.to.port;
    if (!kind) {
      error("coupling " + text + " references a missing port or has an illegal pattern");
    } else if (*kind != cp.kind) {
      error("coupling " + text + " stored as " + std::string(to_string(cp.kind)) +
            " but endpoints make it " + std::string(to_string(*kind)));
    }
  }
  for (const auto& c : g.components()) {
    if (!c.is_atomic()) validate_level(c.coupled(), path + "." + c.name, out);
  }
}

// Tarjan SCC over the flattened atomic connectivity; cycles become warnings.
void cycle_warnings(const ModelGraph& flat, std::vector<Violation>& out) {
  std::map<std::string, std::size_t> idx;
  std::vector<std::string> names;
  for (const auto& c : flat.components()) {
    idx.emplace(c.name, names.size());
    names.push_back(c.name);
  }
  std::vector<std::vector<std::size_t>> adj(names.size());
  std::vector<bool> self_loop(names.size(), false);
  for (const auto& cp : flat.couplings()) {
    if (cp.kind != CouplingKind::ic) continue;
    auto a = idx.at(cp.from.component);
    auto b = idx.at(cp.to.component);
    adj[a].push_back(b);
    if (a == b) self_loop[a] = true;
  }
  std::vector<int> index(names.size(), -1), low(names.size(), 0);
  std::vector<bool> on_stack(names.size(), false);
  std::vector<std::size_t> stack;
  int counter = 0;
  std::function<void(std::size_t)> strong = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : adj[v]) {
      if (index[w] < 0) {
        strong(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> scc;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        scc.push_back(w);
      } while (w != v);
      if (scc.size() > 1 || self_loop[v]) {
        std::string members;
        for (auto it = scc.rbegin(); it != scc.rend(); ++it) {
          members += (members.empty() ? "" : ", ") + names[*it];
        }
        out.push_back({Severity::warning, flat.name(),
                       "coupling cycle among atomics {" + members +
                           "}; zero time advances along it would never let the clock move"});
      }
    }
  };
  for (std::size_t v = 0; v < names.size(); ++v) {
    if (index[v] < 0) strong(v);
  }
}

}  // namespace

std::vector<Violation> validate(const ModelGraph& graph) {
  std::vector<Violation> out;
  validate_level(graph, graph.name(), out);
  if (!has_errors(out)) cycle_warnings(flatten(graph), out);
  return out;
}

bool has_errors(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::error; });
}

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << (v.severity == Severity::error ? "error" : "warning") << " [" << v.path << "] "
       << v.message << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// flattening

namespace {

class Flattener {
 public:
  explicit Flattener(const ModelGraph& root) : root_(root) {}

  ModelGraph run() {
    collect(root_, "");
    std::map<std::string, int> leaf_count;
    for (const auto& l : leaves_) ++leaf_count[l.leaf];
    for (const auto& l : leaves_) final_name_[l.path] = leaf_count[l.leaf] == 1 ? l.leaf : l.path;

    ModelGraph flat(root_.name(), root_.inputs(), root_.outputs());
    for (const auto& l : leaves_) {
      AtomicSpec spec = *l.spec;
      spec.name = final_name_.at(l.path);
      flat.add_component(std::move(spec));
    }
    std::vector<const ModelGraph*> stack{&root_};
    std::vector<std::string> prefixes{""};
    visit(stack, prefixes, flat);
    return flat;
  }

 private:
  void collect(const ModelGraph& g, const std::string& prefix) {
    for (const auto& c : g.components()) {
      std::string path = prefix.empty() ? c.name : prefix + "." + c.name;
      if (c.is_atomic()) {
        leaves_.push_back({path, c.name, &c.atomic()});
      } else {
        collect(c.coupled(), path);
      }
    }
  }

  static std::string join(const std::string& prefix, const std::string& name) {
    return prefix.empty() ? name : prefix + "." + name;
  }

  // Walks every coupling that starts an event path (an atomic output, or a
  // root input) in pre-order and appends one flat coupling per path end.
  void visit(std::vector<const ModelGraph*>& stack, std::vector<std::string>& prefixes,
             ModelGraph& flat) {
    const ModelGraph& g = *stack.back();
    const std::string prefix = prefixes.back();
    for (const auto& cp : g.couplings()) {
      PortRef source;
      if (cp.from.component == g.name()) {
        if (stack.size() != 1) continue;
        source = {flat.name(), cp.from.port, Direction::input};
      } else {
        const auto* comp = g.find(cp.from.component);
        if (comp == nullptr || !comp->is_atomic()) continue;
        source = {final_name_.at(join(prefix, comp->name)), cp.from.port, Direction::output};
      }
      auto path_stack = stack;
      auto path_prefixes = prefixes;
      deliver(path_stack, path_prefixes, cp.to, source, flat);
    }
    for (const auto& c : g.components()) {
      if (c.is_atomic()) continue;
      stack.push_back(&c.coupled());
      prefixes.push_back(join(prefix, c.name));
      visit(stack, prefixes, flat);
      stack.pop_back();
      prefixes.pop_back();
    }
  }

  void deliver(std::vector<const ModelGraph*>& stack, std::vector<std::string>& prefixes,
               const PortRef& target, const PortRef& source, ModelGraph& flat) {
    const ModelGraph& g = *stack.back();
    const std::string prefix = prefixes.back();
    if (target.component == g.name()) {
      if (stack.size() == 1) {
        emit(source, {flat.name(), target.port, Direction::output}, flat);
        return;
      }
      const ModelGraph* self = stack.back();
      stack.pop_back();
      prefixes.pop_back();
      const ModelGraph& parent = *stack.back();
      for (const auto& cp : parent.couplings()) {
        if (cp.from.component == self->name() && cp.from.port == target.port &&
            cp.from.direction == Direction::output) {
          deliver(stack, prefixes, cp.to, source, flat);
        }
      }
      stack.push_back(self);
      prefixes.push_back(prefix);
      return;
    }
    const auto* comp = g.find(target.component);
    if (comp == nullptr) return;
    if (comp->is_atomic()) {
      emit(source, {final_name_.at(join(prefix, comp->name)), target.port, Direction::input},
           flat);
      return;
    }
    const ModelGraph& child = comp->coupled();
    stack.push_back(&child);
    prefixes.push_back(join(prefix, comp->name));
    for (const auto& cp : child.couplings()) {
      if (cp.from.component == child.name() && cp.from.port == target.port &&
          cp.from.direction == Direction::input) {
        deliver(stack, prefixes, cp.to, source, flat);
      }
    }
    stack.pop_back();
    prefixes.pop_back();
  }

  static void emit(const PortRef& from, const PortRef& to, ModelGraph& flat) {
    const bool from_root = from.component == flat.name();
    const bool to_root = to.component == flat.name();
    if (from_root && to_root) return;  // boundary pass-through carries no atomic
    CouplingKind kind = from_root ? CouplingKind::eic : (to_root ? CouplingKind::eoc : CouplingKind::ic);
    flat.add_coupling({from, to, kind});
  }

  const ModelGraph& root_;
  std::vector<FlatLeaf> leaves_;
  std::map<std::string, std::string> final_name_;
};

void canonical(const ModelGraph& g, std::ostringstream& os, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto list = [&](const std::vector<std::string>& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
  };
  os << pad << "coupled " << g.name() << " in";
  list(g.inputs());
  os << " out";
  list(g.outputs());
  os << "\n";
  for (const auto& c : g.components()) {
    if (c.is_atomic()) {
      const auto& a = c.atomic();
      os << pad << "  atomic " << a.name << " " << a.model << " in";
      list(a.inputs);
      os << " out";
      list(a.outputs);
      for (const auto& [k, v] : a.params) os << " " << k << "=" << v;
      os << "\n";
    } else {
      canonical(c.coupled(), os, indent + 1);
    }
  }
  for (const auto& cp : g.couplings()) {
    os << pad << "  " << to_string(cp.kind) << " " << cp.from.component << "." << cp.from.port
       << " -> " << cp.to.component << "." << cp.to.port << "\n";
  }
}

}  // namespace

ModelGraph flatten(const ModelGraph& graph) {
  std::vector<Violation> errors;
  validate_level(graph, graph.name(), errors);
  if (has_errors(errors)) throw ModelError("cannot flatten invalid graph:\n" + describe(errors));
  return Flattener(graph).run();
}

std::string canonical_text(const ModelGraph& graph) {
  std::ostringstream os;
  canonical(graph, os, 0);
  return os.str();
}

std::uint64_t structural_hash(const ModelGraph& graph) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_text(graph)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace pdevs
