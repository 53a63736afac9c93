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
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pdevs {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Direction { input, output };

struct PortRef {
  std::string component;
  std::string port;
  Direction direction = Direction::input;

  friend bool operator==(const PortRef&, const PortRef&) = default;
};

enum class CouplingKind { eic, ic, eoc };

std::string_view to_string(CouplingKind kind);

struct Coupling {
  PortRef from;
  PortRef to;
  CouplingKind kind = CouplingKind::ic;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// Description of one atomic inside a graph. The behavior itself is created
/// from `model` through a ModelRegistry when a coordinator is built.
struct AtomicSpec {
  std::string name;
  std::string model;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::map<std::string, std::string> params;

  friend bool operator==(const AtomicSpec&, const AtomicSpec&) = default;
};

bool is_identifier(std::string_view name);

class ModelGraph;

/// Immutable coupled-model description: boundary ports, children in insertion
/// order and couplings in insertion order. Child coupled models are shared
/// read-only, so copies are cheap and coordinators can never mutate them.
class ModelGraph {
 public:
  struct Component {
    std::string name;
    std::variant<AtomicSpec, std::shared_ptr<const ModelGraph>> body;

    bool is_atomic() const { return std::holds_alternative<AtomicSpec>(body); }
    const AtomicSpec& atomic() const { return std::get<AtomicSpec>(body); }
    const ModelGraph& coupled() const {
      return *std::get<std::shared_ptr<const ModelGraph>>(body);
    }
  };

  ModelGraph() = default;
  explicit ModelGraph(std::string name, std::vector<std::string> inputs = {},
                      std::vector<std::string> outputs = {});

  const std::string& name() const { return name_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }

  ModelGraph& add_input(std::string port);
  ModelGraph& add_output(std::string port);

  /// Registers a child. Throws ModelError naming the collision when the name
  /// is already used at this level (or equals the graph's own name).
  ModelGraph& add_component(AtomicSpec child);
  ModelGraph& add_component(ModelGraph child);

  /// Checked coupling. The kind is derived from endpoint ownership: graph
  /// input -> child input is EIC, child output -> child input is IC and
  /// child output -> graph output is EOC. Anything else is rejected.
  CouplingKind couple(std::string_view from_component, std::string_view from_port,
                      std::string_view to_component, std::string_view to_port);

  /// Stores a coupling verbatim. Used by loaders; validate() reports problems.
  void add_coupling(Coupling coupling) { couplings_.push_back(std::move(coupling)); }

  const Component* find(std::string_view name) const;
  bool is_flat() const;
  std::size_t atomic_count() const;  // recursive
  std::size_t depth() const;         // 1 for a flat graph

  /// Re-derives the kind a coupling between these endpoints must have, or
  /// nullopt when the pattern is illegal or an endpoint does not exist.
  std::optional<CouplingKind> classify(const PortRef& from, const PortRef& to) const;

  friend bool operator==(const ModelGraph& a, const ModelGraph& b);

 private:
  bool has_port(const PortRef& ref) const;
  void check_new_name(const std::string& name) const;

  std::string name_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<Component> components_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<Coupling> couplings_;
};

enum class Severity { error, warning };

struct Violation {
  Severity severity = Severity::error;
  std::string path;  // dotted path of the offending coupled model
  std::string message;
};

/// Every invariant violation found recursively; empty means the graph is sound.
std::vector<Violation> validate(const ModelGraph& graph);
bool has_errors(const std::vector<Violation>& violations);
std::string describe(const std::vector<Violation>& violations);

/// Single-level equivalent of `graph`: only atomics, one direct coupling per
/// event path from an atomic output (or root input) to an atomic input (or
/// root output). Throws ModelError if the graph has error-level violations.
ModelGraph flatten(const ModelGraph& graph);

/// Canonical text form and its FNV-1a hash; equal graphs hash equally.
std::string canonical_text(const ModelGraph& graph);
std::uint64_t structural_hash(const ModelGraph& graph);

}  // namespace pdevs
