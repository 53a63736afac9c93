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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pdevs/devstone/devstone.hpp"
#include "pdevs/model/model_graph.hpp"
#include "pdevs/models/efp.hpp"
#include "test_models.hpp"

namespace pdevs {
namespace {

using testing::spec;

TEST(ModelGraph, AddComponentRegistersAtomic) {
  ModelGraph gpt("gpt");
  gpt.add_component(spec("processor", "processor"));
  EXPECT_EQ(gpt.components().size(), 1u);
  EXPECT_EQ(gpt.atomic_count(), 1u);
  EXPECT_TRUE(gpt.is_flat());
}

TEST(ModelGraph, DuplicateNameRejectedWithName) {
  ModelGraph g("g");
  g.add_component(spec("processor", "processor"));
  try {
    g.add_component(spec("processor", "processor"));
    FAIL() << "expected duplicate-name error";
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("processor"), std::string::npos);
  }
  EXPECT_THROW(g.add_component(spec("g", "processor")), ModelError);
}

TEST(ModelGraph, TwoLevelHierarchy) {
  ModelGraph efp = models::make_efp();
  EXPECT_EQ(efp.depth(), 2u);
  EXPECT_EQ(efp.atomic_count(), 3u);
  ASSERT_NE(efp.find("ef"), nullptr);
  EXPECT_FALSE(efp.find("ef")->is_atomic());
  EXPECT_EQ(efp.find("ef")->coupled().components().size(), 2u);
}

TEST(ModelGraph, CouplingKindsAreClassified) {
  ModelGraph ef("ef", {"in", "in2"}, {"out"});
  ef.add_component(spec("generator", "generator"));
  ef.add_component(spec("transducer", "transducer"));
  ModelGraph efp("efp", {"in"}, {});
  efp.add_component(std::move(ef));
  efp.add_component(spec("processor", "processor"));

  EXPECT_EQ(efp.couple("efp", "in", "ef", "in"), CouplingKind::eic);
  EXPECT_EQ(efp.couple("ef", "out", "processor", "in"), CouplingKind::ic);
  EXPECT_EQ(efp.couple("processor", "out", "ef", "in2"), CouplingKind::ic);
  for (const auto& c : efp.couplings()) EXPECT_EQ(efp.classify(c.from, c.to), c.kind);
}

TEST(ModelGraph, IllegalCouplingsRejected) {
  ModelGraph g("g", {"in"}, {"out"});
  g.add_component(spec("a", "processor"));
  g.add_component(spec("b", "processor"));
  EXPECT_THROW(g.couple("a", "in", "b", "in"), ModelError);     // input -> input
  EXPECT_THROW(g.couple("a", "nope", "b", "in"), ModelError);   // missing port
  EXPECT_THROW(g.couple("a", "out", "zz", "in"), ModelError);   // missing component
  EXPECT_THROW(g.couple("g", "in", "g", "out"), ModelError);    // boundary pass-through
  EXPECT_THROW(g.couple("g", "out", "a", "in"), ModelError);    // graph output used as source
  EXPECT_EQ(g.couple("a", "out", "a", "in"), CouplingKind::ic);  // self loop allowed
}

TEST(Validate, GptIsClean) {
  EXPECT_TRUE(validate(models::make_gpt()).empty());
  EXPECT_TRUE(validate(models::make_efp()).empty());
}

TEST(Validate, CouplingToMissingPortIsOneViolation) {
  ModelGraph g = models::make_gpt();
  g.add_coupling({{"generator", "out", Direction::output}, {"processor", "missing", Direction::input},
                  CouplingKind::ic});
  auto v = validate(g);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].severity, Severity::error);
}

TEST(Validate, MisclassifiedStoredCouplingIsReported) {
  ModelGraph g = models::make_gpt();
  g.add_coupling({{"generator", "out", Direction::output}, {"processor", "in", Direction::input},
                  CouplingKind::eoc});
  EXPECT_TRUE(has_errors(validate(g)));
}

TEST(Validate, DeepHoIsClean) {
  auto m = devstone::generate({devstone::Shape::ho, 3, 3, {}, 0});
  EXPECT_TRUE(validate(m.graph).empty());
}

TEST(Validate, CyclesAreWarningsOnly) {
  ModelGraph g("g");
  g.add_component(spec("a", "processor"));
  g.add_component(spec("b", "processor"));
  g.couple("a", "out", "b", "in");
  g.couple("b", "out", "a", "in");
  auto v = validate(g);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].severity, Severity::warning);
  EXPECT_FALSE(has_errors(v));
}

std::set<std::string> coupling_set(const ModelGraph& g) {
  std::set<std::string> s;
  for (const auto& c : g.couplings()) {
    s.insert(std::string(to_string(c.kind)) + " " + c.from.component + "." + c.from.port + "->" +
             c.to.component + "." + c.to.port);
  }
  return s;
}

TEST(Flatten, EfpBecomesGpt) {
  ModelGraph flat = flatten(models::make_efp());
  ModelGraph gpt = models::make_gpt();
  EXPECT_TRUE(flat.is_flat());
  EXPECT_EQ(flat.depth(), 1u);
  std::set<std::string> names;
  for (const auto& c : flat.components()) names.insert(c.name);
  EXPECT_EQ(names, (std::set<std::string>{"generator", "processor", "transducer"}));
  EXPECT_EQ(coupling_set(flat), coupling_set(gpt));
  EXPECT_EQ(flat.couplings().size(), 3u);
}

TEST(Flatten, FlatGraphIsUnchanged) {
  ModelGraph gpt = models::make_gpt();
  EXPECT_EQ(flatten(gpt), gpt);
  EXPECT_EQ(structural_hash(flatten(gpt)), structural_hash(gpt));
}

TEST(Flatten, Ho15PreservesAtomicsAndPaths) {
  auto m = devstone::generate({devstone::Shape::ho, 15, 15, {}, 0});
  ModelGraph flat = flatten(m.graph);
  EXPECT_EQ(flat.atomic_count(), 198u);  // 197 + generator
  // generator reaches every chain atomic through in2 and the deepest one
  // through in1; every other path is a chain link.
  std::size_t from_generator = 0, chain = 0;
  for (const auto& c : flat.couplings()) {
    EXPECT_EQ(c.kind, CouplingKind::ic);
    (c.from.component == "generator" ? from_generator : chain)++;
  }
  EXPECT_EQ(from_generator, 14u * 14u + 1u);
  EXPECT_EQ(chain, 14u * 13u);
}

TEST(Flatten, CollidingLeafNamesGetPaths) {
  ModelGraph inner_a("ca", {"in"}, {});
  inner_a.add_component(spec("x", "collector"));
  inner_a.couple("ca", "in", "x", "in");
  ModelGraph inner_b("cb", {"in"}, {});
  inner_b.add_component(spec("x", "collector"));
  inner_b.couple("cb", "in", "x", "in");
  ModelGraph top("top");
  top.add_component(spec("e", "emitter"));
  top.add_component(std::move(inner_a));
  top.add_component(std::move(inner_b));
  top.couple("e", "out", "ca", "in");
  top.couple("e", "out", "cb", "in");
  ModelGraph flat = flatten(top);
  EXPECT_NE(flat.find("ca.x"), nullptr);
  EXPECT_NE(flat.find("cb.x"), nullptr);
  EXPECT_EQ(flat.couplings().size(), 2u);
}

TEST(Flatten, RejectsInvalidGraph) {
  ModelGraph g = models::make_gpt();
  g.add_coupling({{"generator", "out", Direction::output}, {"ghost", "in", Direction::input},
                  CouplingKind::ic});
  EXPECT_THROW(flatten(g), ModelError);
}

// Random nested graphs: every level has a few atomics and maybe a child
// coupled model; couplings are drawn among legal patterns only.
ModelGraph random_graph(std::mt19937& rng, const std::string& name, int depth) {
  std::uniform_int_distribution<int> pick(0, 99);
  ModelGraph g(name, {"i0", "i1"}, {"o0", "o1"});
  std::vector<std::string> atoms;
  const int n = 1 + pick(rng) % 3;
  for (int k = 0; k < n; ++k) {
    atoms.push_back(name + "a" + std::to_string(k));
    g.add_component(spec(atoms.back(), "processor"));
  }
  std::string child;
  if (depth > 0 && pick(rng) < 80) {
    child = name + "c";
    g.add_component(random_graph(rng, child, depth - 1));
  }
  auto any_atom = [&] { return atoms[static_cast<std::size_t>(pick(rng)) % atoms.size()]; };
  for (int k = 0; k < 6; ++k) {
    switch (pick(rng) % 5) {
      case 0: g.couple(name, k % 2 ? "i1" : "i0", any_atom(), "in"); break;
      case 1: g.couple(any_atom(), "out", any_atom(), "in"); break;
      case 2: g.couple(any_atom(), "out", name, k % 2 ? "o1" : "o0"); break;
      case 3:
        if (!child.empty()) g.couple(name, "i0", child, k % 2 ? "i1" : "i0");
        break;
      case 4:
        if (!child.empty()) {
          g.couple(child, k % 2 ? "o1" : "o0", any_atom(), "in");
          g.couple(child, "o0", name, "o1");
        }
        break;
    }
  }
  return g;
}

TEST(Flatten, IdempotentOnRandomNestedGraphs) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    ModelGraph g = random_graph(rng, "r" + std::to_string(trial), 3);
    ASSERT_FALSE(has_errors(validate(g)));
    ModelGraph once = flatten(g);
    EXPECT_TRUE(once.is_flat());
    EXPECT_EQ(once.atomic_count(), g.atomic_count());
    EXPECT_EQ(flatten(once), once) << canonical_text(g);
  }
}

TEST(StructuralHash, DiffersWhenCouplingAdded) {
  ModelGraph a = models::make_gpt();
  ModelGraph b = a;
  EXPECT_EQ(structural_hash(a), structural_hash(b));
  b.couple("processor", "out", "processor", "in");
  EXPECT_NE(structural_hash(a), structural_hash(b));
}

}  // namespace
}  // namespace pdevs
