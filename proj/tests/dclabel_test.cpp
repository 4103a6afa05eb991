// Copyright 2026 The Clio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include "support.hpp"

namespace clio {
namespace {

using testing::L;

TEST(Category, CanonicalOrderAndText) {
  Category c({"C", "A", "B", "A"});
  EXPECT_EQ(c.text(), "A∨B∨C");
  EXPECT_TRUE(Category({"A"}).subset_of(c));
  EXPECT_FALSE(c.subset_of(Category({"A", "B"})));
}

TEST(Category, RejectsEmptyAndReservedNames) {
  EXPECT_THROW(Category(std::vector<Principal>{}), Error);
  EXPECT_THROW(Principal("a|b"), Error);
  EXPECT_THROW(Principal(""), Error);
}

TEST(Formula, SubsumptionIsRemoved) {
  Formula f = Formula::of({Category({"A"}), Category({"A", "B"})});
  EXPECT_EQ(f.text(), "A");
  EXPECT_EQ(parse_formula("B ∧ A ∧ (A ∨ C)").text(), "A ∧ B");
}

TEST(Formula, TrueAndFalse) {
  EXPECT_TRUE(Formula::True().is_true());
  EXPECT_TRUE(Formula::False().is_false());
  EXPECT_TRUE(entails(Formula::False(), parse_formula("A")));
  EXPECT_TRUE(entails(parse_formula("A"), Formula::True()));
  EXPECT_FALSE(entails(Formula::True(), parse_formula("A")));
}

TEST(Entails, Fixtures) {
  EXPECT_TRUE(entails(parse_formula("A"), parse_formula("A ∨ B")));
  EXPECT_FALSE(entails(parse_formula("A ∨ B"), parse_formula("A")));
  EXPECT_TRUE(entails(parse_formula("A ∧ B"), parse_formula("A")));
}

TEST(Entails, MatchesTruthTable) {
  const auto pool = testing::principal_pool(5);
  Rng rng(11);
  for (int i = 0; i < 3000; ++i) {
    Formula f = testing::random_formula(rng, pool);
    Formula g = testing::random_formula(rng, pool);
    ASSERT_EQ(entails(f, g), testing::entails_by_truth_table(f, g, pool)) << f.text() << " ⇒ " << g.text();
  }
}

TEST(CanFlowTo, DirectionFixtures) {
  // A ⊑ A∨B for confidentiality means data readable by A∨B may flow to A.
  EXPECT_TRUE(can_flow_to(L("A ∨ B | True | True"), L("A | True | True")));
  EXPECT_FALSE(can_flow_to(L("A | True | True"), L("A ∨ B | True | True")));
  EXPECT_TRUE(can_flow_to(L("A | A ∧ B | True"), L("A | A | True")));
  EXPECT_FALSE(can_flow_to(L("A | A | True"), L("A | A ∧ B | True")));
  EXPECT_TRUE(can_flow_to(L("C ∨ P ∨ IRS | C | S"), L("P ∨ IRS | P ∨ C | S")));
}

TEST(CanFlowTo, BottomAndTop) {
  Rng rng(3);
  const auto pool = testing::principal_pool(4);
  for (int i = 0; i < 200; ++i) {
    Label l = testing::random_label(rng, pool);
    EXPECT_TRUE(can_flow_to(Label::bottom(), l));
    EXPECT_TRUE(can_flow_to(l, Label::top()));
  }
}

TEST(Lattice, JoinAndMeetAreBounds) {
  const auto pool = testing::principal_pool(4);
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    Label a = testing::random_label(rng, pool), b = testing::random_label(rng, pool);
    Label j = join(a, b), m = meet(a, b);
    EXPECT_TRUE(can_flow_to(a, j) && can_flow_to(b, j));
    EXPECT_TRUE(can_flow_to(m, a) && can_flow_to(m, b));
    EXPECT_EQ(join(a, b), join(b, a));
    EXPECT_EQ(meet(a, a), a);
  }
}

TEST(Label, TextRoundTrips) {
  const auto pool = testing::principal_pool(4);
  Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    Label l = testing::random_label(rng, pool);
    EXPECT_EQ(parse_label(l.text()), l) << l.text();
  }
  EXPECT_EQ(L("A \\/ B | A /\\ B | True").text(), "A∨B | A ∧ B | True");
}

TEST(Label, ParseErrors) {
  EXPECT_THROW(parse_label("A | B"), SyntaxError);
  EXPECT_THROW(parse_label("A ∨ | B | C"), SyntaxError);
  EXPECT_THROW(parse_label("A | B | C | D"), SyntaxError);
}

TEST(ComponentFlow, Directions) {
  EXPECT_TRUE(component_flow(Component::kConf, parse_formula("A ∨ B"), parse_formula("A")));
  EXPECT_TRUE(component_flow(Component::kInteg, parse_formula("A"), parse_formula("A")));
  EXPECT_TRUE(component_flow(Component::kAvail, parse_formula("S"), Formula::True()));
  EXPECT_FALSE(component_flow(Component::kAvail, Formula::True(), parse_formula("S")));
}

}  // namespace
}  // namespace clio
