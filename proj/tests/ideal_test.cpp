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

const Label kLevel = L("E | E | E");

TEST(IdealStore, PutFindCorrupt) {
  IdealStore s;
  const GroundValue k = GroundValue::text("k");
  EXPECT_EQ(s.find(k), nullptr);
  s.put(k, {L("A | True | True"), GroundValue::integer(1)});
  ASSERT_NE(s.find(k), nullptr);
  EXPECT_FALSE(s.find(k)->corrupted());
  s.corrupt(k);
  EXPECT_TRUE(s.find(k)->corrupted());
  EXPECT_NE(s.dump().find("CORRUPT"), std::string::npos);
}

TEST(IdealInteraction, StoreNeedsLevelIntegrity) {
  const GroundValue k = GroundValue::text("k");
  EXPECT_NO_THROW(IdealInteraction::store(k, {L("True | True | True"), GroundValue::unit()}, kLevel));
  EXPECT_NO_THROW(IdealInteraction::store(k, {L("A | E | True"), GroundValue::unit()}, kLevel));
  EXPECT_THROW(IdealInteraction::store(k, {L("True | A | True"), GroundValue::unit()}, kLevel),
               InteractionRejected);
}

TEST(IdealInteraction, ApplyCorruptsOnlyNamedKeys) {
  IdealStore s;
  s.put(GroundValue::text("a"), {L("A | A | True"), GroundValue::integer(1)});
  s.put(GroundValue::text("b"), {L("A | A | True"), GroundValue::integer(2)});
  IdealStore t = apply_ideal(s, IdealInteraction::corrupt({GroundValue::text("a")}), kLevel);
  EXPECT_TRUE(t.find(GroundValue::text("a"))->corrupted());
  EXPECT_FALSE(t.find(GroundValue::text("b"))->corrupted());
  EXPECT_EQ(apply_ideal(s, IdealInteraction::skip(), kLevel), s);
}

TEST(IdealRuntime, FetchOfCorruptedEntryYieldsDefault) {
  IdealStore s;
  s.corrupt(GroundValue::text("k"));
  IdealBridge b(s);
  Configuration c{L("True | True | True"), L("A | True | True"),
                  testing::parse_with_literals("fetch[Int] \"k\" (labeled ⟨A | True | True⟩ 3)")};
  RunResult r = run(c, b, kLevel, 1000);
  EXPECT_EQ(r.config.term->as<node::Lio>()->value->as<node::Labeled>()->value, GroundValue::integer(3));
}

TEST(LowEquiv, SecretsAreInvisible) {
  EXPECT_TRUE(low_equiv_terms(testing::parse_with_literals("labeled ⟨A | True | True⟩ 1"),
                              testing::parse_with_literals("labeled ⟨A | True | True⟩ 2"), kLevel));
  EXPECT_FALSE(low_equiv_terms(testing::parse_with_literals("labeled ⟨True | True | True⟩ 1"),
                               testing::parse_with_literals("labeled ⟨True | True | True⟩ 2"), kLevel));
  EXPECT_FALSE(low_equiv_terms(testing::parse_with_literals("labeled ⟨A | True | True⟩ 1"),
                               testing::parse_with_literals("labeled ⟨B | True | True⟩ 1"), kLevel));
  EXPECT_TRUE(low_equiv_terms(testing::parse_with_literals("(labeled ⟨A | True | True⟩ 1, 5)"),
                              testing::parse_with_literals("(labeled ⟨A | True | True⟩ 9, 5)"), kLevel));
}

TEST(LowEquiv, HighConfigurationsAgreeOnLabels) {
  Configuration a{L("A | True | True"), L("A | True | True"), t::integer(1)};
  Configuration b{L("A | True | True"), L("A | True | True"), t::integer(2)};
  Configuration c{L("True | True | True"), L("A | True | True"), t::integer(1)};
  EXPECT_TRUE(low_equiv(a, b, kLevel));
  EXPECT_FALSE(low_equiv(a, c, kLevel));
}

TEST(IdealLowStep, AdversaryRunsBeforeProgram) {
  IdealStepper s{{L("True | True | True"), L("A | True | True"),
                  testing::parse_with_literals("fetch[Int] \"k\" (labeled ⟨True | True | True⟩ 0)")},
                 {},
                 kLevel};
  auto r = ideal_low_step(
      s, {IdealInteraction::store(GroundValue::text("k"), {L("True | True | True"), GroundValue::integer(4)},
                                  kLevel)});
  while (!is_terminal(r.next.config)) r = ideal_low_step(r.next, {});
  EXPECT_EQ(r.next.config.term->as<node::Lio>()->value->as<node::Labeled>()->value, GroundValue::integer(4));
}

class Noninterference
    : public ::testing::TestWithParam<std::tuple<testing::NiCase, testing::NiAdversary>> {};

TEST_P(Noninterference, PublicBehaviourIndependentOfSecret) {
  const auto& [c, adv] = GetParam();
  ASSERT_TRUE(low_equiv_terms(testing::parse_with_literals(c.input0), testing::parse_with_literals(c.input1),
                              kLevel));
  testing::NiOutcome o = testing::run_ni_pair(c, adv);
  EXPECT_TRUE(o.events_equal) << o.detail;
  EXPECT_TRUE(o.low_equiv_always) << o.detail;
  EXPECT_GT(o.low_steps, 0u);
}

INSTANTIATE_TEST_SUITE_P(
    Corpus, Noninterference,
    ::testing::Combine(::testing::ValuesIn(testing::ni_corpus()),
                       ::testing::Values(testing::NiAdversary::kNone, testing::NiAdversary::kCorruptAll,
                                         testing::NiAdversary::kPublicJunk)),
    [](const auto& info) {
      std::string n;
      for (char ch : std::get<0>(info.param).name) n += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
      return n + "_" + std::to_string(static_cast<int>(std::get<1>(info.param)));
    });

}  // namespace
}  // namespace clio
