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

#include <filesystem>

#include "clio/instances.hpp"
#include "support.hpp"

namespace clio {
namespace {

using testing::L;

CtaInstance simple_cta() {
  CtaInstance inst;
  inst.name = "store-secret";
  inst.adversary_principals = {Principal("E")};
  inst.protected_principals = {Principal("A")};
  inst.program = parse_term("λx : Labeled Int. store \"k\" x");
  inst.input0 = testing::parse_with_literals("labeled ⟨A | True | True⟩ 5");
  inst.input1 = testing::parse_with_literals("labeled ⟨A | True | True⟩ 7");
  inst.j = 2;
  inst.trials = 60;
  inst.seed_base = 9;
  return inst;
}

std::vector<const Distinguisher*> raw(const std::vector<std::unique_ptr<Distinguisher>>& ds) {
  std::vector<const Distinguisher*> out;
  for (const auto& d : ds) out.push_back(d.get());
  return out;
}

TEST(Cta, ValidInstanceHasNoProblems) { EXPECT_TRUE(validate_cta(simple_cta()).empty()); }

TEST(Cta, RejectsPublicInputDifference) {
  CtaInstance inst = simple_cta();
  inst.input0 = testing::parse_with_literals("labeled ⟨True | True | True⟩ 5");
  inst.input1 = testing::parse_with_literals("labeled ⟨True | True | True⟩ 7");
  EXPECT_FALSE(validate_cta(inst).empty());
  EXPECT_THROW(estimate_advantage(inst, {}, real_provider()), Error);
}

TEST(Cta, RejectsOverlapTypeAndTrialProblems) {
  CtaInstance a = simple_cta();
  a.protected_principals = {Principal("E")};
  EXPECT_FALSE(validate_cta(a).empty());
  CtaInstance b = simple_cta();
  b.trials = 5;
  EXPECT_FALSE(validate_cta(b).empty());
  CtaInstance c = simple_cta();
  c.input1 = testing::parse_with_literals("labeled ⟨A | True | True⟩ \"seven\"");
  EXPECT_FALSE(validate_cta(c).empty());
  CtaInstance d = simple_cta();
  d.j = 50;
  EXPECT_FALSE(validate_cta(d).empty());
}

TEST(Cta, TrialsAreDeterministic) {
  CtaInstance inst = simple_cta();
  EXPECT_EQ(run_cta_trial(inst, 0, 3, real_provider()), run_cta_trial(inst, 0, 3, real_provider()));
  EXPECT_NE(run_cta_trial(inst, 0, 3, real_provider()), run_cta_trial(inst, 0, 4, real_provider()));
}

TEST(Cta, ConstantGuessHasNoAdvantage) {
  ConstantDistinguisher one(1);
  CtaReport r = estimate_advantage(simple_cta(), {&one}, real_provider());
  ASSERT_EQ(r.estimates.size(), 1u);
  EXPECT_EQ(r.estimates[0].advantage, 0.0);
}

TEST(Cta, RealProviderHidesSecret) {
  auto ds = builtin_distinguishers();
  CtaReport r = estimate_advantage(simple_cta(), raw(ds), real_provider());
  EXPECT_LT(r.max_advantage(), 0.3);
}

TEST(Cta, IdentityProviderLeaks) {
  auto ds = builtin_distinguishers();
  CtaReport r = estimate_advantage(simple_cta(), raw(ds), identity_provider());
  EXPECT_GT(r.max_advantage(), 0.85);
}

TEST(Cta, EstimatesAreReproducible) {
  auto ds = builtin_distinguishers();
  CtaReport a = estimate_advantage(simple_cta(), raw(ds), real_provider());
  CtaReport b = estimate_advantage(simple_cta(), raw(ds), real_provider());
  ASSERT_EQ(a.estimates.size(), b.estimates.size());
  for (std::size_t i = 0; i < a.estimates.size(); ++i) {
    EXPECT_EQ(a.estimates[i].advantage, b.estimates[i].advantage);
  }
}

ForgeryInstance simple_forgery() {
  ForgeryInstance f;
  f.name = "copy";
  f.base_principals = {Principal("E")};
  f.target = Principal("P");
  f.phase1 = parse_term("v <- label ⟨True | P | True⟩ 100; store \"balance\" v");
  f.j1 = 20;
  f.phase2 = parse_term("d <- label ⟨True | True | True⟩ 0; v <- fetch[Int] \"balance\" d; store \"copy\" v");
  f.j2 = 20;
  f.trials = 10;
  f.seed_base = 5;
  return f;
}

TEST(Forgery, ValidInstance) { EXPECT_TRUE(validate_forgery(simple_forgery()).empty()); }

TEST(Forgery, AdversaryNamesRoundTrip) {
  for (auto a : {ForgeryAdversary::kReplay, ForgeryAdversary::kSplice, ForgeryAdversary::kRollback,
                 ForgeryAdversary::kBitFlip}) {
    EXPECT_EQ(forgery_adversary_by_name(forgery_adversary_name(a)), a);
  }
  EXPECT_FALSE(forgery_adversary_by_name("nope"));
}

TEST(Forgery, NoAdversarySucceedsUnderRealCrypto) {
  for (auto a : {ForgeryAdversary::kReplay, ForgeryAdversary::kSplice, ForgeryAdversary::kRollback,
                 ForgeryAdversary::kBitFlip}) {
    ForgeryReport r = run_forgery_game(simple_forgery(), a, real_provider());
    EXPECT_EQ(r.trials, 10u);
    EXPECT_EQ(r.successes, 0u) << forgery_adversary_name(a);
    EXPECT_EQ(r.floor_violations, 0u) << forgery_adversary_name(a);
  }
}

TEST(Forgery, ValuesOfRecoversOwnWrites) {
  const auto& p = real_provider();
  Rng rng(1);
  Keystore ks = Keystore::generate({Principal("E")}, p, rng);
  Configuration c{start_label(ks), clearance_of(ks),
                  parse_term("v <- label ⟨E | E | True⟩ 3; store \"k\" v")};
  RealState s = make_real_state(c, ks, authority_of(ks), p, 1);
  SkipStrategy skip;
  while (!is_terminal(s.config)) real_low_step(s, skip);
  auto vals = values_of(s.history, ks, p);
  ASSERT_EQ(vals.size(), 1u);
  EXPECT_EQ(std::get<0>(*vals.begin()), GroundValue::text("k"));
  EXPECT_EQ(std::get<1>(*vals.begin()), L("E | E | True"));
  EXPECT_TRUE(values_of(s.history, Keystore::generate({Principal("E")}, p, rng), p).empty());
}

TEST(CorruptCiphertext, ChangesBytes) {
  Bytes c{1, 2, 3, 4};
  Bytes d = corrupt_ciphertext(c);
  EXPECT_NE(c, d);
  EXPECT_EQ(d.size(), 3u);
}

TEST(Oracle, CaseStudyAgrees) {
  const auto& p = real_provider();
  testing::CaseStudy cs = testing::load_case_study(p, 1);
  OracleReport r = ideal_real_oracle(cs.phases(), {}, Keystore(), cs.all, cs.store_level, p, 1);
  EXPECT_TRUE(r.equivalent) << r.detail;
  ASSERT_TRUE(r.final_real.term->is<node::Lio>());
  EXPECT_TRUE(structurally_equal(evaluate_pure(r.final_real.term->as<node::Lio>()->value),
                                 t::boolean(testing::expected_verdict(cs))));
}

class OracleGenerated : public ::testing::TestWithParam<std::tuple<int, testing::ScriptKind>> {};

TEST_P(OracleGenerated, IdealAndRealAgree) {
  const auto& [seed, kind] = GetParam();
  const auto& p = real_provider();
  Rng rng(static_cast<std::uint64_t>(seed));
  Keystore all = Keystore::generate({Principal("A"), Principal("E")}, p, rng);
  Keystore adv = all.restricted_to({Principal("E")});
  const Label lvl = authority_of(adv);
  std::vector<OraclePhase> phases{{parse_term(testing::generated_program(seed)), all.restricted_to({Principal("A")}), 1000}};
  OracleReport r = ideal_real_oracle(phases, testing::generated_script(seed, kind, lvl, 40), adv, all, lvl, p,
                                     static_cast<std::uint64_t>(seed));
  EXPECT_TRUE(r.equivalent) << testing::generated_program(seed) << "\n" << r.detail;
}

INSTANTIATE_TEST_SUITE_P(Programs, OracleGenerated,
                         ::testing::Combine(::testing::Range(1, 7),
                                            ::testing::Values(testing::ScriptKind::kNone,
                                                              testing::ScriptKind::kBenign,
                                                              testing::ScriptKind::kCorrupting,
                                                              testing::ScriptKind::kMixed)));

TEST(Instances, ShippedSuitesLoadAndValidate) {
  CtaSuite cta = load_cta_suite(testing::source_path("programs/games/cta_leak_free.json"));
  EXPECT_GE(cta.instances.size(), 5u);
  for (const auto& inst : cta.instances) EXPECT_TRUE(validate_cta(inst).empty()) << inst.name;
  auto forgery = load_forgery_suite(testing::source_path("programs/games/forgery_suite.json"));
  EXPECT_GE(forgery.size(), 3u);
  for (const auto& f : forgery) EXPECT_TRUE(validate_forgery(f.instance).empty()) << f.instance.name;
  EXPECT_EQ(game_kind(testing::source_path("programs/games/cta_leak_free.json")), "cta");
  EXPECT_THROW(load_cta_suite(testing::source_path("programs/games/does-not-exist.json")), IoError);
}

}  // namespace
}  // namespace clio
