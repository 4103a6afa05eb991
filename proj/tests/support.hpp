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

// Fixtures and independent oracles shared by the unit tests and the
// acceptance runner.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "clio/backend.hpp"
#include "clio/codec.hpp"
#include "clio/harness.hpp"
#include "clio/instances.hpp"

#ifndef CLIO_SOURCE_DIR
#define CLIO_SOURCE_DIR "."
#endif

namespace clio::testing {

inline std::filesystem::path source_path(const std::string& rel) {
  return std::filesystem::path(CLIO_SOURCE_DIR) / rel;
}

inline TermPtr parse_with_literals(std::string_view src) {
  ParseOptions o;
  o.allow_labeled_literals = true;
  return parse_term(src, o);
}

inline Label L(std::string_view s) { return parse_label(s); }

// --- Random labels and the truth-table oracle ------------------------------

inline std::vector<Principal> principal_pool(std::size_t n) {
  static const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "H"};
  std::vector<Principal> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(names[i]);
  return out;
}

inline Category random_category(Rng& rng, const std::vector<Principal>& pool) {
  std::vector<Principal> members;
  for (const auto& p : pool) {
    if (rng.uniform(3) == 0) members.push_back(p);
  }
  if (members.empty()) members.push_back(pool[rng.uniform(pool.size())]);
  return Category(members);
}

/// Occasionally True or False; otherwise 1..4 random clauses.
inline Formula random_formula(Rng& rng, const std::vector<Principal>& pool) {
  const auto r = rng.uniform(20);
  if (r == 0) return Formula::False();
  if (r == 1) return Formula::True();
  std::vector<Category> clauses;
  const auto n = 1 + rng.uniform(4);
  for (std::uint64_t i = 0; i < n; ++i) clauses.push_back(random_category(rng, pool));
  return Formula::of(clauses);
}

inline Label random_label(Rng& rng, const std::vector<Principal>& pool) {
  return Label(random_formula(rng, pool), random_formula(rng, pool), random_formula(rng, pool));
}

/// Formula value when exactly the principals whose bit is set are true.
inline bool evaluate(const Formula& f, std::uint32_t assignment,
                     const std::vector<Principal>& pool) {
  if (f.is_false()) return false;
  for (const auto& c : f.clauses()) {
    bool any = false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if ((assignment >> i & 1u) && c.contains(pool[i])) any = true;
    }
    if (!any) return false;
  }
  return true;
}

/// f ⇒ g by enumerating every assignment.
inline bool entails_by_truth_table(const Formula& f, const Formula& g,
                                   const std::vector<Principal>& pool) {
  for (std::uint32_t a = 0; a < (1u << pool.size()); ++a) {
    if (evaluate(f, a, pool) && !evaluate(g, a, pool)) return false;
  }
  return true;
}

inline bool flows_by_truth_table(const Label& a, const Label& b,
                                 const std::vector<Principal>& pool) {
  return entails_by_truth_table(b.conf(), a.conf(), pool) &&
         entails_by_truth_table(a.integ(), b.integ(), pool) &&
         entails_by_truth_table(a.avail(), b.avail(), pool);
}

// --- Random ground values ---------------------------------------------------

inline GroundValue random_ground(Rng& rng, int depth = 3) {
  switch (rng.uniform(depth > 0 ? 6 : 5)) {
    case 0: return GroundValue::unit();
    case 1: return GroundValue::boolean(rng.uniform(2) == 1);
    case 2: return GroundValue::integer(static_cast<std::int64_t>(rng.next_u64()));
    case 3: {
      std::string s;
      const auto n = rng.uniform(24);
      for (std::uint64_t i = 0; i < n; ++i) s.push_back(static_cast<char>(32 + rng.uniform(95)));
      return GroundValue::text(s);
    }
    case 4: return GroundValue::label(random_label(rng, principal_pool(3)));
    default: return GroundValue::pair(random_ground(rng, depth - 1), random_ground(rng, depth - 1));
  }
}

// --- Monitor rule table -----------------------------------------------------

struct MonitorCase {
  std::string name;
  std::string program;  // labeled literals allowed
  Label lcur;
  Label ccur;
  Label store_level;
  std::optional<Premise> expected;  // nullopt: must run to completion
  std::vector<std::pair<GroundValue, LabeledGround>> preload = {};
};

inline std::vector<MonitorCase> monitor_cases() {
  const Label pub = L("True | True | True");
  const Label a = L("A | True | True");
  const Label ab = L("A ∧ B | True | True");
  const Label s = L("True | True | S");
  return {
      {"label ok", "label ⟨A | True | True⟩ 1", pub, a, pub, std::nullopt},
      {"label below current", "label ⟨True | True | True⟩ 1", a, a, pub, Premise::kLabelAboveCurrent},
      {"label above clearance", "label ⟨A ∧ B | True | True⟩ 1", pub, a, pub,
       Premise::kLabelBelowClearance},
      {"unlabel ok", "x <- label ⟨A | True | True⟩ 1; unlabel x", pub, a, pub, std::nullopt},
      {"unlabel above clearance", "unlabel (labeled ⟨A ∧ B | True | True⟩ 1)", pub, a, pub,
       Premise::kUnlabelBelowClearance},
      {"toLabeled ok", "toLabeled ⟨A | True | True⟩ (return 1)", pub, a, pub, std::nullopt},
      {"toLabeled below current", "toLabeled ⟨True | True | True⟩ (return 1)", a, a, pub,
       Premise::kToLabeledAboveCurrent},
      {"toLabeled above clearance", "toLabeled ⟨A ∧ B | True | True⟩ (return 1)", pub, a, pub,
       Premise::kToLabeledBelowClearance},
      {"reset ok", "toLabeled ⟨A | True | True⟩ (v <- unlabel (labeled ⟨A | True | True⟩ 1); return v)",
       pub, a, pub, std::nullopt},
      {"reset escapes target",
       "toLabeled ⟨A | True | True⟩ (v <- unlabel (labeled ⟨B | True | True⟩ 1); return v)", pub, ab,
       pub, Premise::kResetTarget},
      {"store ok", "x <- label ⟨A | True | True⟩ 1; store \"k\" x", pub, a, pub, std::nullopt},
      {"store above store level", "store \"k\" (labeled ⟨A | True | True⟩ 1)", a, a, pub,
       Premise::kStoreBelowStoreLevel},
      {"store below value label", "store \"k\" (labeled ⟨True | B | True⟩ 1)", L("True | A | True"),
       a, pub, Premise::kStoreBelowValueLabel},
      {"fetch ok (missing)", "fetch[Int] \"k\" (labeled ⟨True | True | S⟩ 0)", pub, a, s, std::nullopt},
      {"fetch ok (present)", "fetch[Int] \"k\" (labeled ⟨A | True | S⟩ 0)", pub, a, s, std::nullopt,
       {{GroundValue::text("k"), LabeledGround{L("A | True | S"), GroundValue::integer(5)}}}},
      {"fetch availability", "fetch[Int] \"k\" (labeled ⟨True | True | A⟩ 0)", pub, a, s,
       Premise::kFetchAvailability},
  };
}

// --- Noninterference corpus ---------------------------------------------------

struct NiCase {
  std::string name;
  std::string program;  // λx : Labeled τ. ...
  std::string input0;
  std::string input1;
};

/// Secret inputs carry confidentiality A; the observer is E.
inline std::vector<NiCase> ni_corpus() {
  const std::string s = "labeled ⟨A | True | True⟩ ";
  return {
      {"store-direct", "λx : Labeled Int. store \"k\" x", s + "1", s + "2"},
      {"branch-in-compartment",
       "λx : Labeled Int. r <- toLabeled ⟨A | True | True⟩ (v <- unlabel x; if v < 10 then return 1 "
       "else return 2); store \"r\" r",
       s + "3", s + "42"},
      {"public-then-secret",
       "λx : Labeled Int. p <- label ⟨True | True | True⟩ 42; store \"pub\" p; store \"sec\" x; return 0",
       s + "5", s + "6"},
      {"fetch-derive",
       "λx : Labeled Int. store \"k\" x; d <- label ⟨A | True | True⟩ 0; y <- fetch[Int] \"k\" d; "
       "r <- toLabeled ⟨A | True | True⟩ (v <- unlabel y; return (v * 3)); store \"k2\" r",
       s + "7", s + "8"},
      {"raise-at-top",
       "λx : Labeled Int. p <- label ⟨True | True | True⟩ 1; store \"pub\" p; v <- unlabel x; "
       "return (v + 1)",
       s + "10", s + "20"},
      {"pair-secret",
       "λx : Labeled (Int, Text). store \"a\" x; r <- toLabeled ⟨A | True | True⟩ (v <- unlabel x; "
       "return (snd v ++ \"!\")); store \"b\" r",
       s + "(1, \"abc\")", s + "(2, \"xyz\")"},
      {"loop-public",
       "λx : Labeled Int. let loop = fix (λf : Int -> CLIO Unit. λn : Int. if n == 0 then return () "
       "else (p <- label ⟨True | True | True⟩ n; store \"count\" p; f (n - 1))) in loop 3; "
       "store \"sec\" x",
       s + "11", s + "12"},
      {"fetch-public-default",
       "λx : Labeled Int. d <- label ⟨True | True | True⟩ 7; y <- fetch[Int] \"pub\" d; "
       "store \"copy\" y; store \"sec\" x",
       s + "13", s + "14"},
      {"secret-text-concat",
       "λx : Labeled Text. r <- toLabeled ⟨A | True | True⟩ (v <- unlabel x; return (v ++ v)); "
       "store \"t\" r",
       s + "\"abc\"", s + "\"wxyz\""},
      {"label-inspection",
       "λx : Labeled Int. l <- toLabeled ⟨A | True | True⟩ (v <- unlabel x; getLabel); c <- getLabel; "
       "p <- label ⟨True | True | True⟩ c; store \"lab\" p; store \"inner\" l",
       s + "15", s + "16"},
      {"nested-compartments",
       "λx : Labeled Int. r <- toLabeled ⟨A | True | True⟩ (i <- toLabeled ⟨A | True | True⟩ "
       "(v <- unlabel x; return (v + 1)); w <- unlabel i; return (w * 2)); store \"n\" r",
       s + "17", s + "18"},
      {"secret-bool",
       "λx : Labeled Bool. r <- toLabeled ⟨A | True | True⟩ (b <- unlabel x; if b then return \"yes\" "
       "else return \"no\"); store \"b\" r; p <- label ⟨True | True | True⟩ \"done\"; store \"status\" p",
       s + "true", s + "false"},
  };
}

inline Keystore names_only(const std::vector<std::string>& names) {
  Keystore ks;
  for (const auto& n : names) ks.add(Principal(n), KeyPair{to_bytes(n), to_bytes(n)});
  return ks;
}

/// Observable projection of one ideal low step: events whose label is
/// readable at `level`, plus missing-fetch notices.
inline std::vector<std::string> public_events(const std::vector<StoreEvent>& events,
                                              const Label& level) {
  std::vector<std::string> out;
  for (const auto& e : events) {
    switch (e.kind) {
      case StoreEvent::Kind::kSkip: break;
      case StoreEvent::Kind::kMissing: out.push_back(e.text()); break;
      case StoreEvent::Kind::kStore:
      case StoreEvent::Kind::kFetch:
        if (component_flow(Component::kConf, e.value.label.conf(), level.conf())) {
          out.push_back(e.text());
        }
        break;
    }
  }
  return out;
}

/// Adversary behaviour during noninterference runs.
enum class NiAdversary { kNone, kCorruptAll, kPublicJunk };

struct NiOutcome {
  bool events_equal = true;
  bool low_equiv_always = true;
  std::size_t low_steps = 0;
  std::string detail;
};

inline NiOutcome run_ni_pair(const NiCase& c, NiAdversary adv) {
  const Keystore ks = names_only({"A", "E"});
  const Label level = authority_of(names_only({"E"}));
  const TermPtr program = parse_term(c.program);
  IdealStepper s0{{start_label(ks), clearance_of(ks), t::app(program, parse_with_literals(c.input0))},
                  {}, level};
  IdealStepper s1{{start_label(ks), clearance_of(ks), t::app(program, parse_with_literals(c.input1))},
                  {}, level};
  NiOutcome out;
  std::vector<std::string> ev0, ev1;
  for (std::size_t i = 0; i < 200 && !(is_terminal(s0.config) && is_terminal(s1.config)); ++i) {
    auto script = [&](const IdealStore& st) {
      std::vector<IdealInteraction> a;
      if (adv == NiAdversary::kCorruptAll) {
        std::vector<GroundValue> keys;
        for (const auto& [k, e] : st.entries()) keys.push_back(k);
        a.push_back(IdealInteraction::corrupt(keys));
      } else if (adv == NiAdversary::kPublicJunk && i % 2 == 0) {
        a.push_back(IdealInteraction::store(
            GroundValue::text("pub"),
            LabeledGround{L("True | True | True"), GroundValue::integer(static_cast<std::int64_t>(i))},
            level));
      }
      return a;
    };
    // Both runs see the adversary computed from the b = 0 store; the public
    // part of the stores is identical whenever the property holds.
    const auto a = script(s0.store);
    if (!is_terminal(s0.config)) {
      auto r = ideal_low_step(s0, a);
      s0 = std::move(r.next);
      for (auto& e : public_events(r.events, level)) ev0.push_back(std::move(e));
    }
    if (!is_terminal(s1.config)) {
      auto r = ideal_low_step(s1, a);
      s1 = std::move(r.next);
      for (auto& e : public_events(r.events, level)) ev1.push_back(std::move(e));
    }
    ++out.low_steps;
    if (!low_equiv(s0.config, s1.config, level)) {
      out.low_equiv_always = false;
      out.detail = c.name + ": configurations not low-equivalent after low step " + std::to_string(i);
    }
  }
  if (ev0 != ev1) {
    out.events_equal = false;
    out.detail = c.name + ": public events differ";
  }
  return out;
}

// --- Ideal / real oracle corpus -----------------------------------------------

/// Random straight-line program over A-owned labels storing and fetching Int
/// values at keys k0..k3.
inline std::string generated_program(std::uint64_t seed) {
  static const char* labels[] = {"⟨True | True | True⟩", "⟨A | True | True⟩", "⟨A | A | True⟩",
                                 "⟨True | A | A⟩", "⟨A | A | A⟩"};
  Rng rng(seed);
  std::string src;
  const auto n = 3 + rng.uniform(4);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::string id = std::to_string(i);
    const std::string key = "\"k" + std::to_string(rng.uniform(4)) + "\"";
    const char* l = labels[rng.uniform(5)];
    if (rng.uniform(2) == 0) {
      src += "x" + id + " <- label " + l + " " + std::to_string(rng.uniform(1000)) + "; store " + key +
             " x" + id + "; ";
    } else {
      const std::string out = "\"k" + std::to_string(rng.uniform(4)) + "\"";
      src += "d" + id + " <- label " + l + " 0; y" + id + " <- fetch[Int] " + key + " d" + id +
             "; r" + id + " <- toLabeled " + l + " (z <- unlabel y" + id + "; return (z + " +
             std::to_string(1 + rng.uniform(9)) + ")); store " + out + " r" + id + "; ";
    }
  }
  return src + "return ()";
}

enum class ScriptKind { kNone, kBenign, kCorrupting, kMixed };

/// Adversary interactions at random low steps over keys k0..k3.
inline AdversaryScript generated_script(std::uint64_t seed, ScriptKind kind, const Label& level,
                                        std::size_t horizon) {
  AdversaryScript script;
  if (kind == ScriptKind::kNone) return script;
  Rng rng(seed);
  for (std::size_t step = 0; step < horizon; ++step) {
    if (rng.uniform(3) != 0) continue;
    const GroundValue key = GroundValue::text("k" + std::to_string(rng.uniform(4)));
    const bool corrupt = kind == ScriptKind::kCorrupting ||
                         (kind == ScriptKind::kMixed && rng.uniform(2) == 0);
    if (corrupt) {
      script[step].push_back(IdealInteraction::corrupt({key}));
    } else {
      static const char* labels[] = {"True | True | True", "A | E | True", "A | True | True"};
      GroundValue v = rng.uniform(5) == 0 ? GroundValue::text("junk")
                                          : GroundValue::integer(static_cast<std::int64_t>(rng.uniform(500)));
      script[step].push_back(
          IdealInteraction::store(key, LabeledGround{L(labels[rng.uniform(3)]), v}, level));
    }
  }
  return script;
}

// --- Case study -------------------------------------------------------------

struct CaseStudy {
  Keystore all;
  Label store_level = L("True | True | S");
  TermPtr customer, preparer, irs;
  // TaxpayerInfo fed to the customer program.
  std::string name = "Alice Example";
  std::string ssn = "078-05-1120";
  std::int64_t income = 85000;
  std::string bank = "DE89370400440532013000";

  Keystore as(const std::string& who) const { return all.restricted_to({Principal(who)}); }
  Label initial_label(const std::string& who) const {
    return Label(Formula::True(), Formula::conjunction_of({Principal(who)}), parse_formula("S"));
  }
  std::vector<OraclePhase> phases() const {
    return {{customer, as("C"), 1000, initial_label("C")},
            {preparer, as("P"), 1000, initial_label("P")},
            {irs, as("IRS"), 1000, initial_label("IRS")}};
  }
};

inline CaseStudy load_case_study(const CryptoProvider& p, std::uint64_t seed) {
  CaseStudy cs;
  Rng rng = Rng(seed).fork("case-study-keys");
  cs.all = Keystore::generate({Principal("C"), Principal("P"), Principal("IRS")}, p, rng);
  cs.customer = parse_term(read_file(source_path("programs/case_study/customer.clio")));
  cs.preparer = parse_term(read_file(source_path("programs/case_study/preparer.clio")));
  cs.irs = parse_term(read_file(source_path("programs/case_study/irs.clio")));
  return cs;
}

/// prepareTaxes computed directly.
inline GroundValue expected_tax_return(const CaseStudy& cs) {
  return GroundValue::pair(GroundValue::text(cs.name),
                           GroundValue::pair(GroundValue::integer(cs.income),
                                             GroundValue::integer(cs.income - 10000)));
}

/// verifyReturn computed directly on the inputs.
inline bool expected_verdict(const CaseStudy& cs) {
  const GroundValue tr = expected_tax_return(cs);
  const auto income = tr.second().first().as_int();
  return income - 10000 == tr.second().second().as_int() && 0 < income;
}

struct CaseStudyResult {
  std::vector<Configuration> finals;
  std::string store_file_bytes;
};

/// Runs the three phases against a file-backed store at `path`.
inline CaseStudyResult run_case_study(const CaseStudy& cs, const std::filesystem::path& path,
                                      const CryptoProvider& p, std::uint64_t seed) {
  CaseStudyResult out;
  std::uint64_t n = 0;
  for (const auto& phase : cs.phases()) {
    RealStore base;
    {
      auto be = file_backend(path);
      base = load_store(*be);
    }
    Configuration c{*phase.initial_label, clearance_of(phase.keystore), phase.program};
    RealState s = make_real_state(c, phase.keystore, cs.store_level, p, seed + n++, base);
    SkipStrategy skip;
    for (std::size_t i = 0; i < 1000 && !is_terminal(s.config); ++i) real_low_step(s, skip);
    {
      auto be = file_backend(path);
      save_store(s.store, *be);
    }
    out.finals.push_back(s.config);
  }
  out.store_file_bytes = read_file(path);
  return out;
}

// --- Golden wire formats ----------------------------------------------------

inline constexpr std::uint64_t kGoldenSeed = 20260101;

struct GoldenArtifacts {
  std::string keystore;
  std::string category_key;
  std::string entry;
};

inline GoldenArtifacts make_golden() {
  const CryptoProvider& p = testvec_provider();
  Rng rng = Rng(kGoldenSeed).fork("golden-keys");
  const Keystore ks = Keystore::generate({Principal("Alice"), Principal("Bob")}, p, rng);
  Rng srng = Rng(kGoldenSeed).fork("golden-serialize");
  const Label l = L("Alice ∨ Bob | Alice | True");
  const GroundValue key = GroundValue::text("greeting");
  Serialized ser = serialize({}, l, GroundValue::pair(GroundValue::text("hello"), GroundValue::integer(7)),
                             key, 1, ks, p, srng);
  GoldenArtifacts g;
  g.keystore = ks.serialize(p.name());
  for (const auto& ck : ser.category_keys) {
    if (ck.ck->category == Category({"Alice", "Bob"})) g.category_key = category_key_record(*ck.ck) + "\n";
  }
  g.entry = entry_record(key, RealEntry{l, ser.ciphertext}) + "\n";
  return g;
}

}  // namespace clio::testing
