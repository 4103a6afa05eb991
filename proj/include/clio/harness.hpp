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
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "clio/ideal.hpp"
#include "clio/store.hpp"

namespace clio {

inline constexpr std::size_t kDefaultTrials = 200;
inline constexpr double kDefaultAdvantageThreshold = 0.15;

/// Builds the strategy for one run. `adversary` is P₀ for the run.
using StrategyFactory = std::function<std::unique_ptr<Strategy>(const Keystore& adversary)>;

StrategyFactory skip_strategy();
/// Before every low step, re-stores each not yet tampered ciphertext with
/// one byte flipped.
StrategyFactory corrupting_strategy();

// --- CTA -------------------------------------------------------------------

struct CtaInstance {
  std::string name;
  std::vector<Principal> adversary_principals;  // P₀
  std::vector<Principal> protected_principals;  // p̃
  TermPtr program;                              // function term t
  TermPtr input0;
  TermPtr input1;
  std::size_t j = 1;
  std::size_t trials = kDefaultTrials;
  std::uint64_t seed_base = 0;
  std::optional<Label> store_level;  // default authorityOf(P₀)
  StrategyFactory strategy = skip_strategy();
};

/// Problems that make the instance invalid; empty when it may be played.
std::vector<std::string> validate_cta(const CtaInstance& inst);

/// What the adversary knows besides the trace.
struct CtaContext {
  const Keystore& adversary;
  const CryptoProvider& provider;
  Label store_level;
  const History& sim0;  // simulated b = 0 run under adversary-chosen keys
  const History& sim1;
};

class Distinguisher {
 public:
  virtual ~Distinguisher() = default;
  virtual std::string name() const = 0;
  /// 0 or 1.
  virtual int guess(const History& history, const CtaContext& ctx) const = 0;
};

/// history-length, ciphertext-lengths, byte-frequency, readable-plaintext,
/// label-sequence.
std::vector<std::unique_ptr<Distinguisher>> builtin_distinguishers();

class ConstantDistinguisher final : public Distinguisher {
 public:
  explicit ConstantDistinguisher(int bit) : bit_(bit) {}
  std::string name() const override { return "constant"; }
  int guess(const History&, const CtaContext&) const override { return bit_; }

 private:
  int bit_;
};

/// P₀ for an instance; deterministic in (instance, provider).
Keystore cta_adversary_keystore(const CtaInstance& inst, const CryptoProvider& p);

/// One run of t v_b under P₀ ⊎ Gen(p̃) for j low steps; returns the history.
History run_cta_trial(const CtaInstance& inst, int b, std::uint64_t seed,
                      const CryptoProvider& p);

struct AdvantageEstimate {
  std::string distinguisher;
  double p0 = 0;  // Pr[guess = 1 | b = 0]
  double p1 = 0;
  double advantage = 0;
  double stderr_ = 0;
};

struct CtaReport {
  std::string instance;
  std::size_t trials = 0;
  std::vector<AdvantageEstimate> estimates;
  double max_advantage() const;
};

/// Runs `inst.trials` trials per branch with disjoint seeds and scores every
/// distinguisher on the same histories. Throws Error if validation fails.
CtaReport estimate_advantage(const CtaInstance& inst,
                             const std::vector<const Distinguisher*>& distinguishers,
                             const CryptoProvider& p);

// --- Leveraged forgery -----------------------------------------------------

/// (key, label, ciphertext) of a valid stored value.
using ValueTriple = std::tuple<GroundValue, Label, Bytes>;

/// StoreVal entries that deserialize under `ks` against the store at their
/// point in the history and whose recorded key equals the entry key.
std::set<ValueTriple> values_of(const History& history, const Keystore& ks,
                                const CryptoProvider& p);

enum class ForgeryAdversary { kReplay, kSplice, kRollback, kBitFlip };

const char* forgery_adversary_name(ForgeryAdversary a);
std::optional<ForgeryAdversary> forgery_adversary_by_name(std::string_view name);

/// Phase-two strategy given the phase-one history.
std::unique_ptr<Strategy> make_forgery_adversary(ForgeryAdversary kind, const History& phase1);

struct ForgeryInstance {
  std::string name;
  std::vector<Principal> base_principals;  // P₀
  Principal target{"P"};                   // p
  TermPtr phase1;
  std::size_t j1 = 1;
  TermPtr phase2;
  std::size_t j2 = 1;
  std::size_t trials = 100;
  std::uint64_t seed_base = 0;
};

std::vector<std::string> validate_forgery(const ForgeryInstance& inst);

struct ForgeryTrial {
  bool success = false;
  bool floor_held = true;
  bool monitor_stopped = false;
  std::size_t phase2_low_steps = 0;
};

ForgeryTrial run_forgery_trial(const ForgeryInstance& inst, ForgeryAdversary adversary,
                               std::uint64_t seed, const CryptoProvider& p);

struct ForgeryReport {
  std::string instance;
  std::string adversary;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t floor_violations = 0;
  std::size_t monitor_stops = 0;
};

ForgeryReport run_forgery_game(const ForgeryInstance& inst, ForgeryAdversary adversary,
                               const CryptoProvider& p);

// --- Ideal / real oracle ---------------------------------------------------

/// One runtime in a sequence sharing the store (e.g. customer, preparer,
/// auditor). Each phase starts from ⟨startLabel, clearance⟩ of its keystore
/// unless `initial_label` overrides the former.
struct OraclePhase {
  TermPtr program;
  Keystore keystore;
  std::size_t max_low_steps = 1000;
  std::optional<Label> initial_label;
};

/// Adversary interactions keyed by the global low-step index at which they
/// are applied.
using AdversaryScript = std::map<std::size_t, std::vector<IdealInteraction>>;

struct OracleReport {
  bool equivalent = true;
  std::size_t low_steps = 0;
  std::optional<std::size_t> first_divergence;
  std::string detail;
  Configuration final_ideal;
  Configuration final_real;
  IdealStore ideal_store;
  RealStore real_store;
};

/// Runs both semantics in lockstep. Ideal Store interactions become
/// serializations under `adversary` with version 2^40 + |history|; Corrupt
/// re-stores the entry with a flipped middle byte and the last byte dropped.
/// `full` must be able to read every entry and is used only for comparison.
OracleReport ideal_real_oracle(const std::vector<OraclePhase>& phases,
                               const AdversaryScript& script, const Keystore& adversary,
                               const Keystore& full, const Label& store_level,
                               const CryptoProvider& p, std::uint64_t seed);

/// Ciphertext with the middle byte flipped and the last byte removed.
Bytes corrupt_ciphertext(ByteView c);

}  // namespace clio
