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
#include "clio/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "clio/codec.hpp"

namespace clio {

namespace {

std::uint64_t derive_seed(std::uint64_t base, const std::string& label) {
  return Rng(base).fork(label).next_u64();
}

// Stand-in keystore owning `principals`; only the set of names matters.
Keystore names_keystore(const std::vector<Principal>& principals) {
  Keystore ks;
  for (const auto& p : principals) ks.add(p, KeyPair{to_bytes(p.name()), to_bytes(p.name())});
  return ks;
}

std::vector<Principal> concat(std::vector<Principal> a, const std::vector<Principal>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Configuration initial_config(const Keystore& ks, TermPtr term) {
  return {start_label(ks), clearance_of(ks), std::move(term)};
}

}  // namespace

// --- Strategies ------------------------------------------------------------

StrategyFactory skip_strategy() {
  return [](const Keystore&) { return std::make_unique<SkipStrategy>(); };
}

StrategyFactory corrupting_strategy() {
  return [](const Keystore&) -> std::unique_ptr<Strategy> {
    auto seen = std::make_shared<std::size_t>(0);
    return std::make_unique<FunctionStrategy>([seen](const History& h, Rng& rng) {
      History out;
      for (std::size_t i = *seen; i < h.size(); ++i) {
        const auto& x = h[i];
        if (x.kind != RealInteraction::Kind::kStoreVal ||
            x.origin == RealInteraction::Origin::kAdversary || x.ciphertext.empty()) {
          continue;
        }
        Bytes c = x.ciphertext;
        c[rng.uniform(c.size())] ^= static_cast<std::uint8_t>(1 + rng.uniform(255));
        out.push_back(RealInteraction::store_val(x.key, x.label, std::move(c),
                                                 RealInteraction::Origin::kAdversary));
      }
      *seen = h.size() + out.size();
      return out;
    });
  };
}

// --- CTA -------------------------------------------------------------------

namespace {

Label cta_store_level(const CtaInstance& inst) {
  return inst.store_level ? *inst.store_level
                          : authority_of(names_keystore(inst.adversary_principals));
}

}  // namespace

std::vector<std::string> validate_cta(const CtaInstance& inst) {
  std::vector<std::string> problems;
  if (!inst.program || !inst.input0 || !inst.input1) return {"program and both inputs are required"};
  if (contains_internal_forms(inst.program)) problems.push_back("program contains internal forms");
  for (const auto& p : inst.protected_principals) {
    if (std::find(inst.adversary_principals.begin(), inst.adversary_principals.end(), p) !=
        inst.adversary_principals.end()) {
      problems.push_back("principal " + p.name() + " is both adversarial and protected");
    }
  }
  if (inst.trials < 30) problems.push_back("at least 30 trials per branch are required");
  try {
    TypePtr ft = typecheck(inst.program);
    if (ft->kind() != Type::Kind::kFun || ft->second()->kind() != Type::Kind::kClio) {
      problems.push_back("program must have type τ -> CLIO τ', got " + ft->str());
    } else {
      for (const auto* in : {&inst.input0, &inst.input1}) {
        TypePtr it = typecheck(*in);
        if (!same_type(it, ft->first())) {
          problems.push_back("input " + pretty(*in) + " has type " + it->str() + ", expected " +
                             ft->first()->str());
        }
      }
    }
  } catch (const TypeError& e) {
    problems.push_back(std::string("type error: ") + e.what());
  }
  if (!problems.empty()) return problems;

  const Label level = cta_store_level(inst);
  if (!low_equiv_terms(inst.input0, inst.input1, level)) {
    problems.push_back("inputs are not confidentiality low-equivalent at ⟨" + level.text() + "⟩");
  }
  const Keystore ks = names_keystore(concat(inst.adversary_principals, inst.protected_principals));
  std::array<std::size_t, 2> counts{};
  for (int b = 0; b < 2; ++b) {
    IdealStore store;
    IdealBridge bridge(store);
    try {
      counts[b] = count_low_steps(initial_config(ks, t::app(inst.program, b ? inst.input1 : inst.input0)),
                                  bridge, level, 100000);
    } catch (const Error& e) {
      problems.push_back("branch " + std::to_string(b) + " fails in the ideal semantics: " + e.what());
    }
  }
  if (problems.empty()) {
    if (counts[0] != counts[1]) {
      problems.push_back("branches take different numbers of low steps (" + std::to_string(counts[0]) +
                         " vs " + std::to_string(counts[1]) + ")");
    } else if (counts[0] < inst.j) {
      problems.push_back("program takes only " + std::to_string(counts[0]) + " low steps, j = " +
                         std::to_string(inst.j));
    }
  }
  return problems;
}

Keystore cta_adversary_keystore(const CtaInstance& inst, const CryptoProvider& p) {
  Rng rng = Rng(inst.seed_base).fork("adversary-keys/" + p.name());
  return Keystore::generate(inst.adversary_principals, p, rng);
}

namespace {

History run_with(const CtaInstance& inst, const Keystore& adversary, int b, std::uint64_t seed,
                 const CryptoProvider& p) {
  Rng rng = Rng(seed).fork("protected-keys");
  Keystore ks = adversary.merged(Keystore::generate(inst.protected_principals, p, rng));
  auto strategy = inst.strategy(adversary);
  RealState s = step_meta(initial_config(ks, t::app(inst.program, b ? inst.input1 : inst.input0)),
                          *strategy, inst.j, ks, cta_store_level(inst), p, seed);
  return std::move(s.history);
}

}  // namespace

History run_cta_trial(const CtaInstance& inst, int b, std::uint64_t seed,
                      const CryptoProvider& p) {
  return run_with(inst, cta_adversary_keystore(inst, p), b, seed, p);
}

// --- Distinguishers --------------------------------------------------------

namespace {

std::vector<const RealInteraction*> stored_values(const History& h) {
  std::vector<const RealInteraction*> out;
  for (const auto& i : h) {
    if (i.kind == RealInteraction::Kind::kStoreVal) out.push_back(&i);
  }
  return out;
}

template <typename T>
double sequence_distance(const std::vector<T>& a, const std::vector<T>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  double d = static_cast<double>(std::max(a.size(), b.size()) - n);
  for (std::size_t i = 0; i < n; ++i) d += a[i] == b[i] ? 0 : 1;
  return d;
}

// Guesses the branch whose simulated run is nearer; ties guess 0.
class NearestReference : public Distinguisher {
 public:
  int guess(const History& h, const CtaContext& ctx) const override {
    return distance(h, ctx.sim1, ctx) < distance(h, ctx.sim0, ctx) ? 1 : 0;
  }

 protected:
  virtual double distance(const History& a, const History& b, const CtaContext& ctx) const = 0;
};

class HistoryLength final : public NearestReference {
 public:
  std::string name() const override { return "history-length"; }

 protected:
  double distance(const History& a, const History& b, const CtaContext&) const override {
    return std::fabs(static_cast<double>(a.size()) - static_cast<double>(b.size()));
  }
};

class CiphertextLengths final : public NearestReference {
 public:
  std::string name() const override { return "ciphertext-lengths"; }

 protected:
  static std::vector<std::size_t> lengths(const History& h) {
    std::vector<std::size_t> out;
    for (const auto& i : h) {
      if (i.kind == RealInteraction::Kind::kStoreVal) out.push_back(i.ciphertext.size());
      if (i.kind == RealInteraction::Kind::kStoreCK) out.push_back(i.ck->public_key.size());
    }
    return out;
  }
  double distance(const History& a, const History& b, const CtaContext&) const override {
    return sequence_distance(lengths(a), lengths(b));
  }
};

class ByteFrequency final : public NearestReference {
 public:
  std::string name() const override { return "byte-frequency"; }

 protected:
  static std::array<double, 256> histogram(const History& h) {
    std::array<double, 256> f{};
    double n = 0;
    for (const auto* i : stored_values(h)) {
      for (std::uint8_t c : i->ciphertext) f[c] += 1;
      n += static_cast<double>(i->ciphertext.size());
    }
    if (n > 0) {
      for (double& x : f) x /= n;
    }
    return f;
  }
  double distance(const History& a, const History& b, const CtaContext&) const override {
    auto fa = histogram(a), fb = histogram(b);
    double d = 0;
    for (std::size_t i = 0; i < 256; ++i) d += std::fabs(fa[i] - fb[i]);
    return d;
  }
};

class ReadablePlaintext final : public NearestReference {
 public:
  std::string name() const override { return "readable-plaintext"; }

 protected:
  static std::vector<std::string> readable(const History& h, const CtaContext& ctx) {
    std::vector<std::string> out;
    RealStore s;
    for (const auto& i : h) {
      s.apply(i);
      if (i.kind != RealInteraction::Kind::kStoreVal) continue;
      if (auto d = deserialize(s, i.label, i.ciphertext, nullptr, ctx.adversary, ctx.provider)) {
        out.push_back("value " + d->value.text() + " " + d->key.text());
      } else if (auto raw = i.label.conf().is_false()
                                ? std::nullopt
                                : peel_without_keys(i.ciphertext, i.label.conf().clauses().size(),
                                                    ctx.provider)) {
        out.push_back("raw " + hex(*raw));
      } else {
        out.push_back("?");
      }
    }
    return out;
  }
  double distance(const History& a, const History& b, const CtaContext& ctx) const override {
    return sequence_distance(readable(a, ctx), readable(b, ctx));
  }
};

class LabelSequence final : public NearestReference {
 public:
  std::string name() const override { return "label-sequence"; }

 protected:
  static std::vector<std::string> labels(const History& h) {
    std::vector<std::string> out;
    for (const auto* i : stored_values(h)) out.push_back(i->label.text());
    return out;
  }
  double distance(const History& a, const History& b, const CtaContext&) const override {
    return sequence_distance(labels(a), labels(b));
  }
};

}  // namespace

std::vector<std::unique_ptr<Distinguisher>> builtin_distinguishers() {
  std::vector<std::unique_ptr<Distinguisher>> out;
  out.push_back(std::make_unique<HistoryLength>());
  out.push_back(std::make_unique<CiphertextLengths>());
  out.push_back(std::make_unique<ByteFrequency>());
  out.push_back(std::make_unique<ReadablePlaintext>());
  out.push_back(std::make_unique<LabelSequence>());
  return out;
}

double CtaReport::max_advantage() const {
  double m = 0;
  for (const auto& e : estimates) m = std::max(m, e.advantage);
  return m;
}

CtaReport estimate_advantage(const CtaInstance& inst,
                             const std::vector<const Distinguisher*>& distinguishers,
                             const CryptoProvider& p) {
  if (auto problems = validate_cta(inst); !problems.empty()) {
    std::string msg = "invalid CTA instance " + inst.name + ":";
    for (const auto& s : problems) msg += "\n  " + s;
    throw Error(msg);
  }
  const Keystore adversary = cta_adversary_keystore(inst, p);
  const History sim0 = run_with(inst, adversary, 0, derive_seed(inst.seed_base, "sim/0"), p);
  const History sim1 = run_with(inst, adversary, 1, derive_seed(inst.seed_base, "sim/1"), p);
  const CtaContext ctx{adversary, p, cta_store_level(inst), sim0, sim1};

  std::vector<std::array<std::size_t, 2>> ones(distinguishers.size());
  for (int b = 0; b < 2; ++b) {
    for (std::size_t i = 0; i < inst.trials; ++i) {
      const std::uint64_t seed =
          derive_seed(inst.seed_base, "trial/" + std::to_string(b) + "/" + std::to_string(i));
      const History h = run_with(inst, adversary, b, seed, p);
      for (std::size_t d = 0; d < distinguishers.size(); ++d) {
        ones[d][b] += distinguishers[d]->guess(h, ctx) == 1 ? 1 : 0;
      }
    }
  }
  CtaReport r{inst.name, inst.trials, {}};
  const double n = static_cast<double>(inst.trials);
  for (std::size_t d = 0; d < distinguishers.size(); ++d) {
    AdvantageEstimate e;
    e.distinguisher = distinguishers[d]->name();
    e.p0 = static_cast<double>(ones[d][0]) / n;
    e.p1 = static_cast<double>(ones[d][1]) / n;
    e.advantage = std::fabs(e.p0 - e.p1);
    e.stderr_ = std::sqrt(e.p0 * (1 - e.p0) / n + e.p1 * (1 - e.p1) / n);
    r.estimates.push_back(e);
  }
  return r;
}

// --- Leveraged forgery -----------------------------------------------------

std::set<ValueTriple> values_of(const History& history, const Keystore& ks,
                                const CryptoProvider& p) {
  std::set<ValueTriple> out;
  RealStore s;
  for (const auto& i : history) {
    s.apply(i);
    if (i.kind != RealInteraction::Kind::kStoreVal) continue;
    auto d = deserialize(s, i.label, i.ciphertext, nullptr, ks, p);
    if (d && d->key == i.key) out.emplace(i.key, i.label, i.ciphertext);
  }
  return out;
}

const char* forgery_adversary_name(ForgeryAdversary a) {
  switch (a) {
    case ForgeryAdversary::kReplay: return "replay";
    case ForgeryAdversary::kSplice: return "splice";
    case ForgeryAdversary::kRollback: return "rollback";
    case ForgeryAdversary::kBitFlip: return "bitflip";
  }
  return "?";
}

std::optional<ForgeryAdversary> forgery_adversary_by_name(std::string_view name) {
  for (auto a : {ForgeryAdversary::kReplay, ForgeryAdversary::kSplice,
                 ForgeryAdversary::kRollback, ForgeryAdversary::kBitFlip}) {
    if (name == forgery_adversary_name(a)) return a;
  }
  return std::nullopt;
}

std::unique_ptr<Strategy> make_forgery_adversary(ForgeryAdversary kind, const History& phase1) {
  History cks, vals;
  for (const auto& i : phase1) {
    if (i.kind == RealInteraction::Kind::kStoreCK) cks.push_back(i);
    if (i.kind == RealInteraction::Kind::kStoreVal) vals.push_back(i);
  }
  auto calls = std::make_shared<std::size_t>(0);
  return std::make_unique<FunctionStrategy>([=](const History&, Rng& rng) {
    const std::size_t call = (*calls)++;
    History out;
    if (call == 0) out = cks;
    switch (kind) {
      case ForgeryAdversary::kReplay:
        if (call == 0) out.insert(out.end(), vals.begin(), vals.end());
        break;
      case ForgeryAdversary::kSplice: {
        // Every phase-one ciphertext under every other phase-one key.
        if (vals.empty()) break;
        const auto& src = vals[call % vals.size()];
        for (const auto& dst : vals) {
          if (dst.key != src.key) {
            out.push_back(RealInteraction::store_val(dst.key, src.label, src.ciphertext));
          }
        }
        out.push_back(RealInteraction::store_val(
            GroundValue::pair(src.key, GroundValue::text("spliced")), src.label, src.ciphertext));
        break;
      }
      case ForgeryAdversary::kRollback: {
        // Oldest version of each key last, so it is the one left in the store.
        for (auto it = vals.rbegin(); it != vals.rend(); ++it) out.push_back(*it);
        break;
      }
      case ForgeryAdversary::kBitFlip:
        for (const auto& v : vals) {
          if (v.ciphertext.empty()) continue;
          Bytes c = v.ciphertext;
          c[rng.uniform(c.size())] ^= static_cast<std::uint8_t>(1u << rng.uniform(8));
          out.push_back(RealInteraction::store_val(v.key, v.label, std::move(c)));
        }
        break;
    }
    return out;
  });
}

std::vector<std::string> validate_forgery(const ForgeryInstance& inst) {
  std::vector<std::string> problems;
  if (!inst.phase1 || !inst.phase2) return {"both phase programs are required"};
  if (std::find(inst.base_principals.begin(), inst.base_principals.end(), inst.target) !=
      inst.base_principals.end()) {
    problems.push_back("target principal " + inst.target.name() + " is in the base keystore");
  }
  for (const auto* t : {&inst.phase1, &inst.phase2}) {
    if (contains_internal_forms(*t)) problems.push_back("program contains internal forms");
    try {
      TypePtr ty = typecheck(*t);
      if (ty->kind() != Type::Kind::kClio) problems.push_back("program must be a CLIO computation");
    } catch (const TypeError& e) {
      problems.push_back(std::string("type error: ") + e.what());
    }
  }
  return problems;
}

ForgeryTrial run_forgery_trial(const ForgeryInstance& inst, ForgeryAdversary adversary,
                               std::uint64_t seed, const CryptoProvider& p) {
  Rng base_rng = Rng(inst.seed_base).fork("base-keys/" + p.name());
  const Keystore p0 = Keystore::generate(inst.base_principals, p, base_rng);
  Rng target_rng = Rng(seed).fork("target-key");
  const Keystore target = Keystore::generate({inst.target}, p, target_rng);
  const Keystore full = p0.merged(target);
  const Label level = authority_of(p0);

  RealState one = make_real_state(initial_config(full, inst.phase1), full, level, p,
                                  derive_seed(seed, "phase1"));
  SkipStrategy honest;
  for (std::size_t i = 0; i < inst.j1 && !is_terminal(one.config); ++i) real_low_step(one, honest);

  ForgeryTrial r;
  const Keystore weak = p0.merged(target.public_only());
  const Formula floor = start_label(p0).integ();
  RealState two = make_real_state(initial_config(p0, inst.phase2), weak, level, p,
                                  derive_seed(seed, "phase2"));
  auto strategy = make_forgery_adversary(adversary, one.history);
  for (std::size_t i = 0; i < inst.j2 && !is_terminal(two.config); ++i) {
    try {
      real_low_step(two, *strategy);
    } catch (const MonitorFailure&) {
      r.monitor_stopped = true;
      break;
    } catch (const CategoryKeyError&) {
      r.monitor_stopped = true;
      break;
    }
    ++r.phase2_low_steps;
    if (!component_flow(Component::kInteg, floor, two.config.lcur.integ())) r.floor_held = false;
  }

  const auto before = values_of(one.history, full, p);
  const Formula claim = Formula::conjunction_of({inst.target});
  for (const auto& v : values_of(two.history, full, p)) {
    if (!before.count(v) && entails(std::get<1>(v).integ(), claim)) r.success = true;
  }
  return r;
}

ForgeryReport run_forgery_game(const ForgeryInstance& inst, ForgeryAdversary adversary,
                               const CryptoProvider& p) {
  if (auto problems = validate_forgery(inst); !problems.empty()) {
    std::string msg = "invalid forgery instance " + inst.name + ":";
    for (const auto& s : problems) msg += "\n  " + s;
    throw Error(msg);
  }
  ForgeryReport rep{inst.name, forgery_adversary_name(adversary), inst.trials, 0, 0, 0};
  for (std::size_t i = 0; i < inst.trials; ++i) {
    const std::uint64_t seed = derive_seed(
        inst.seed_base, std::string("trial/") + forgery_adversary_name(adversary) + "/" +
                            std::to_string(i));
    ForgeryTrial t = run_forgery_trial(inst, adversary, seed, p);
    rep.successes += t.success ? 1 : 0;
    rep.floor_violations += t.floor_held ? 0 : 1;
    rep.monitor_stops += t.monitor_stopped ? 1 : 0;
  }
  return rep;
}

// --- Ideal / real oracle ---------------------------------------------------

Bytes corrupt_ciphertext(ByteView c) {
  Bytes out(c.begin(), c.end());
  if (out.empty()) return out;
  out[out.size() / 2] ^= 0x01;
  out.pop_back();
  return out;
}

namespace {

std::optional<std::string> compare_stores(const IdealStore& ideal, const RealStore& real,
                                          const Keystore& full, const CryptoProvider& p) {
  for (const auto& [k, e] : ideal.entries()) {
    auto it = real.entries.find(k);
    std::optional<Deserialized> d;
    if (it != real.entries.end()) {
      d = deserialize(real, it->second.label, it->second.ciphertext, nullptr, full, p);
    }
    const bool valid = d && d->key == k;
    if (e.corrupted()) {
      if (valid) return "key " + k.text() + " is corrupted ideally but readable in the real store";
      continue;
    }
    if (!valid) return "key " + k.text() + " holds a value ideally but is unreadable in the real store";
    if (it->second.label != e.value->label || d->value != e.value->value) {
      return "key " + k.text() + " differs: ideal ⟨" + e.value->label.text() + "⟩" +
             e.value->value.text() + ", real ⟨" + it->second.label.text() + "⟩" + d->value.text();
    }
  }
  for (const auto& [k, e] : real.entries) {
    if (!ideal.find(k)) return "real store has extra key " + k.text();
  }
  return std::nullopt;
}

struct Outcome {
  std::optional<std::string> error;
  std::optional<Premise> premise;
};

template <typename F>
Outcome attempt(F&& f) {
  try {
    f();
    return {};
  } catch (const MonitorFailure& e) {
    return {e.what(), e.premise()};
  } catch (const Error& e) {
    return {e.what(), std::nullopt};
  }
}

}  // namespace

OracleReport ideal_real_oracle(const std::vector<OraclePhase>& phases,
                               const AdversaryScript& script, const Keystore& adversary,
                               const Keystore& full, const Label& store_level,
                               const CryptoProvider& p, std::uint64_t seed) {
  OracleReport rep;
  Rng adv_rng = Rng(seed).fork("oracle-adversary");
  std::size_t global = 0;
  std::size_t offset = 0;  // interactions from earlier phases
  bool halted = false;
  auto diverge = [&](const std::string& why) {
    rep.equivalent = false;
    rep.first_divergence = global;
    rep.detail = "low step " + std::to_string(global) + ": " + why;
  };

  for (std::size_t ph = 0; ph < phases.size() && rep.equivalent && !halted; ++ph) {
    const OraclePhase& phase = phases[ph];
    Configuration ideal = initial_config(phase.keystore, phase.program);
    if (phase.initial_label) ideal.lcur = *phase.initial_label;
    RealState real = make_real_state(ideal, phase.keystore, store_level, p,
                                     derive_seed(seed, "phase/" + std::to_string(ph)),
                                     rep.real_store);
    for (std::size_t s = 0; s < phase.max_low_steps; ++s, ++global) {
      if (is_terminal(ideal) != is_terminal(real.config)) {
        diverge("only one semantics terminated");
        break;
      }
      if (is_terminal(ideal)) break;
      if (auto it = script.find(global); it != script.end()) {
        for (const auto& i : it->second) {
          IdealStore next_store;
          try {
            next_store = apply_ideal(rep.ideal_store, i, store_level);
          } catch (const InteractionRejected&) {
            continue;
          }
          if (i.kind == IdealInteraction::Kind::kStore) {
            // Unrealizable by the adversary's keys: dropped on both sides.
            const std::uint64_t version = (std::uint64_t{1} << 40) + offset + real.history.size();
            Serialized ser;
            try {
              ser = serialize(real.store, i.value.label, i.value.value, i.key, version, adversary,
                              p, adv_rng);
            } catch (const CategoryKeyError&) {
              continue;
            }
            for (auto& ck : ser.category_keys) {
              ck.origin = RealInteraction::Origin::kAdversary;
              real.append(std::move(ck));
            }
            real.append(RealInteraction::store_val(i.key, i.value.label, std::move(ser.ciphertext),
                                                   RealInteraction::Origin::kAdversary));
          } else if (i.kind == IdealInteraction::Kind::kCorrupt) {
            for (const auto& k : i.keys) {
              auto e = real.store.entries.find(k);
              if (e == real.store.entries.end()) continue;
              real.append(RealInteraction::store_val(k, e->second.label,
                                                     corrupt_ciphertext(e->second.ciphertext),
                                                     RealInteraction::Origin::kAdversary));
            }
          }
          rep.ideal_store = std::move(next_store);
        }
      }
      Configuration next_ideal = ideal;
      Outcome oi = attempt([&] {
        IdealBridge bridge(rep.ideal_store);
        next_ideal = low_step(ideal, bridge, store_level).config;
      });
      Outcome orl = attempt([&] {
        RealBridge bridge(real);
        real.config = low_step(real.config, bridge, store_level).config;
      });
      rep.low_steps = global + 1;
      if (oi.error || orl.error) {
        if (!oi.error || !orl.error || oi.premise != orl.premise || !oi.premise) {
          diverge("ideal: " + oi.error.value_or("ok") + "; real: " + orl.error.value_or("ok"));
        } else {
          rep.detail = "both halted: " + *oi.error;
          halted = true;
        }
        break;
      }
      ideal = std::move(next_ideal);
      if (!(ideal == real.config)) {
        diverge("configurations differ: ideal " + pretty(ideal.term) + " vs real " +
                pretty(real.config.term));
        break;
      }
      if (auto why = compare_stores(rep.ideal_store, real.store, full, p)) {
        diverge(*why);
        break;
      }
    }
    rep.final_ideal = ideal;
    rep.final_real = real.config;
    offset += real.history.size();
    rep.real_store = real.store;
  }
  return rep;
}

}  // namespace clio
