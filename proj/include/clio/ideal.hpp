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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clio/runtime.hpp"

namespace clio {

/// Reference store: key → labeled value, or a corrupted marker.
class IdealStore {
 public:
  struct Entry {
    std::optional<LabeledGround> value;  // nullopt: corrupted
    bool corrupted() const { return !value.has_value(); }
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  void put(const GroundValue& key, LabeledGround lv) { entries_[key] = Entry{std::move(lv)}; }
  void corrupt(const GroundValue& key) { entries_[key] = Entry{std::nullopt}; }

  /// nullptr when absent.
  const Entry* find(const GroundValue& key) const;
  const std::map<GroundValue, Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// One line per key: `<key-b64> <label> <value-b64|CORRUPT>`; corrupted
  /// entries print `-` as their label.
  std::string dump() const;

  friend bool operator==(const IdealStore&, const IdealStore&) = default;

 private:
  std::map<GroundValue, Entry> entries_;
};

/// Adversary interaction against the ideal store.
struct IdealInteraction {
  enum class Kind { kSkip, kStore, kCorrupt };

  Kind kind = Kind::kSkip;
  GroundValue key;              // kStore
  LabeledGround value;          // kStore
  std::vector<GroundValue> keys;  // kCorrupt

  static IdealInteraction skip() { return {}; }
  /// Throws InteractionRejected unless ℓ.integ ⊑I l1.integ.
  static IdealInteraction store(GroundValue key, LabeledGround lv, const Label& store_level);
  static IdealInteraction corrupt(std::vector<GroundValue> keys);
};

/// Rechecks the Store side condition against ℓ, then applies.
IdealStore apply_ideal(IdealStore store, const IdealInteraction& i, const Label& store_level);

/// Answers fetches from an IdealStore and applies stores to it.
class IdealBridge final : public StoreBridge {
 public:
  explicit IdealBridge(IdealStore& store) : store_(store) {}
  void on_store(const GroundValue& key, const LabeledGround& lv) override;
  StoreEvent on_fetch(const GroundValue& key, const LabeledGround& fallback,
                      const TypePtr& type) override;

 private:
  IdealStore& store_;
};

struct IdealStepper {
  Configuration config;
  IdealStore store;
  Label store_level;
  std::size_t high_budget = kDefaultHighBudget;
};

struct IdealLowStep {
  IdealStepper next;
  std::vector<StoreEvent> events;
};

/// Applies `adversary` to the store, then takes one low step.
IdealLowStep ideal_low_step(const IdealStepper& s, const std::vector<IdealInteraction>& adversary);

/// Confidentiality-only low equivalence at `level`.
bool low_equiv(const Configuration& a, const Configuration& b, const Label& level);

/// Term part of low_equiv: structural equality where labeled payloads whose
/// confidentiality is not readable at `level` need only share a type.
bool low_equiv_terms(const TermPtr& a, const TermPtr& b, const Label& level);

}  // namespace clio
