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

#include <cstddef>
#include <string>
#include <vector>

#include "clio/term.hpp"

namespace clio {

/// ⟨lcur, ccur, t⟩
struct Configuration {
  Label lcur;
  Label ccur;
  TermPtr term;
};

bool operator==(const Configuration& a, const Configuration& b);

/// What a single step did to the store.
struct StoreEvent {
  enum class Kind { kSkip, kStore, kFetch, kMissing };

  Kind kind = Kind::kSkip;
  GroundValue key;
  LabeledGround value;  // kStore, kFetch

  static StoreEvent skip() { return {}; }
  static StoreEvent store(GroundValue k, LabeledGround lv) {
    return {Kind::kStore, std::move(k), std::move(lv)};
  }
  static StoreEvent fetch(GroundValue k, LabeledGround lv) {
    return {Kind::kFetch, std::move(k), std::move(lv)};
  }
  static StoreEvent missing(GroundValue k) { return {Kind::kMissing, std::move(k), {}}; }

  std::string text() const;
  friend bool operator==(const StoreEvent&, const StoreEvent&) = default;
};

/// Connects the monitor to a concrete store.
class StoreBridge {
 public:
  virtual ~StoreBridge() = default;
  virtual void on_store(const GroundValue& key, const LabeledGround& lv) = 0;
  /// Answers with exactly one kFetch or kMissing event.
  virtual StoreEvent on_fetch(const GroundValue& key, const LabeledGround& fallback,
                              const TypePtr& type) = 0;
};

/// Drops every store and answers every fetch with kMissing.
class NullBridge final : public StoreBridge {
 public:
  void on_store(const GroundValue&, const LabeledGround&) override {}
  StoreEvent on_fetch(const GroundValue& key, const LabeledGround&, const TypePtr&) override {
    return StoreEvent::missing(key);
  }
};

struct StepResult {
  Configuration config;
  StoreEvent event;
};

/// The top-level term is `LIO v`.
bool is_terminal(const Configuration& c);

/// One small step. Throws MonitorFailure on a violated label check and
/// StuckError when no rule applies to a non-terminal term.
StepResult step(const Configuration& c, StoreBridge& bridge, const Label& store_level);

/// c.lcur ⊑ ℓ
bool is_low_config(const Configuration& c, const Label& store_level);

struct RunResult {
  Configuration config;
  std::vector<StoreEvent> trace;
  std::size_t steps = 0;
};

/// Steps until termination. BudgetExhausted when more than `max_steps` steps
/// would be needed.
RunResult run(const Configuration& c, StoreBridge& bridge, const Label& store_level,
              std::size_t max_steps);

inline constexpr std::size_t kDefaultHighBudget = 1'000'000;

/// One step from a low configuration, followed by the maximal run of high
/// steps. Reaching a terminal configuration while high also ends the low step.
RunResult low_step(const Configuration& c, StoreBridge& bridge, const Label& store_level,
                   std::size_t high_budget = kDefaultHighBudget);

/// Low steps needed to reach termination, or BudgetExhausted past `max_low`.
std::size_t count_low_steps(const Configuration& c, StoreBridge& bridge,
                            const Label& store_level, std::size_t max_low,
                            std::size_t high_budget = kDefaultHighBudget);

/// Reduces a pure term to a value, descending into pairs. Used for reporting
/// the payload of a finished computation.
TermPtr evaluate_pure(const TermPtr& t, std::size_t max_steps = kDefaultHighBudget);

}  // namespace clio
