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
#include <string>
#include <vector>

#include "clio/crypto.hpp"
#include "clio/runtime.hpp"

namespace clio {

// --- Keystores -------------------------------------------------------------

/// Principal → key pair. Principals without a private key are known by
/// their public key only.
class Keystore {
 public:
  Keystore() = default;

  /// One fresh pair per principal; throws on duplicates.
  static Keystore generate(const std::vector<Principal>& principals, const CryptoProvider& p,
                           Rng& rng);

  /// Throws Error if `principal` is already present.
  void add(Principal principal, KeyPair pair);
  const KeyPair* find(const Principal& principal) const;
  bool owns(const Principal& principal) const;
  std::vector<Principal> owned() const;
  const std::map<Principal, KeyPair>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Union of disjoint keystores.
  Keystore merged(const Keystore& other) const;
  /// Same principals with every private key dropped.
  Keystore public_only() const;
  /// Keeps private keys only for `principals`.
  Keystore restricted_to(const std::vector<Principal>& principals) const;

  /// `#clio-keystore provider=<name>` followed by one `principal pub-b64
  /// (priv-b64|-)` line per principal, in principal order.
  std::string serialize(std::string_view provider_name) const;
  /// Returns the keystore and the provider name from the header (empty when
  /// absent). Throws IoError on malformed input.
  static std::pair<Keystore, std::string> parse(std::string_view text);

  friend bool operator==(const Keystore&, const Keystore&) = default;

 private:
  std::map<Principal, KeyPair> entries_;
};

/// ⟨P | P | P⟩ where P is the conjunction of owned principals.
Label authority_of(const Keystore& ks);
/// ⟨True | P | P⟩
Label start_label(const Keystore& ks);
/// ⟨P | True | True⟩
Label clearance_of(const Keystore& ks);

// --- Category keys ---------------------------------------------------------

struct CategoryKey {
  Category category;
  Bytes public_key;
  std::map<Principal, Bytes> wrapped;  // category private key under each member
  Bytes signature;                     // by one member over the fields above
  friend bool operator==(const CategoryKey&, const CategoryKey&) = default;
};

/// Bytes covered by CategoryKey::signature.
Bytes category_key_message(const CategoryKey& ck);

// --- Real store ------------------------------------------------------------

struct RealInteraction {
  enum class Kind { kSkip, kStoreCK, kStoreVal };
  enum class Origin { kRuntime, kAdversary };

  Kind kind = Kind::kSkip;
  Origin origin = Origin::kRuntime;
  std::optional<CategoryKey> ck;  // kStoreCK
  GroundValue key;        // kStoreVal
  Label label;            // kStoreVal
  Bytes ciphertext;       // kStoreVal

  static RealInteraction skip(Origin o = Origin::kRuntime);
  static RealInteraction store_ck(CategoryKey ck, Origin o = Origin::kRuntime);
  static RealInteraction store_val(GroundValue key, Label label, Bytes ciphertext,
                                   Origin o = Origin::kRuntime);

  friend bool operator==(const RealInteraction&, const RealInteraction&) = default;
};

using History = std::vector<RealInteraction>;

struct RealEntry {
  Label label;
  Bytes ciphertext;
  friend bool operator==(const RealEntry&, const RealEntry&) = default;
};

struct RealStore {
  std::map<GroundValue, RealEntry> entries;
  std::map<Category, CategoryKey> category_keys;

  void apply(const RealInteraction& i);
  friend bool operator==(const RealStore&, const RealStore&) = default;
};

RealStore replay(const History& history, RealStore base = {});

/// `key-b64 SP label-text SP ciphertext-b64`
std::string entry_record(const GroundValue& key, const RealEntry& e);
/// `ck: SP category SP pub-b64 SP (principal=wrap-b64)* SP sig-b64`
std::string category_key_record(const CategoryKey& ck);
std::optional<std::pair<GroundValue, RealEntry>> parse_entry_record(std::string_view line);
std::optional<CategoryKey> parse_category_key_record(std::string_view line);

// --- Serialization ---------------------------------------------------------

/// Public half of a category key, plus the private half when unwrappable.
struct CategoryKeyMaterial {
  Bytes public_key;
  std::optional<Bytes> private_key;
};

/// Verified key for `cat` from `store`, or nullopt when absent or when no
/// member's public key in `ks` verifies its signature.
std::optional<CategoryKeyMaterial> fetch_category_key(const RealStore& store,
                                                      const Category& cat, const Keystore& ks,
                                                      const CryptoProvider& p);

/// Returns the verified stored key, or creates, wraps and signs a fresh one
/// (applying and appending a StoreCK to `out`). Throws CategoryKeyError when
/// creation is needed but no member's private key is owned.
CategoryKeyMaterial initialize_category_key(RealStore& store, const Category& cat,
                                            const Keystore& ks, const CryptoProvider& p,
                                            Rng& rng, History& out);

/// enc(v) || enc(key) || u64be(version)
Bytes encode_payload(const GroundValue& value, const GroundValue& key, std::uint64_t version);

/// Onion encryption, first canonical category innermost.
Bytes encrypt_for_formula(RealStore& store, const Formula& conf, ByteView plaintext,
                          const Keystore& ks, const CryptoProvider& p, Rng& rng, History& out);

/// One signature per category in canonical order.
std::vector<Bytes> sign_for_formula(RealStore& store, const Formula& integ, ByteView message,
                                    const Keystore& ks, const CryptoProvider& p, Rng& rng,
                                    History& out);

struct Serialized {
  Bytes ciphertext;
  History category_keys;  // StoreCK interactions in creation order
};

Serialized serialize(const RealStore& store, const Label& label, const GroundValue& value,
                     const GroundValue& key, std::uint64_t version, const Keystore& ks,
                     const CryptoProvider& p, Rng& rng);

struct Deserialized {
  GroundValue value;
  GroundValue key;
  std::uint64_t version = 0;
  friend bool operator==(const Deserialized&, const Deserialized&) = default;
};

/// Any failure yields nullopt. A null `type` accepts any ground type.
std::optional<Deserialized> deserialize(const RealStore& store, const Label& label,
                                        ByteView ciphertext, const TypePtr& type,
                                        const Keystore& ks, const CryptoProvider& p);

/// Removes up to `layers` onion layers with any key; meaningful only for
/// providers whose decryption ignores the key.
std::optional<Bytes> peel_without_keys(ByteView ciphertext, std::size_t layers,
                                       const CryptoProvider& p);

// --- Real semantics --------------------------------------------------------

using VersionMap = std::map<GroundValue, std::uint64_t>;

std::uint64_t increment(const VersionMap& v, const GroundValue& key);

/// Adversary policy, consulted before every low step.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual History next(const History& history, Rng& rng) = 0;
};

inline constexpr std::size_t kStrategyOutputCap = 4096;

class SkipStrategy final : public Strategy {
 public:
  History next(const History&, Rng&) override { return {}; }
};

class FunctionStrategy final : public Strategy {
 public:
  using Fn = std::function<History(const History&, Rng&)>;
  explicit FunctionStrategy(Fn fn) : fn_(std::move(fn)) {}
  History next(const History& h, Rng& rng) override { return fn_(h, rng); }

 private:
  Fn fn_;
};

struct RealState {
  Configuration config;
  History history;
  RealStore store;  // replay(history, base)
  RealStore base;
  VersionMap versions;
  Keystore keystore;
  Label store_level;
  const CryptoProvider* provider = nullptr;
  Rng rng{0};
  Rng adversary_rng{1};
  std::size_t high_budget = kDefaultHighBudget;

  void append(RealInteraction i);
};

RealState make_real_state(Configuration config, Keystore ks, Label store_level,
                          const CryptoProvider& p, std::uint64_t seed, RealStore base = {});

/// StoreBridge realizing the store/fetch rules over a RealState.
class RealBridge final : public StoreBridge {
 public:
  explicit RealBridge(RealState& state) : state_(state) {}
  void on_store(const GroundValue& key, const LabeledGround& lv) override;
  StoreEvent on_fetch(const GroundValue& key, const LabeledGround& fallback,
                      const TypePtr& type) override;

 private:
  RealState& state_;
};

/// One small step of the real semantics.
StoreEvent real_store_step(RealState& state);

/// Strategy interactions, then one low step. Returns the step's events.
std::vector<StoreEvent> real_low_step(RealState& state, Strategy& strategy);

/// Thrown when a program finishes before the requested number of low steps.
class LowStepShortfall : public Error {
 public:
  using Error::Error;
};

/// Exactly `j` real low steps from `initial`.
RealState step_meta(const Configuration& initial, Strategy& strategy, std::size_t j,
                    const Keystore& ks, const Label& store_level, const CryptoProvider& p,
                    std::uint64_t seed);

}  // namespace clio
