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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "clio/ground.hpp"

namespace clio {

Bytes sha256(ByteView data);

/// Deterministic generator: block i is SHA-256(key || i). Identical seeds give
/// identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  explicit Rng(ByteView seed);

  Bytes bytes(std::size_t n);
  std::uint64_t next_u64();
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t uniform(std::uint64_t bound);
  /// Uniform in [0, 1).
  double unit();
  /// Independent child stream named by `label`; does not advance this one.
  Rng fork(std::string_view label) const;

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 32> block_{};
  std::size_t used_ = 32;
};

struct KeyPair {
  Bytes public_key;
  std::optional<Bytes> private_key;  // absent: only the public half is known
  friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

/// Π = (Gen, Enc, Dec, Sign, Verify). Encryption and signing use separate
/// halves of each key pair.
class CryptoProvider {
 public:
  virtual ~CryptoProvider() = default;
  virtual std::string name() const = 0;
  virtual KeyPair gen(Rng& rng) const = 0;
  virtual Bytes enc(ByteView public_key, ByteView plaintext, Rng& rng) const = 0;
  virtual std::optional<Bytes> dec(ByteView private_key, ByteView ciphertext) const = 0;
  virtual Bytes sign(ByteView private_key, ByteView message, Rng& rng) const = 0;
  virtual bool verify(ByteView public_key, ByteView message, ByteView signature) const = 0;
  /// |enc(pk, m)| as a function of |m| alone.
  virtual std::size_t ciphertext_length(std::size_t plaintext_length) const = 0;
};

/// X25519 + HKDF-SHA256 + AES-256-CTR + HMAC-SHA256 (encrypt-then-MAC) and
/// Ed25519 signatures.
const CryptoProvider& real_provider();
/// Insecure SHA-256 construction with stable outputs, for golden files.
const CryptoProvider& testvec_provider();
/// Tags plaintexts without hiding them; a deliberately broken positive control.
const CryptoProvider& identity_provider();

/// "real", "testvec" or "identity"; throws Error otherwise.
const CryptoProvider& provider_by_name(std::string_view name);

std::size_t ciphertext_length_profile(const CryptoProvider& p, std::size_t plaintext_length);

}  // namespace clio
