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

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "clio/dclabel.hpp"

namespace clio {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// --- Types -----------------------------------------------------------------

class Type;
using TypePtr = std::shared_ptr<const Type>;

/// Unit, Bool, Int, Text, Label, (τ, τ), τ → τ, Labeled τ, CLIO τ.
class Type {
 public:
  enum class Kind { kUnit, kBool, kInt, kText, kLabel, kPair, kFun, kLabeled, kClio };

  static TypePtr unit();
  static TypePtr boolean();
  static TypePtr integer();
  static TypePtr text();
  static TypePtr label();
  static TypePtr pair(TypePtr a, TypePtr b);
  static TypePtr fun(TypePtr a, TypePtr b);
  /// Throws TypeError unless `payload` is ground.
  static TypePtr labeled(TypePtr payload);
  static TypePtr clio(TypePtr result);

  Kind kind() const { return kind_; }
  const TypePtr& first() const { return a_; }
  const TypePtr& second() const { return b_; }

  bool is_ground() const;
  std::string str() const;

  friend bool operator==(const Type& x, const Type& y);

 private:
  Type(Kind k, TypePtr a, TypePtr b) : kind_(k), a_(std::move(a)), b_(std::move(b)) {}

  Kind kind_;
  TypePtr a_;
  TypePtr b_;
};

bool same_type(const TypePtr& a, const TypePtr& b);

// --- Ground values ---------------------------------------------------------

class GroundValue;

struct Unit {
  friend auto operator<=>(const Unit&, const Unit&) = default;
};

struct GroundPair {
  std::shared_ptr<const GroundValue> first;
  std::shared_ptr<const GroundValue> second;
};

/// A serializable value: no functions and no computations.
class GroundValue {
 public:
  using Repr = std::variant<Unit, bool, std::int64_t, std::string, Label, GroundPair>;

  GroundValue() : repr_(Unit{}) {}
  static GroundValue unit() { return GroundValue(); }
  static GroundValue boolean(bool b) { return GroundValue(Repr(b)); }
  static GroundValue integer(std::int64_t i) { return GroundValue(Repr(i)); }
  static GroundValue text(std::string s) { return GroundValue(Repr(std::move(s))); }
  static GroundValue label(Label l) { return GroundValue(Repr(std::move(l))); }
  static GroundValue pair(GroundValue a, GroundValue b);

  const Repr& repr() const { return repr_; }
  bool is_unit() const { return std::holds_alternative<Unit>(repr_); }
  bool is_bool() const { return std::holds_alternative<bool>(repr_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(repr_); }
  bool is_text() const { return std::holds_alternative<std::string>(repr_); }
  bool is_label() const { return std::holds_alternative<Label>(repr_); }
  bool is_pair() const { return std::holds_alternative<GroundPair>(repr_); }

  bool as_bool() const { return std::get<bool>(repr_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(repr_); }
  const std::string& as_text() const { return std::get<std::string>(repr_); }
  const Label& as_label() const { return std::get<Label>(repr_); }
  const GroundValue& first() const { return *std::get<GroundPair>(repr_).first; }
  const GroundValue& second() const { return *std::get<GroundPair>(repr_).second; }

  /// Source-syntax rendering, e.g. `("x", (1, true))`.
  std::string text() const;

  friend bool operator==(const GroundValue& a, const GroundValue& b);
  friend std::strong_ordering operator<=>(const GroundValue& a, const GroundValue& b);

 private:
  explicit GroundValue(Repr r) : repr_(std::move(r)) {}
  Repr repr_;
};

TypePtr type_of_ground(const GroundValue& v);

/// A labeled ground value ⟨l⟩v.
struct LabeledGround {
  Label label;
  GroundValue value;
  friend bool operator==(const LabeledGround&, const LabeledGround&) = default;
};

// --- Canonical byte encoding ----------------------------------------------
//
// Tag-length-value: one tag byte, an 8-byte big-endian length, then the body.
//   0x00 unit (empty)   0x01 bool (1 byte)   0x02 int (8 bytes, two's complement BE)
//   0x03 text (UTF-8)   0x04 label (canonical label text)
//   0x05 pair (encoding of first ++ encoding of second)

namespace ground_tag {
inline constexpr std::uint8_t kUnit = 0x00;
inline constexpr std::uint8_t kBool = 0x01;
inline constexpr std::uint8_t kInt = 0x02;
inline constexpr std::uint8_t kText = 0x03;
inline constexpr std::uint8_t kLabel = 0x04;
inline constexpr std::uint8_t kPair = 0x05;
}  // namespace ground_tag

void append_u64be(Bytes& out, std::uint64_t v);
std::optional<std::uint64_t> read_u64be(ByteView in, std::size_t& pos);

void encode_ground(const GroundValue& v, Bytes& out);
Bytes encode_ground(const GroundValue& v);
/// Decodes one value starting at `pos`, advancing it. Returns nullopt on any
/// malformation.
std::optional<GroundValue> decode_ground(ByteView in, std::size_t& pos);
/// Decodes exactly one value spanning all of `in`.
std::optional<GroundValue> decode_ground_exact(ByteView in);

}  // namespace clio
