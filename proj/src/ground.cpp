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
#include "clio/ground.hpp"

#include <cstdio>

namespace clio {

// --- Type ------------------------------------------------------------------

TypePtr Type::unit() {
  static const TypePtr t(new Type(Kind::kUnit, nullptr, nullptr));
  return t;
}
TypePtr Type::boolean() {
  static const TypePtr t(new Type(Kind::kBool, nullptr, nullptr));
  return t;
}
TypePtr Type::integer() {
  static const TypePtr t(new Type(Kind::kInt, nullptr, nullptr));
  return t;
}
TypePtr Type::text() {
  static const TypePtr t(new Type(Kind::kText, nullptr, nullptr));
  return t;
}
TypePtr Type::label() {
  static const TypePtr t(new Type(Kind::kLabel, nullptr, nullptr));
  return t;
}
TypePtr Type::pair(TypePtr a, TypePtr b) {
  return TypePtr(new Type(Kind::kPair, std::move(a), std::move(b)));
}
TypePtr Type::fun(TypePtr a, TypePtr b) {
  return TypePtr(new Type(Kind::kFun, std::move(a), std::move(b)));
}
TypePtr Type::labeled(TypePtr payload) {
  if (!payload->is_ground()) {
    throw TypeError("labeled values may only hold ground types, got " + payload->str());
  }
  return TypePtr(new Type(Kind::kLabeled, std::move(payload), nullptr));
}
TypePtr Type::clio(TypePtr result) {
  return TypePtr(new Type(Kind::kClio, std::move(result), nullptr));
}

bool Type::is_ground() const {
  switch (kind_) {
    case Kind::kUnit:
    case Kind::kBool:
    case Kind::kInt:
    case Kind::kText:
    case Kind::kLabel: return true;
    case Kind::kPair: return a_->is_ground() && b_->is_ground();
    default: return false;
  }
}

std::string Type::str() const {
  auto atom = [](const TypePtr& t) {
    return t->kind() == Kind::kFun ? "(" + t->str() + ")" : t->str();
  };
  switch (kind_) {
    case Kind::kUnit: return "Unit";
    case Kind::kBool: return "Bool";
    case Kind::kInt: return "Int";
    case Kind::kText: return "Text";
    case Kind::kLabel: return "Label";
    case Kind::kPair: return "(" + a_->str() + ", " + b_->str() + ")";
    case Kind::kFun: return atom(a_) + " -> " + b_->str();
    case Kind::kLabeled: return "Labeled " + atom(a_);
    case Kind::kClio: return "CLIO " + atom(a_);
  }
  return "?";
}

bool operator==(const Type& x, const Type& y) {
  if (x.kind_ != y.kind_) return false;
  if (x.a_ && !(*x.a_ == *y.a_)) return false;
  if (x.b_ && !(*x.b_ == *y.b_)) return false;
  return true;
}

bool same_type(const TypePtr& a, const TypePtr& b) { return *a == *b; }

// --- GroundValue -----------------------------------------------------------

GroundValue GroundValue::pair(GroundValue a, GroundValue b) {
  return GroundValue(Repr(GroundPair{std::make_shared<const GroundValue>(std::move(a)),
                                     std::make_shared<const GroundValue>(std::move(b))}));
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

}  // namespace

std::string GroundValue::text() const {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Unit>) {
          return "()";
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return quote(x);
        } else if constexpr (std::is_same_v<T, Label>) {
          return "⟨" + x.text() + "⟩";
        } else {
          return "(" + x.first->text() + ", " + x.second->text() + ")";
        }
      },
      repr_);
}

std::strong_ordering operator<=>(const GroundValue& a, const GroundValue& b) {
  if (a.repr_.index() != b.repr_.index()) return a.repr_.index() <=> b.repr_.index();
  return std::visit(
      [&](const auto& x) -> std::strong_ordering {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.repr_);
        if constexpr (std::is_same_v<T, GroundPair>) {
          if (auto c = *x.first <=> *y.first; c != 0) return c;
          return *x.second <=> *y.second;
        } else {
          return x <=> y;
        }
      },
      a.repr_);
}

bool operator==(const GroundValue& a, const GroundValue& b) { return (a <=> b) == 0; }

TypePtr type_of_ground(const GroundValue& v) {
  return std::visit(
      [](const auto& x) -> TypePtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Unit>) return Type::unit();
        else if constexpr (std::is_same_v<T, bool>) return Type::boolean();
        else if constexpr (std::is_same_v<T, std::int64_t>) return Type::integer();
        else if constexpr (std::is_same_v<T, std::string>) return Type::text();
        else if constexpr (std::is_same_v<T, Label>) return Type::label();
        else return Type::pair(type_of_ground(*x.first), type_of_ground(*x.second));
      },
      v.repr());
}

// --- Encoding --------------------------------------------------------------

void append_u64be(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::optional<std::uint64_t> read_u64be(ByteView in, std::size_t& pos) {
  if (in.size() < pos || in.size() - pos < 8) return std::nullopt;
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | in[pos + i];
  pos += 8;
  return v;
}

namespace {

void put_tlv(Bytes& out, std::uint8_t tag, ByteView body) {
  out.push_back(tag);
  append_u64be(out, body.size());
  out.insert(out.end(), body.begin(), body.end());
}

ByteView as_bytes(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

void encode_ground(const GroundValue& v, Bytes& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Unit>) {
          put_tlv(out, ground_tag::kUnit, {});
        } else if constexpr (std::is_same_v<T, bool>) {
          const std::uint8_t b = x ? 1 : 0;
          put_tlv(out, ground_tag::kBool, ByteView(&b, 1));
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          Bytes body;
          append_u64be(body, static_cast<std::uint64_t>(x));
          put_tlv(out, ground_tag::kInt, body);
        } else if constexpr (std::is_same_v<T, std::string>) {
          put_tlv(out, ground_tag::kText, as_bytes(x));
        } else if constexpr (std::is_same_v<T, Label>) {
          put_tlv(out, ground_tag::kLabel, as_bytes(x.text()));
        } else {
          Bytes body;
          encode_ground(*x.first, body);
          encode_ground(*x.second, body);
          put_tlv(out, ground_tag::kPair, body);
        }
      },
      v.repr());
}

Bytes encode_ground(const GroundValue& v) {
  Bytes out;
  encode_ground(v, out);
  return out;
}

std::optional<GroundValue> decode_ground(ByteView in, std::size_t& pos) {
  if (pos >= in.size()) return std::nullopt;
  const std::uint8_t tag = in[pos++];
  auto len = read_u64be(in, pos);
  if (!len || *len > in.size() - pos) return std::nullopt;
  ByteView body = in.subspan(pos, *len);
  pos += *len;
  switch (tag) {
    case ground_tag::kUnit:
      if (!body.empty()) return std::nullopt;
      return GroundValue::unit();
    case ground_tag::kBool:
      if (body.size() != 1 || body[0] > 1) return std::nullopt;
      return GroundValue::boolean(body[0] == 1);
    case ground_tag::kInt: {
      if (body.size() != 8) return std::nullopt;
      std::size_t p = 0;
      return GroundValue::integer(static_cast<std::int64_t>(*read_u64be(body, p)));
    }
    case ground_tag::kText:
      return GroundValue::text(std::string(body.begin(), body.end()));
    case ground_tag::kLabel: {
      try {
        std::string s(body.begin(), body.end());
        Label l = parse_label(s);
        if (l.text() != s) return std::nullopt;  // only canonical text is valid
        return GroundValue::label(std::move(l));
      } catch (const Error&) {
        return std::nullopt;
      }
    }
    case ground_tag::kPair: {
      std::size_t p = 0;
      auto a = decode_ground(body, p);
      if (!a) return std::nullopt;
      auto b = decode_ground(body, p);
      if (!b || p != body.size()) return std::nullopt;
      return GroundValue::pair(std::move(*a), std::move(*b));
    }
    default: return std::nullopt;
  }
}

std::optional<GroundValue> decode_ground_exact(ByteView in) {
  std::size_t pos = 0;
  auto v = decode_ground(in, pos);
  if (!v || pos != in.size()) return std::nullopt;
  return v;
}

}  // namespace clio
