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
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "clio/error.hpp"

namespace clio {

/// A principal is identified by its well-known name.
class Principal {
 public:
  explicit Principal(std::string name);

  const std::string& name() const { return name_; }

  static bool valid_name(std::string_view name);

  friend auto operator<=>(const Principal&, const Principal&) = default;
  friend bool operator==(const Principal&, const Principal&) = default;

 private:
  std::string name_;
};

/// A disjunction of principals. Members are kept sorted and unique.
class Category {
 public:
  explicit Category(std::vector<Principal> members);
  Category(std::initializer_list<std::string_view> names);

  const std::vector<Principal>& members() const { return members_; }
  bool contains(const Principal& p) const;
  /// True iff every member of *this is a member of `other`.
  bool subset_of(const Category& other) const;
  /// Members joined by "∨" in sorted order.
  std::string text() const;

  friend bool operator==(const Category&, const Category&) = default;
  friend std::strong_ordering operator<=>(const Category& a, const Category& b);

 private:
  std::vector<Principal> members_;
};

/// A monotone CNF formula over principals: either False, or a conjunction of
/// categories. The empty conjunction is True.
///
/// Formulas are always held in canonical form: no clause subsumes another and
/// clauses are sorted by their canonical text. Syntactic equality on canonical
/// formulas is what `==` compares.
class Formula {
 public:
  Formula() = default;  // True

  static Formula True() { return Formula(); }
  static Formula False();
  static Formula of(std::vector<Category> clauses);
  /// Conjunction of singleton categories, one per principal.
  static Formula conjunction_of(const std::vector<Principal>& principals);

  bool is_false() const { return is_false_; }
  bool is_true() const { return !is_false_ && clauses_.empty(); }
  const std::vector<Category>& clauses() const { return clauses_; }

  std::string text() const;

  friend bool operator==(const Formula&, const Formula&) = default;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
  friend Formula canonicalize(bool is_false, std::vector<Category> clauses);

 private:
  static Formula of_canonical_unchecked(std::vector<Category> clauses);

  bool is_false_ = false;
  std::vector<Category> clauses_;
};

/// Removes subsumed clauses and sorts; idempotent and semantics-preserving.
Formula canonicalize(bool is_false, std::vector<Category> clauses);

/// f ⇒ g for monotone CNF formulas.
bool entails(const Formula& f, const Formula& g);

Formula conjoin(const Formula& f, const Formula& g);
Formula disjoin(const Formula& f, const Formula& g);

enum class Component { kConf, kInteg, kAvail };

bool component_flow(Component kind, const Formula& from, const Formula& to);

/// A DC label ⟨confidentiality | integrity | availability⟩.
class Label {
 public:
  Label() = default;  // bottom: ⟨True | False | False⟩
  Label(Formula conf, Formula integ, Formula avail)
      : conf_(std::move(conf)), integ_(std::move(integ)), avail_(std::move(avail)) {}

  static Label bottom() { return Label(); }
  static Label top() { return Label(Formula::False(), Formula::True(), Formula::True()); }

  const Formula& conf() const { return conf_; }
  const Formula& integ() const { return integ_; }
  const Formula& avail() const { return avail_; }

  std::string text() const;

  friend bool operator==(const Label&, const Label&) = default;
  friend std::strong_ordering operator<=>(const Label& a, const Label& b);

 private:
  Formula conf_;
  Formula integ_ = Formula::False();
  Formula avail_ = Formula::False();
};

bool can_flow_to(const Label& from, const Label& to);
Label join(const Label& a, const Label& b);
Label meet(const Label& a, const Label& b);

/// Parses `<conf> | <integ> | <avail>`; each component is `True`, `False`, or
/// `cat (∧ cat)*` with `cat = p (∨ p)*`. ASCII `\/` and `/\` are accepted.
Label parse_label(std::string_view text);
Formula parse_formula(std::string_view text);
Category parse_category(std::string_view text);
std::string format_label(const Label& l);

/// Characters that may never appear in a principal name.
inline constexpr std::string_view kReservedPrincipalChars = "|,()<>\\/[]{};=\"'";

}  // namespace clio

template <>
struct std::hash<clio::Label> {
  std::size_t operator()(const clio::Label& l) const noexcept {
    return std::hash<std::string>{}(l.text());
  }
};
