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
#include "clio/dclabel.hpp"

#include <algorithm>
#include <cctype>

namespace clio {

namespace {

constexpr std::string_view kOr = "∨";
constexpr std::string_view kAnd = "∧";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

const char* premise_name(Premise p) {
  switch (p) {
    case Premise::kLabelAboveCurrent: return "label: current label must flow to l";
    case Premise::kLabelBelowClearance: return "label: l must flow to clearance";
    case Premise::kUnlabelBelowClearance: return "unlabel: lcur ⊔ l must flow to clearance";
    case Premise::kToLabeledAboveCurrent: return "toLabeled: current label must flow to target";
    case Premise::kToLabeledBelowClearance: return "toLabeled: target must flow to clearance";
    case Premise::kResetTarget: return "reset: current label must flow to toLabeled target";
    case Premise::kStoreBelowStoreLevel: return "store: current label must flow to store level";
    case Premise::kStoreBelowValueLabel: return "store: current label must flow to value label";
    case Premise::kFetchAvailability: return "fetch: store availability must flow to default availability";
  }
  return "unknown";
}

// --- Principal -------------------------------------------------------------

bool Principal::valid_name(std::string_view name) {
  if (name.empty() || name == "True" || name == "False") return false;
  if (name.find(kOr) != std::string_view::npos || name.find(kAnd) != std::string_view::npos ||
      name.find("⟨") != std::string_view::npos || name.find("⟩") != std::string_view::npos) {
    return false;
  }
  for (char c : name) {
    if (is_space(c) || kReservedPrincipalChars.find(c) != std::string_view::npos) return false;
  }
  return true;
}

Principal::Principal(std::string name) : name_(std::move(name)) {
  if (!valid_name(name_)) throw Error("invalid principal name '" + name_ + "'");
}

// --- Category --------------------------------------------------------------

Category::Category(std::vector<Principal> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error("a category must have at least one member");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Category::Category(std::initializer_list<std::string_view> names)
    : Category([&] {
        std::vector<Principal> v;
        for (auto n : names) v.emplace_back(std::string(n));
        return v;
      }()) {}

bool Category::contains(const Principal& p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

bool Category::subset_of(const Category& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

std::string Category::text() const {
  std::string out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += kOr;
    out += members_[i].name();
  }
  return out;
}

std::strong_ordering operator<=>(const Category& a, const Category& b) {
  return a.text() <=> b.text();
}

// --- Formula ---------------------------------------------------------------

Formula Formula::False() {
  Formula f;
  f.is_false_ = true;
  return f;
}

Formula canonicalize(bool is_false, std::vector<Category> clauses) {
  if (is_false) return Formula::False();
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  std::vector<Category> kept;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < clauses.size() && !subsumed; ++j) {
      // clause j strictly inside clause i makes i redundant
      subsumed = j != i && clauses[j].subset_of(clauses[i]) && !(clauses[j] == clauses[i]);
    }
    if (!subsumed) kept.push_back(clauses[i]);
  }
  return Formula::of_canonical_unchecked(std::move(kept));
}

Formula Formula::of(std::vector<Category> clauses) { return canonicalize(false, std::move(clauses)); }

Formula Formula::of_canonical_unchecked(std::vector<Category> clauses) {
  Formula f;
  f.clauses_ = std::move(clauses);
  return f;
}

Formula Formula::conjunction_of(const std::vector<Principal>& principals) {
  std::vector<Category> cs;
  for (const auto& p : principals) cs.emplace_back(std::vector<Principal>{p});
  return of(std::move(cs));
}

std::string Formula::text() const {
  if (is_false_) return "False";
  if (clauses_.empty()) return "True";
  std::string out;
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (i) {
      out += ' ';
      out += kAnd;
      out += ' ';
    }
    out += clauses_[i].text();
  }
  return out;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.is_false_ != b.is_false_) return a.is_false_ <=> b.is_false_;
  return std::lexicographical_compare_three_way(a.clauses_.begin(), a.clauses_.end(),
                                                b.clauses_.begin(), b.clauses_.end());
}

bool entails(const Formula& f, const Formula& g) {
  if (f.is_false()) return true;
  if (g.is_false()) return false;
  for (const auto& d : g.clauses()) {
    bool covered = std::any_of(f.clauses().begin(), f.clauses().end(),
                               [&](const Category& c) { return c.subset_of(d); });
    if (!covered) return false;
  }
  return true;
}

Formula conjoin(const Formula& f, const Formula& g) {
  if (f.is_false() || g.is_false()) return Formula::False();
  std::vector<Category> cs = f.clauses();
  cs.insert(cs.end(), g.clauses().begin(), g.clauses().end());
  return Formula::of(std::move(cs));
}

Formula disjoin(const Formula& f, const Formula& g) {
  if (f.is_false()) return g;
  if (g.is_false()) return f;
  if (f.is_true() || g.is_true()) return Formula::True();
  std::vector<Category> cs;
  cs.reserve(f.clauses().size() * g.clauses().size());
  for (const auto& a : f.clauses()) {
    for (const auto& b : g.clauses()) {
      std::vector<Principal> merged = a.members();
      merged.insert(merged.end(), b.members().begin(), b.members().end());
      cs.emplace_back(std::move(merged));
    }
  }
  return Formula::of(std::move(cs));
}

bool component_flow(Component kind, const Formula& from, const Formula& to) {
  switch (kind) {
    case Component::kConf: return entails(to, from);
    case Component::kInteg:
    case Component::kAvail: return entails(from, to);
  }
  return false;
}

// --- Label -----------------------------------------------------------------

std::string Label::text() const {
  return conf_.text() + " | " + integ_.text() + " | " + avail_.text();
}

std::strong_ordering operator<=>(const Label& a, const Label& b) {
  if (auto c = a.conf_ <=> b.conf_; c != 0) return c;
  if (auto c = a.integ_ <=> b.integ_; c != 0) return c;
  return a.avail_ <=> b.avail_;
}

bool can_flow_to(const Label& from, const Label& to) {
  return component_flow(Component::kConf, from.conf(), to.conf()) &&
         component_flow(Component::kInteg, from.integ(), to.integ()) &&
         component_flow(Component::kAvail, from.avail(), to.avail());
}

Label join(const Label& a, const Label& b) {
  return Label(conjoin(a.conf(), b.conf()), disjoin(a.integ(), b.integ()),
               disjoin(a.avail(), b.avail()));
}

Label meet(const Label& a, const Label& b) {
  return Label(disjoin(a.conf(), b.conf()), conjoin(a.integ(), b.integ()),
               conjoin(a.avail(), b.avail()));
}

// --- Text ------------------------------------------------------------------

namespace {

class LabelLexer {
 public:
  explicit LabelLexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool eat(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  /// Matches a keyword only when it is not the prefix of a longer name.
  bool eat_word(std::string_view word) {
    skip_ws();
    std::size_t save = pos_;
    if (!eat(word)) return false;
    if (pos_ < s_.size() && !is_space(s_[pos_]) && s_[pos_] != '|' && s_[pos_] != ')' &&
        s_[pos_] != '>' && !s_.substr(pos_).starts_with("⟩")) {
      pos_ = save;
      return false;
    }
    return true;
  }
  bool eat_or() { return eat(kOr) || eat("\\/"); }
  bool eat_and() { return eat(kAnd) || eat("/\\"); }

  std::string name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size()) {
      std::string_view rest = s_.substr(pos_);
      if (is_space(s_[pos_]) || rest.starts_with(kOr) || rest.starts_with(kAnd) ||
          rest.starts_with("\\/") || rest.starts_with("/\\") ||
          kReservedPrincipalChars.find(s_[pos_]) != std::string_view::npos ||
          rest.starts_with("⟨") || rest.starts_with("⟩")) {
        break;
      }
      ++pos_;
    }
    if (start == pos_) fail("expected a principal name");
    return std::string(s_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, 1, column());
  }

  std::size_t column() const {
    // count code points rather than bytes
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if ((static_cast<unsigned char>(s_[i]) & 0xC0) != 0x80) ++col;
    }
    return col;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

Category lex_category(LabelLexer& lx) {
  std::vector<Principal> ps;
  do {
    ps.emplace_back(lx.name());
  } while (lx.eat_or());
  return Category(std::move(ps));
}

Formula lex_formula(LabelLexer& lx) {
  if (lx.eat_word("True")) return Formula::True();
  if (lx.eat_word("False")) return Formula::False();
  std::vector<Category> cs;
  do {
    bool paren = lx.eat("(");
    cs.push_back(lex_category(lx));
    if (paren && !lx.eat(")")) lx.fail("expected ')'");
  } while (lx.eat_and());
  return Formula::of(std::move(cs));
}

}  // namespace

Label parse_label(std::string_view text) {
  LabelLexer lx(text);
  Formula c = lex_formula(lx);
  if (!lx.eat("|")) lx.fail("expected '|' after confidentiality component");
  Formula i = lex_formula(lx);
  if (!lx.eat("|")) lx.fail("expected '|' after integrity component");
  Formula a = lex_formula(lx);
  if (!lx.at_end()) lx.fail("unexpected trailing input");
  return Label(std::move(c), std::move(i), std::move(a));
}

Formula parse_formula(std::string_view text) {
  LabelLexer lx(text);
  Formula f = lex_formula(lx);
  if (!lx.at_end()) lx.fail("unexpected trailing input");
  return f;
}

Category parse_category(std::string_view text) {
  LabelLexer lx(text);
  Category c = lex_category(lx);
  if (!lx.at_end()) lx.fail("unexpected trailing input");
  return c;
}

std::string format_label(const Label& l) { return l.text(); }

}  // namespace clio
