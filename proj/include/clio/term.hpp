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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "clio/ground.hpp"

namespace clio {

class Term;
using TermPtr = std::shared_ptr<const Term>;

enum class BinOp { kAdd, kSub, kMul, kEq, kLt, kConcat, kAnd, kOr };

const char* binop_symbol(BinOp op);

namespace node {
struct Var { std::string name; };
/// `param_type` is null for unannotated lambdas (checked, never synthesized).
struct Lam { std::string param; TypePtr param_type; TermPtr body; };
struct App { TermPtr fn; TermPtr arg; };
struct Fix { TermPtr fn; };
struct If { TermPtr cond; TermPtr then_branch; TermPtr else_branch; };
struct Pair { TermPtr first; TermPtr second; };
struct Fst { TermPtr pair; };
struct Snd { TermPtr pair; };
struct Op { BinOp op; TermPtr lhs; TermPtr rhs; };
struct Lit { GroundValue value; };
/// ⟨l⟩v: produced by reduction, never source syntax.
struct Labeled { Label label; GroundValue value; };
struct Return { TermPtr value; };
struct Bind { TermPtr computation; TermPtr continuation; };
struct LabelOp { TermPtr label; TermPtr value; };
struct Unlabel { TermPtr labeled; };
struct GetLabel {};
struct GetClearance {};
struct ToLabeled { TermPtr label; TermPtr computation; };
struct Store { TermPtr key; TermPtr value; };
struct Fetch { TypePtr type; TermPtr key; TermPtr fallback; };
/// LIO t: a finished computation, never source syntax.
struct Lio { TermPtr value; };
/// Compartment opened by toLabeled, holding the saved label/clearance and
/// the target label; never source syntax.
struct Reset { Label saved_label; Label saved_clearance; Label target; TermPtr body; };
}  // namespace node

/// Immutable AST node of the term language.
class Term {
 public:
  using Node = std::variant<node::Var, node::Lam, node::App, node::Fix, node::If, node::Pair,
                            node::Fst, node::Snd, node::Op, node::Lit, node::Labeled,
                            node::Return, node::Bind, node::LabelOp, node::Unlabel,
                            node::GetLabel, node::GetClearance, node::ToLabeled, node::Store,
                            node::Fetch, node::Lio, node::Reset>;

  explicit Term(Node n) : node_(std::move(n)) {}

  const Node& node() const { return node_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node_);
  }
  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(node_);
  }

 private:
  Node node_;
};

template <typename T>
TermPtr make(T n) {
  return std::make_shared<const Term>(Term::Node(std::move(n)));
}

/// Constructors mirroring the concrete syntax, used heavily by tests.
namespace t {
TermPtr var(std::string name);
TermPtr lam(std::string param, TypePtr type, TermPtr body);
TermPtr lam(std::string param, TermPtr body);
TermPtr app(TermPtr f, TermPtr a);
TermPtr fix(TermPtr f);
TermPtr if_(TermPtr c, TermPtr a, TermPtr b);
TermPtr pair(TermPtr a, TermPtr b);
TermPtr fst(TermPtr p);
TermPtr snd(TermPtr p);
TermPtr op(BinOp op, TermPtr a, TermPtr b);
TermPtr lit(GroundValue v);
TermPtr unit();
TermPtr boolean(bool b);
TermPtr integer(std::int64_t i);
TermPtr text(std::string s);
TermPtr label(Label l);
TermPtr labeled(Label l, GroundValue v);
TermPtr ret(TermPtr v);
TermPtr bind(TermPtr m, TermPtr k);
TermPtr label_op(TermPtr l, TermPtr v);
TermPtr unlabel(TermPtr lv);
TermPtr get_label();
TermPtr get_clearance();
TermPtr to_labeled(TermPtr l, TermPtr m);
TermPtr store(TermPtr k, TermPtr v);
TermPtr fetch(TypePtr type, TermPtr k, TermPtr d);
TermPtr lio(TermPtr v);
TermPtr reset(Label saved_label, Label saved_clearance, Label target, TermPtr body);
}  // namespace t

bool structurally_equal(const TermPtr& a, const TermPtr& b);

/// Structural equality with a custom comparison for labeled values.
using LabeledEq = std::function<bool(const node::Labeled&, const node::Labeled&)>;
bool structurally_equal(const TermPtr& a, const TermPtr& b, const LabeledEq& labeled_eq);

/// Structural equality where `hook` may decide any pair of nodes first;
/// nullopt falls through to the structural comparison.
using NodeEq = std::function<std::optional<bool>(const Term&, const Term&)>;
bool structurally_equal_with(const TermPtr& a, const TermPtr& b, const NodeEq& hook);

/// Values of the call-by-name calculus: literals, lambdas, pairs, labeled
/// values, and finished computations.
bool is_value(const Term& t);

/// True iff the term is a literal ground value (or a pair of such).
bool is_ground(const Term& t);

/// The ground value denoted by `t` when `is_ground(t)`.
std::optional<GroundValue> as_ground(const Term& t);

/// Capture-naive substitution; `replacement` must be closed.
TermPtr substitute(const TermPtr& body, const std::string& name, const TermPtr& replacement);

bool contains_internal_forms(const TermPtr& t);

// --- Concrete syntax -------------------------------------------------------

struct ParseOptions {
  /// Accept `labeled ⟨l⟩ v` literals (used for game inputs, never programs).
  bool allow_labeled_literals = false;
};

TermPtr parse_term(std::string_view source, ParseOptions options = {});
TypePtr parse_type(std::string_view source);

/// Renders a term in concrete syntax; `parse_term(pretty(t))` rebuilds an
/// equal tree for every parsed AST. Internal forms render as pseudo-syntax.
std::string pretty(const TermPtr& t);

// --- Typing ----------------------------------------------------------------

using TypeEnv = std::map<std::string, TypePtr>;

/// Returns the unique type of `t` under `env` or throws TypeError naming the
/// offending subterm.
TypePtr typecheck(const TermPtr& t, const TypeEnv& env = {});

}  // namespace clio
