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
#include "clio/term.hpp"

namespace clio {

const char* binop_symbol(BinOp op) {
  switch (op) {
    case BinOp::kAdd: return "+";
    case BinOp::kSub: return "-";
    case BinOp::kMul: return "*";
    case BinOp::kEq: return "==";
    case BinOp::kLt: return "<";
    case BinOp::kConcat: return "++";
    case BinOp::kAnd: return "&&";
    case BinOp::kOr: return "||";
  }
  return "?";
}

namespace t {
TermPtr var(std::string name) { return make(node::Var{std::move(name)}); }
TermPtr lam(std::string param, TypePtr type, TermPtr body) {
  return make(node::Lam{std::move(param), std::move(type), std::move(body)});
}
TermPtr lam(std::string param, TermPtr body) {
  return make(node::Lam{std::move(param), nullptr, std::move(body)});
}
TermPtr app(TermPtr f, TermPtr a) { return make(node::App{std::move(f), std::move(a)}); }
TermPtr fix(TermPtr f) { return make(node::Fix{std::move(f)}); }
TermPtr if_(TermPtr c, TermPtr a, TermPtr b) {
  return make(node::If{std::move(c), std::move(a), std::move(b)});
}
TermPtr pair(TermPtr a, TermPtr b) {
  if (auto x = as_ground(*a)) {
    if (auto y = as_ground(*b)) return lit(GroundValue::pair(std::move(*x), std::move(*y)));
  }
  return make(node::Pair{std::move(a), std::move(b)});
}
TermPtr fst(TermPtr p) { return make(node::Fst{std::move(p)}); }
TermPtr snd(TermPtr p) { return make(node::Snd{std::move(p)}); }
TermPtr op(BinOp o, TermPtr a, TermPtr b) { return make(node::Op{o, std::move(a), std::move(b)}); }
TermPtr lit(GroundValue v) { return make(node::Lit{std::move(v)}); }
TermPtr unit() { return lit(GroundValue::unit()); }
TermPtr boolean(bool b) { return lit(GroundValue::boolean(b)); }
TermPtr integer(std::int64_t i) { return lit(GroundValue::integer(i)); }
TermPtr text(std::string s) { return lit(GroundValue::text(std::move(s))); }
TermPtr label(Label l) { return lit(GroundValue::label(std::move(l))); }
TermPtr labeled(Label l, GroundValue v) { return make(node::Labeled{std::move(l), std::move(v)}); }
TermPtr ret(TermPtr v) { return make(node::Return{std::move(v)}); }
TermPtr bind(TermPtr m, TermPtr k) { return make(node::Bind{std::move(m), std::move(k)}); }
TermPtr label_op(TermPtr l, TermPtr v) { return make(node::LabelOp{std::move(l), std::move(v)}); }
TermPtr unlabel(TermPtr lv) { return make(node::Unlabel{std::move(lv)}); }
TermPtr get_label() { return make(node::GetLabel{}); }
TermPtr get_clearance() { return make(node::GetClearance{}); }
TermPtr to_labeled(TermPtr l, TermPtr m) { return make(node::ToLabeled{std::move(l), std::move(m)}); }
TermPtr store(TermPtr k, TermPtr v) { return make(node::Store{std::move(k), std::move(v)}); }
TermPtr fetch(TypePtr type, TermPtr k, TermPtr d) {
  return make(node::Fetch{std::move(type), std::move(k), std::move(d)});
}
TermPtr lio(TermPtr v) { return make(node::Lio{std::move(v)}); }
TermPtr reset(Label saved_label, Label saved_clearance, Label target, TermPtr body) {
  return make(node::Reset{std::move(saved_label), std::move(saved_clearance), std::move(target),
                          std::move(body)});
}
}  // namespace t

namespace {

bool types_equal(const TypePtr& a, const TypePtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

}  // namespace

bool structurally_equal_with(const TermPtr& a, const TermPtr& b, const NodeEq& hook) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (hook) {
    if (auto r = hook(*a, *b)) return *r;
  }
  if (a->node().index() != b->node().index()) return false;
  auto eq = [&](const TermPtr& p, const TermPtr& q) { return structurally_equal_with(p, q, hook); };
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->node());
        using namespace node;
        if constexpr (std::is_same_v<T, Var>) return x.name == y.name;
        else if constexpr (std::is_same_v<T, Lam>)
          return x.param == y.param && types_equal(x.param_type, y.param_type) &&
                 eq(x.body, y.body);
        else if constexpr (std::is_same_v<T, App>)
          return eq(x.fn, y.fn) && eq(x.arg, y.arg);
        else if constexpr (std::is_same_v<T, Fix>) return eq(x.fn, y.fn);
        else if constexpr (std::is_same_v<T, If>)
          return eq(x.cond, y.cond) &&
                 eq(x.then_branch, y.then_branch) &&
                 eq(x.else_branch, y.else_branch);
        else if constexpr (std::is_same_v<T, Pair>)
          return eq(x.first, y.first) && eq(x.second, y.second);
        else if constexpr (std::is_same_v<T, Fst> || std::is_same_v<T, Snd>)
          return eq(x.pair, y.pair);
        else if constexpr (std::is_same_v<T, Op>)
          return x.op == y.op && eq(x.lhs, y.lhs) &&
                 eq(x.rhs, y.rhs);
        else if constexpr (std::is_same_v<T, Lit>) return x.value == y.value;
        else if constexpr (std::is_same_v<T, Labeled>)
          return x.label == y.label && x.value == y.value;
        else if constexpr (std::is_same_v<T, Return>) return eq(x.value, y.value);
        else if constexpr (std::is_same_v<T, Bind>)
          return eq(x.computation, y.computation) &&
                 eq(x.continuation, y.continuation);
        else if constexpr (std::is_same_v<T, LabelOp>)
          return eq(x.label, y.label) && eq(x.value, y.value);
        else if constexpr (std::is_same_v<T, Unlabel>)
          return eq(x.labeled, y.labeled);
        else if constexpr (std::is_same_v<T, GetLabel> || std::is_same_v<T, GetClearance>)
          return true;
        else if constexpr (std::is_same_v<T, ToLabeled>)
          return eq(x.label, y.label) &&
                 eq(x.computation, y.computation);
        else if constexpr (std::is_same_v<T, Store>)
          return eq(x.key, y.key) && eq(x.value, y.value);
        else if constexpr (std::is_same_v<T, Fetch>)
          return types_equal(x.type, y.type) && eq(x.key, y.key) &&
                 eq(x.fallback, y.fallback);
        else if constexpr (std::is_same_v<T, Lio>) return eq(x.value, y.value);
        else
          return x.saved_label == y.saved_label && x.saved_clearance == y.saved_clearance &&
                 x.target == y.target && eq(x.body, y.body);
      },
      a->node());
}

bool structurally_equal(const TermPtr& a, const TermPtr& b, const LabeledEq& labeled_eq) {
  if (!labeled_eq) return structurally_equal_with(a, b, {});
  return structurally_equal_with(a, b, [&](const Term& x, const Term& y) -> std::optional<bool> {
    auto lx = x.as<node::Labeled>();
    auto ly = y.as<node::Labeled>();
    if (lx && ly) return labeled_eq(*lx, *ly);
    return std::nullopt;
  });
}

bool structurally_equal(const TermPtr& a, const TermPtr& b) { return structurally_equal_with(a, b, {}); }

bool is_value(const Term& t) {
  return t.is<node::Lit>() || t.is<node::Lam>() || t.is<node::Pair>() ||
         t.is<node::Labeled>() || t.is<node::Lio>();
}

bool is_ground(const Term& t) {
  if (t.is<node::Lit>()) return true;
  if (auto p = t.as<node::Pair>()) return is_ground(*p->first) && is_ground(*p->second);
  return false;
}

std::optional<GroundValue> as_ground(const Term& t) {
  if (auto l = t.as<node::Lit>()) return l->value;
  if (auto p = t.as<node::Pair>()) {
    auto a = as_ground(*p->first);
    if (!a) return std::nullopt;
    auto b = as_ground(*p->second);
    if (!b) return std::nullopt;
    return GroundValue::pair(std::move(*a), std::move(*b));
  }
  return std::nullopt;
}

TermPtr substitute(const TermPtr& body, const std::string& name, const TermPtr& r) {
  auto go = [&](const TermPtr& x) { return substitute(x, name, r); };
  return std::visit(
      [&](const auto& x) -> TermPtr {
        using T = std::decay_t<decltype(x)>;
        using namespace node;
        if constexpr (std::is_same_v<T, Var>) return x.name == name ? r : body;
        else if constexpr (std::is_same_v<T, Lam>)
          return x.param == name ? body : make(Lam{x.param, x.param_type, go(x.body)});
        else if constexpr (std::is_same_v<T, App>) return make(App{go(x.fn), go(x.arg)});
        else if constexpr (std::is_same_v<T, Fix>) return make(Fix{go(x.fn)});
        else if constexpr (std::is_same_v<T, If>)
          return make(If{go(x.cond), go(x.then_branch), go(x.else_branch)});
        else if constexpr (std::is_same_v<T, Pair>) return make(Pair{go(x.first), go(x.second)});
        else if constexpr (std::is_same_v<T, Fst>) return make(Fst{go(x.pair)});
        else if constexpr (std::is_same_v<T, Snd>) return make(Snd{go(x.pair)});
        else if constexpr (std::is_same_v<T, Op>) return make(Op{x.op, go(x.lhs), go(x.rhs)});
        else if constexpr (std::is_same_v<T, Lit> || std::is_same_v<T, Labeled> ||
                           std::is_same_v<T, GetLabel> || std::is_same_v<T, GetClearance>)
          return body;
        else if constexpr (std::is_same_v<T, Return>) return make(Return{go(x.value)});
        else if constexpr (std::is_same_v<T, Bind>)
          return make(Bind{go(x.computation), go(x.continuation)});
        else if constexpr (std::is_same_v<T, LabelOp>) return make(LabelOp{go(x.label), go(x.value)});
        else if constexpr (std::is_same_v<T, Unlabel>) return make(Unlabel{go(x.labeled)});
        else if constexpr (std::is_same_v<T, ToLabeled>)
          return make(ToLabeled{go(x.label), go(x.computation)});
        else if constexpr (std::is_same_v<T, Store>) return make(Store{go(x.key), go(x.value)});
        else if constexpr (std::is_same_v<T, Fetch>)
          return make(Fetch{x.type, go(x.key), go(x.fallback)});
        else if constexpr (std::is_same_v<T, Lio>) return make(Lio{go(x.value)});
        else
          return make(Reset{x.saved_label, x.saved_clearance, x.target, go(x.body)});
      },
      body->node());
}

bool contains_internal_forms(const TermPtr& t) {
  bool found = false;
  auto visit = [&](auto&& self, const TermPtr& x) -> void {
    if (found || !x) return;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          using namespace node;
          if constexpr (std::is_same_v<T, Labeled> || std::is_same_v<T, Lio> ||
                        std::is_same_v<T, Reset>) {
            found = true;
          } else if constexpr (std::is_same_v<T, Lam>) {
            self(self, n.body);
          } else if constexpr (std::is_same_v<T, App>) {
            self(self, n.fn);
            self(self, n.arg);
          } else if constexpr (std::is_same_v<T, Fix>) {
            self(self, n.fn);
          } else if constexpr (std::is_same_v<T, If>) {
            self(self, n.cond);
            self(self, n.then_branch);
            self(self, n.else_branch);
          } else if constexpr (std::is_same_v<T, Pair>) {
            self(self, n.first);
            self(self, n.second);
          } else if constexpr (std::is_same_v<T, Fst> || std::is_same_v<T, Snd>) {
            self(self, n.pair);
          } else if constexpr (std::is_same_v<T, Op>) {
            self(self, n.lhs);
            self(self, n.rhs);
          } else if constexpr (std::is_same_v<T, Return>) {
            self(self, n.value);
          } else if constexpr (std::is_same_v<T, Bind>) {
            self(self, n.computation);
            self(self, n.continuation);
          } else if constexpr (std::is_same_v<T, LabelOp>) {
            self(self, n.label);
            self(self, n.value);
          } else if constexpr (std::is_same_v<T, Unlabel>) {
            self(self, n.labeled);
          } else if constexpr (std::is_same_v<T, ToLabeled>) {
            self(self, n.label);
            self(self, n.computation);
          } else if constexpr (std::is_same_v<T, Store>) {
            self(self, n.key);
            self(self, n.value);
          } else if constexpr (std::is_same_v<T, Fetch>) {
            self(self, n.key);
            self(self, n.fallback);
          }
        },
        x->node());
  };
  visit(visit, t);
  return found;
}

// --- Pretty printing -------------------------------------------------------

namespace {

std::string ground_text(const GroundValue& v) {
  if (v.is_int() && v.as_int() < 0) return "(" + v.text() + ")";
  if (v.is_pair()) return "(" + ground_text(v.first()) + ", " + ground_text(v.second()) + ")";
  return v.text();
}

}  // namespace

std::string pretty(const TermPtr& term) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        using namespace node;
        if constexpr (std::is_same_v<T, Var>) return x.name;
        else if constexpr (std::is_same_v<T, Lam>) {
          std::string binder = x.param;
          if (x.param_type) binder += ":" + x.param_type->str();
          return "(λ" + binder + ". " + pretty(x.body) + ")";
        } else if constexpr (std::is_same_v<T, App>)
          return "(" + pretty(x.fn) + " " + pretty(x.arg) + ")";
        else if constexpr (std::is_same_v<T, Fix>) return "(fix " + pretty(x.fn) + ")";
        else if constexpr (std::is_same_v<T, If>)
          return "(if " + pretty(x.cond) + " then " + pretty(x.then_branch) + " else " +
                 pretty(x.else_branch) + ")";
        else if constexpr (std::is_same_v<T, Pair>)
          return "(" + pretty(x.first) + ", " + pretty(x.second) + ")";
        else if constexpr (std::is_same_v<T, Fst>) return "(fst " + pretty(x.pair) + ")";
        else if constexpr (std::is_same_v<T, Snd>) return "(snd " + pretty(x.pair) + ")";
        else if constexpr (std::is_same_v<T, Op>)
          return "(" + pretty(x.lhs) + " " + binop_symbol(x.op) + " " + pretty(x.rhs) + ")";
        else if constexpr (std::is_same_v<T, Lit>) return ground_text(x.value);
        else if constexpr (std::is_same_v<T, Labeled>)
          return "(labeled ⟨" + x.label.text() + "⟩ " + ground_text(x.value) + ")";
        else if constexpr (std::is_same_v<T, Return>) return "(return " + pretty(x.value) + ")";
        else if constexpr (std::is_same_v<T, Bind>)
          return "(bind " + pretty(x.computation) + " " + pretty(x.continuation) + ")";
        else if constexpr (std::is_same_v<T, LabelOp>)
          return "(label " + pretty(x.label) + " " + pretty(x.value) + ")";
        else if constexpr (std::is_same_v<T, Unlabel>) return "(unlabel " + pretty(x.labeled) + ")";
        else if constexpr (std::is_same_v<T, GetLabel>) return "getLabel";
        else if constexpr (std::is_same_v<T, GetClearance>) return "getClearance";
        else if constexpr (std::is_same_v<T, ToLabeled>)
          return "(toLabeled " + pretty(x.label) + " " + pretty(x.computation) + ")";
        else if constexpr (std::is_same_v<T, Store>)
          return "(store " + pretty(x.key) + " " + pretty(x.value) + ")";
        else if constexpr (std::is_same_v<T, Fetch>)
          return "(fetch[" + x.type->str() + "] " + pretty(x.key) + " " + pretty(x.fallback) +
                 ")";
        else if constexpr (std::is_same_v<T, Lio>) return "(LIO " + pretty(x.value) + ")";
        else
          return "(reset ⟨" + x.saved_label.text() + "⟩ ⟨" + x.saved_clearance.text() + "⟩ ⟨" +
                 x.target.text() + "⟩ " + pretty(x.body) + ")";
      },
      term->node());
}

}  // namespace clio
