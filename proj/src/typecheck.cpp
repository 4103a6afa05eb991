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

// Bidirectional checker. Unannotated lambdas are only accepted where their
// parameter type is known: as a bind continuation, as the head of an
// application, or when checked against a function type.

#include "clio/term.hpp"

namespace clio {

namespace {

using K = Type::Kind;

std::string show(const TermPtr& t) {
  std::string s = pretty(t);
  if (s.size() > 120) s = s.substr(0, 117) + "...";
  return s;
}

[[noreturn]] void fail(const TermPtr& t, const std::string& what) {
  throw TypeError("in `" + show(t) + "`: " + what);
}

class Checker {
 public:
  TypePtr synth(const TermPtr& t, const TypeEnv& env) {
    const Term& n = *t;
    if (auto* v = n.as<node::Var>()) {
      auto it = env.find(v->name);
      if (it == env.end()) fail(t, "unbound variable '" + v->name + "'");
      return it->second;
    }
    if (auto* l = n.as<node::Lam>()) {
      if (!l->param_type) fail(t, "cannot infer the parameter type of an unannotated lambda");
      return Type::fun(l->param_type, synth(l->body, extend(env, l->param, l->param_type)));
    }
    if (auto* a = n.as<node::App>()) {
      if (auto* l = a->fn->as<node::Lam>(); l && !l->param_type) {
        TypePtr arg = synth(a->arg, env);
        return synth(l->body, extend(env, l->param, arg));
      }
      TypePtr f = synth(a->fn, env);
      if (f->kind() != K::kFun) fail(a->fn, "expected a function, got " + f->str());
      check(a->arg, f->first(), env);
      return f->second();
    }
    if (auto* f = n.as<node::Fix>()) {
      TypePtr ft = synth(f->fn, env);
      if (ft->kind() != K::kFun || !same_type(ft->first(), ft->second())) {
        fail(f->fn, "fix expects a function of type τ -> τ, got " + ft->str());
      }
      return ft->first();
    }
    if (auto* i = n.as<node::If>()) {
      check(i->cond, Type::boolean(), env);
      TypePtr a = synth(i->then_branch, env);
      check(i->else_branch, a, env);
      return a;
    }
    if (auto* p = n.as<node::Pair>()) {
      return Type::pair(synth(p->first, env), synth(p->second, env));
    }
    if (auto* p = n.as<node::Fst>()) return component(t, p->pair, env, true);
    if (auto* p = n.as<node::Snd>()) return component(t, p->pair, env, false);
    if (auto* o = n.as<node::Op>()) return op(t, *o, env);
    if (auto* l = n.as<node::Lit>()) return type_of_ground(l->value);
    if (auto* l = n.as<node::Labeled>()) return Type::labeled(type_of_ground(l->value));
    if (auto* r = n.as<node::Return>()) return Type::clio(synth(r->value, env));
    if (auto* b = n.as<node::Bind>()) {
      TypePtr m = expect_clio(b->computation, env);
      TypePtr arg = m->first();
      if (auto* l = b->continuation->as<node::Lam>(); l && !l->param_type) {
        TypePtr body = synth(l->body, extend(env, l->param, arg));
        if (body->kind() != K::kClio) fail(l->body, "bind continuation must return CLIO, got " + body->str());
        return body;
      }
      TypePtr k = synth(b->continuation, env);
      if (k->kind() != K::kFun || !same_type(k->first(), arg) || k->second()->kind() != K::kClio) {
        fail(b->continuation, "expected " + arg->str() + " -> CLIO τ, got " + k->str());
      }
      return k->second();
    }
    if (auto* l = n.as<node::LabelOp>()) {
      check(l->label, Type::label(), env);
      TypePtr v = synth(l->value, env);
      if (!v->is_ground()) fail(l->value, "labeled values must be ground, got " + v->str());
      return Type::clio(Type::labeled(v));
    }
    if (auto* u = n.as<node::Unlabel>()) {
      TypePtr lv = synth(u->labeled, env);
      if (lv->kind() != K::kLabeled) fail(u->labeled, "unlabel expects Labeled τ, got " + lv->str());
      return Type::clio(lv->first());
    }
    if (n.is<node::GetLabel>() || n.is<node::GetClearance>()) return Type::clio(Type::label());
    if (auto* tl = n.as<node::ToLabeled>()) {
      check(tl->label, Type::label(), env);
      TypePtr r = expect_clio(tl->computation, env)->first();
      if (!r->is_ground()) fail(tl->computation, "toLabeled result must be ground, got " + r->str());
      return Type::clio(Type::labeled(r));
    }
    if (auto* s = n.as<node::Store>()) {
      TypePtr k = synth(s->key, env);
      if (!k->is_ground()) fail(s->key, "store key must be ground, got " + k->str());
      TypePtr v = synth(s->value, env);
      if (v->kind() != K::kLabeled) fail(s->value, "store value must be Labeled τ, got " + v->str());
      return Type::clio(Type::unit());
    }
    if (auto* f = n.as<node::Fetch>()) {
      if (!f->type->is_ground()) fail(t, "fetch type must be ground, got " + f->type->str());
      TypePtr k = synth(f->key, env);
      if (!k->is_ground()) fail(f->key, "fetch key must be ground, got " + k->str());
      TypePtr want = Type::labeled(f->type);
      check(f->fallback, want, env);
      return Type::clio(want);
    }
    if (auto* l = n.as<node::Lio>()) return Type::clio(synth(l->value, env));
    if (auto* r = n.as<node::Reset>()) {
      TypePtr b = expect_clio(r->body, env)->first();
      if (!b->is_ground()) fail(r->body, "toLabeled result must be ground, got " + b->str());
      return Type::clio(Type::labeled(b));
    }
    fail(t, "unknown term form");
  }

  void check(const TermPtr& t, const TypePtr& want, const TypeEnv& env) {
    if (auto* l = t->as<node::Lam>(); l && !l->param_type) {
      if (want->kind() != K::kFun) fail(t, "expected " + want->str() + ", got a function");
      check(l->body, want->second(), extend(env, l->param, want->first()));
      return;
    }
    if (auto* i = t->as<node::If>()) {
      check(i->cond, Type::boolean(), env);
      check(i->then_branch, want, env);
      check(i->else_branch, want, env);
      return;
    }
    TypePtr got = synth(t, env);
    if (!same_type(got, want)) fail(t, "expected " + want->str() + ", got " + got->str());
  }

 private:
  static TypeEnv extend(const TypeEnv& env, const std::string& x, const TypePtr& ty) {
    TypeEnv e = env;
    e[x] = ty;
    return e;
  }

  TypePtr expect_clio(const TermPtr& t, const TypeEnv& env) {
    TypePtr ty = synth(t, env);
    if (ty->kind() != K::kClio) fail(t, "expected a CLIO computation, got " + ty->str());
    return ty;
  }

  TypePtr component(const TermPtr& whole, const TermPtr& p, const TypeEnv& env, bool first) {
    TypePtr ty = synth(p, env);
    if (ty->kind() != K::kPair) fail(whole, "expected a pair, got " + ty->str());
    return first ? ty->first() : ty->second();
  }

  TypePtr op(const TermPtr& t, const node::Op& o, const TypeEnv& env) {
    switch (o.op) {
      case BinOp::kAdd:
      case BinOp::kSub:
      case BinOp::kMul:
        check(o.lhs, Type::integer(), env);
        check(o.rhs, Type::integer(), env);
        return Type::integer();
      case BinOp::kLt:
        check(o.lhs, Type::integer(), env);
        check(o.rhs, Type::integer(), env);
        return Type::boolean();
      case BinOp::kConcat:
        check(o.lhs, Type::text(), env);
        check(o.rhs, Type::text(), env);
        return Type::text();
      case BinOp::kAnd:
      case BinOp::kOr:
        check(o.lhs, Type::boolean(), env);
        check(o.rhs, Type::boolean(), env);
        return Type::boolean();
      case BinOp::kEq: {
        TypePtr a = synth(o.lhs, env);
        if (!a->is_ground()) fail(t, "== compares ground values, got " + a->str());
        check(o.rhs, a, env);
        return Type::boolean();
      }
    }
    fail(t, "unknown operator");
  }
};

}  // namespace

TypePtr typecheck(const TermPtr& t, const TypeEnv& env) { return Checker().synth(t, env); }

}  // namespace clio
