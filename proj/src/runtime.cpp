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
#include "clio/runtime.hpp"

#include <optional>

namespace clio {

bool operator==(const Configuration& a, const Configuration& b) {
  return a.lcur == b.lcur && a.ccur == b.ccur && structurally_equal(a.term, b.term);
}

std::string StoreEvent::text() const {
  switch (kind) {
    case Kind::kSkip: return "skip";
    case Kind::kStore:
      return "store " + key.text() + " ⟨" + value.label.text() + "⟩" + value.value.text();
    case Kind::kFetch:
      return "fetch " + key.text() + " ⟨" + value.label.text() + "⟩" + value.value.text();
    case Kind::kMissing: return "missing " + key.text();
  }
  return "?";
}

namespace {

[[noreturn]] void stuck(const TermPtr& t, const std::string& why) {
  std::string s = pretty(t);
  if (s.size() > 120) s = s.substr(0, 117) + "...";
  throw StuckError("stuck at `" + s + "`: " + why);
}

std::int64_t wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

GroundValue apply_op(const TermPtr& whole, BinOp op, const GroundValue& a, const GroundValue& b) {
  auto ints = [&] {
    if (!a.is_int() || !b.is_int()) stuck(whole, "integer operands expected");
  };
  auto bools = [&] {
    if (!a.is_bool() || !b.is_bool()) stuck(whole, "boolean operands expected");
  };
  const auto u = [](std::int64_t x) { return static_cast<std::uint64_t>(x); };
  switch (op) {
    case BinOp::kAdd: ints(); return GroundValue::integer(wrap(u(a.as_int()) + u(b.as_int())));
    case BinOp::kSub: ints(); return GroundValue::integer(wrap(u(a.as_int()) - u(b.as_int())));
    case BinOp::kMul: ints(); return GroundValue::integer(wrap(u(a.as_int()) * u(b.as_int())));
    case BinOp::kLt: ints(); return GroundValue::boolean(a.as_int() < b.as_int());
    case BinOp::kEq: return GroundValue::boolean(a == b);
    case BinOp::kAnd: bools(); return GroundValue::boolean(a.as_bool() && b.as_bool());
    case BinOp::kOr: bools(); return GroundValue::boolean(a.as_bool() || b.as_bool());
    case BinOp::kConcat:
      if (!a.is_text() || !b.is_text()) stuck(whole, "text operands expected");
      return GroundValue::text(a.as_text() + b.as_text());
  }
  stuck(whole, "unknown operator");
}

std::optional<TermPtr> force_ground(const TermPtr& t);

// Call-by-name reduction of non-monadic redexes. nullopt when `t` is a value.
std::optional<TermPtr> pure_step(const TermPtr& t) {
  const Term& n = *t;
  if (is_value(n)) return std::nullopt;
  if (auto* a = n.as<node::App>()) {
    if (auto* l = a->fn->as<node::Lam>()) return substitute(l->body, l->param, a->arg);
    if (auto s = pure_step(a->fn)) return t::app(*s, a->arg);
    stuck(t, "application of a non-function");
  }
  if (auto* f = n.as<node::Fix>()) return t::app(f->fn, t);
  if (auto* i = n.as<node::If>()) {
    if (auto* c = i->cond->as<node::Lit>()) {
      if (!c->value.is_bool()) stuck(t, "condition is not boolean");
      return c->value.as_bool() ? i->then_branch : i->else_branch;
    }
    if (auto s = pure_step(i->cond)) return t::if_(*s, i->then_branch, i->else_branch);
    stuck(t, "condition is not boolean");
  }
  if (n.is<node::Fst>() || n.is<node::Snd>()) {
    const bool first = n.is<node::Fst>();
    const TermPtr& p = first ? n.as<node::Fst>()->pair : n.as<node::Snd>()->pair;
    if (auto* pr = p->as<node::Pair>()) return first ? pr->first : pr->second;
    if (auto* l = p->as<node::Lit>()) {
      if (!l->value.is_pair()) stuck(t, "projection from a non-pair");
      return t::lit(first ? l->value.first() : l->value.second());
    }
    if (auto s = pure_step(p)) return first ? t::fst(*s) : t::snd(*s);
    stuck(t, "projection from a non-pair");
  }
  if (auto* o = n.as<node::Op>()) {
    if (auto s = force_ground(o->lhs)) return t::op(o->op, *s, o->rhs);
    if (auto s = force_ground(o->rhs)) return t::op(o->op, o->lhs, *s);
    return t::lit(apply_op(t, o->op, *as_ground(*o->lhs), *as_ground(*o->rhs)));
  }
  if (n.is<node::Var>()) stuck(t, "free variable");
  return std::nullopt;  // monadic forms
}

// One step towards a ground literal; nullopt once `t` is ground.
std::optional<TermPtr> force_ground(const TermPtr& t) {
  if (t->is<node::Lit>()) return std::nullopt;
  if (auto* p = t->as<node::Pair>()) {
    if (auto s = force_ground(p->first)) return t::pair(*s, p->second);
    if (auto s = force_ground(p->second)) return t::pair(p->first, *s);
    return t::pair(p->first, p->second);
  }
  if (auto s = pure_step(t)) return s;
  stuck(t, "expected a ground value");
}

std::optional<TermPtr> force_labeled(const TermPtr& t) {
  if (t->is<node::Labeled>()) return std::nullopt;
  if (auto s = pure_step(t)) return s;
  stuck(t, "expected a labeled value");
}

const Label& label_of(const TermPtr& t) {
  const auto* l = t->as<node::Lit>();
  if (!l || !l->value.is_label()) stuck(t, "expected a label");
  return l->value.as_label();
}

std::string flow_text(const Label& a, const Label& b) {
  return "⟨" + a.text() + "⟩ ⋢ ⟨" + b.text() + "⟩";
}

void require(bool ok, Premise p, const Label& a, const Label& b) {
  if (!ok) throw MonitorFailure(p, flow_text(a, b));
}

struct Machine {
  Label lcur;
  Label ccur;
  StoreBridge& bridge;
  const Label& store_level;
  StoreEvent event;

  TermPtr step(const TermPtr& t) {
    const Term& n = *t;
    if (auto* r = n.as<node::Return>()) return t::lio(r->value);
    if (auto* b = n.as<node::Bind>()) {
      if (auto* v = b->computation->as<node::Lio>()) return t::app(b->continuation, v->value);
      return t::bind(step(b->computation), b->continuation);
    }
    if (auto* l = n.as<node::LabelOp>()) {
      if (auto s = force_ground(l->label)) return t::label_op(*s, l->value);
      if (auto s = force_ground(l->value)) return t::label_op(l->label, *s);
      const Label& target = label_of(l->label);
      require(can_flow_to(lcur, target), Premise::kLabelAboveCurrent, lcur, target);
      require(can_flow_to(target, ccur), Premise::kLabelBelowClearance, target, ccur);
      return t::lio(t::labeled(target, *as_ground(*l->value)));
    }
    if (auto* u = n.as<node::Unlabel>()) {
      if (auto s = force_labeled(u->labeled)) return t::unlabel(*s);
      const auto* lv = u->labeled->as<node::Labeled>();
      Label raised = join(lcur, lv->label);
      require(can_flow_to(raised, ccur), Premise::kUnlabelBelowClearance, raised, ccur);
      lcur = std::move(raised);
      return t::lio(t::lit(lv->value));
    }
    if (n.is<node::GetLabel>()) return t::lio(t::label(lcur));
    if (n.is<node::GetClearance>()) return t::lio(t::label(ccur));
    if (auto* tl = n.as<node::ToLabeled>()) {
      if (auto s = force_ground(tl->label)) return t::to_labeled(*s, tl->computation);
      const Label& target = label_of(tl->label);
      require(can_flow_to(lcur, target), Premise::kToLabeledAboveCurrent, lcur, target);
      require(can_flow_to(target, ccur), Premise::kToLabeledBelowClearance, target, ccur);
      return t::reset(lcur, ccur, target, tl->computation);
    }
    if (auto* r = n.as<node::Reset>()) {
      if (auto* v = r->body->as<node::Lio>()) {
        require(can_flow_to(lcur, r->target), Premise::kResetTarget, lcur, r->target);
        lcur = r->saved_label;
        ccur = r->saved_clearance;
        return t::label_op(t::label(r->target), v->value);
      }
      return t::reset(r->saved_label, r->saved_clearance, r->target, step(r->body));
    }
    if (auto* s = n.as<node::Store>()) {
      if (auto k = force_ground(s->key)) return t::store(*k, s->value);
      if (auto v = force_labeled(s->value)) return t::store(s->key, *v);
      const auto* lv = s->value->as<node::Labeled>();
      require(can_flow_to(lcur, store_level), Premise::kStoreBelowStoreLevel, lcur, store_level);
      require(can_flow_to(lcur, lv->label), Premise::kStoreBelowValueLabel, lcur, lv->label);
      GroundValue key = *as_ground(*s->key);
      LabeledGround value{lv->label, lv->value};
      bridge.on_store(key, value);
      event = StoreEvent::store(std::move(key), std::move(value));
      return t::lio(t::unit());
    }
    if (auto* f = n.as<node::Fetch>()) {
      if (auto k = force_ground(f->key)) return t::fetch(f->type, *k, f->fallback);
      if (auto d = force_labeled(f->fallback)) return t::fetch(f->type, f->key, *d);
      const auto* d = f->fallback->as<node::Labeled>();
      if (!component_flow(Component::kAvail, store_level.avail(), d->label.avail())) {
        throw MonitorFailure(Premise::kFetchAvailability,
                             "availability " + store_level.avail().text() + " does not flow to " +
                                 d->label.avail().text());
      }
      GroundValue key = *as_ground(*f->key);
      LabeledGround fallback{d->label, d->value};
      event = bridge.on_fetch(key, fallback, f->type);
      if (event.kind == StoreEvent::Kind::kFetch && can_flow_to(event.value.label, d->label) &&
          same_type(type_of_ground(event.value.value), f->type)) {
        return t::lio(t::labeled(event.value.label, event.value.value));
      }
      return t::lio(f->fallback);
    }
    if (n.is<node::Lio>()) stuck(t, "finished computation in a non-terminal position");
    if (auto s = pure_step(t)) return *s;
    stuck(t, "not a computation");
  }
};

}  // namespace

bool is_terminal(const Configuration& c) { return c.term->is<node::Lio>(); }

StepResult step(const Configuration& c, StoreBridge& bridge, const Label& store_level) {
  if (is_terminal(c)) throw StuckError("step from a terminal configuration");
  Machine m{c.lcur, c.ccur, bridge, store_level, StoreEvent::skip()};
  TermPtr next = m.step(c.term);
  return {{std::move(m.lcur), std::move(m.ccur), std::move(next)}, std::move(m.event)};
}

bool is_low_config(const Configuration& c, const Label& store_level) {
  return can_flow_to(c.lcur, store_level);
}

RunResult run(const Configuration& c, StoreBridge& bridge, const Label& store_level,
              std::size_t max_steps) {
  RunResult r{c, {}, 0};
  while (!is_terminal(r.config)) {
    if (r.steps == max_steps) {
      throw BudgetExhausted("step budget of " + std::to_string(max_steps) + " exhausted");
    }
    StepResult s = step(r.config, bridge, store_level);
    r.config = std::move(s.config);
    r.trace.push_back(std::move(s.event));
    ++r.steps;
  }
  return r;
}

RunResult low_step(const Configuration& c, StoreBridge& bridge, const Label& store_level,
                   std::size_t high_budget) {
  StepResult s = step(c, bridge, store_level);
  RunResult r{std::move(s.config), {std::move(s.event)}, 1};
  std::size_t high = 0;
  while (!is_terminal(r.config) && !is_low_config(r.config, store_level)) {
    if (high++ == high_budget) throw BudgetExhausted("diverged in high section");
    s = step(r.config, bridge, store_level);
    r.config = std::move(s.config);
    r.trace.push_back(std::move(s.event));
    ++r.steps;
  }
  return r;
}

std::size_t count_low_steps(const Configuration& c, StoreBridge& bridge,
                            const Label& store_level, std::size_t max_low,
                            std::size_t high_budget) {
  Configuration cur = c;
  std::size_t n = 0;
  while (!is_terminal(cur)) {
    if (n == max_low) throw BudgetExhausted("low-step budget exhausted");
    cur = low_step(cur, bridge, store_level, high_budget).config;
    ++n;
  }
  return n;
}

TermPtr evaluate_pure(const TermPtr& t, std::size_t max_steps) {
  TermPtr cur = t;
  for (std::size_t i = 0; i < max_steps; ++i) {
    if (auto* p = cur->as<node::Pair>()) {
      return t::pair(evaluate_pure(p->first, max_steps), evaluate_pure(p->second, max_steps));
    }
    if (auto* l = cur->as<node::Lio>()) return t::lio(evaluate_pure(l->value, max_steps));
    auto s = pure_step(cur);
    if (!s) return cur;
    cur = *s;
  }
  throw BudgetExhausted("pure evaluation budget exhausted");
}

}  // namespace clio
