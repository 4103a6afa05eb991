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
#include "clio/ideal.hpp"

#include "clio/codec.hpp"

namespace clio {

const IdealStore::Entry* IdealStore::find(const GroundValue& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string IdealStore::dump() const {
  std::string out;
  for (const auto& [key, e] : entries_) {
    out += base64_encode(encode_ground(key));
    if (e.corrupted()) {
      out += " - CORRUPT\n";
    } else {
      out += " " + e.value->label.text() + " " + base64_encode(encode_ground(e.value->value)) + "\n";
    }
  }
  return out;
}

namespace {

void check_store(const LabeledGround& lv, const Label& store_level) {
  if (!component_flow(Component::kInteg, store_level.integ(), lv.label.integ())) {
    throw InteractionRejected("adversary store of ⟨" + lv.label.text() +
                              "⟩ claims integrity above the store level ⟨" + store_level.text() +
                              "⟩");
  }
}

}  // namespace

IdealInteraction IdealInteraction::store(GroundValue key, LabeledGround lv,
                                         const Label& store_level) {
  check_store(lv, store_level);
  IdealInteraction i;
  i.kind = Kind::kStore;
  i.key = std::move(key);
  i.value = std::move(lv);
  return i;
}

IdealInteraction IdealInteraction::corrupt(std::vector<GroundValue> keys) {
  IdealInteraction i;
  i.kind = Kind::kCorrupt;
  i.keys = std::move(keys);
  return i;
}

IdealStore apply_ideal(IdealStore store, const IdealInteraction& i, const Label& store_level) {
  switch (i.kind) {
    case IdealInteraction::Kind::kSkip: break;
    case IdealInteraction::Kind::kStore:
      check_store(i.value, store_level);
      store.put(i.key, i.value);
      break;
    case IdealInteraction::Kind::kCorrupt:
      for (const auto& k : i.keys) store.corrupt(k);
      break;
  }
  return store;
}

void IdealBridge::on_store(const GroundValue& key, const LabeledGround& lv) { store_.put(key, lv); }

StoreEvent IdealBridge::on_fetch(const GroundValue& key, const LabeledGround&, const TypePtr&) {
  const IdealStore::Entry* e = store_.find(key);
  if (!e || e->corrupted()) return StoreEvent::missing(key);
  return StoreEvent::fetch(key, *e->value);
}

IdealLowStep ideal_low_step(const IdealStepper& s, const std::vector<IdealInteraction>& adversary) {
  IdealLowStep out{s, {}};
  for (const auto& i : adversary) out.next.store = apply_ideal(std::move(out.next.store), i, s.store_level);
  IdealBridge bridge(out.next.store);
  RunResult r = low_step(s.config, bridge, s.store_level, s.high_budget);
  out.next.config = std::move(r.config);
  out.events = std::move(r.trace);
  return out;
}

namespace {

bool readable(const Label& l, const Label& level) {
  return component_flow(Component::kConf, l.conf(), level.conf());
}

std::optional<Label> literal_label(const TermPtr& t) {
  auto l = t->as<node::Lit>();
  if (!l || !l->value.is_label()) return std::nullopt;
  return l->value.as_label();
}

}  // namespace

// Labeled values and pending `label l t` operations with an unreadable literal
// label are compared by label alone (plus payload type for values).
bool low_equiv_terms(const TermPtr& a, const TermPtr& b, const Label& level) {
  return structurally_equal_with(a, b, [&](const Term& p, const Term& q) -> std::optional<bool> {
    if (auto x = p.as<node::Labeled>()) {
      auto y = q.as<node::Labeled>();
      if (!y || x->label != y->label) return false;
      if (readable(x->label, level)) return x->value == y->value;
      return same_type(type_of_ground(x->value), type_of_ground(y->value));
    }
    auto x = p.as<node::LabelOp>();
    auto y = q.as<node::LabelOp>();
    if (!x || !y) return std::nullopt;
    auto lx = literal_label(x->label);
    auto ly = literal_label(y->label);
    if (!lx || !ly || readable(*lx, level)) return std::nullopt;
    return *lx == *ly;
  });
}

bool low_equiv(const Configuration& a, const Configuration& b, const Label& level) {
  if (!readable(a.lcur, level) && !readable(b.lcur, level) && !readable(a.ccur, level) &&
      !readable(b.ccur, level)) {
    return true;
  }
  return a.lcur == b.lcur && a.ccur == b.ccur && low_equiv_terms(a.term, b.term, level);
}

}  // namespace clio
