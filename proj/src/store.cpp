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
#include "clio/store.hpp"

#include <algorithm>
#include <sstream>

#include "clio/codec.hpp"

namespace clio {

// --- Keystore --------------------------------------------------------------

Keystore Keystore::generate(const std::vector<Principal>& principals, const CryptoProvider& p,
                            Rng& rng) {
  Keystore ks;
  for (const auto& pr : principals) ks.add(pr, p.gen(rng));
  return ks;
}

void Keystore::add(Principal principal, KeyPair pair) {
  if (entries_.count(principal)) throw Error("duplicate principal " + principal.name());
  entries_.emplace(std::move(principal), std::move(pair));
}

const KeyPair* Keystore::find(const Principal& principal) const {
  auto it = entries_.find(principal);
  return it == entries_.end() ? nullptr : &it->second;
}

bool Keystore::owns(const Principal& principal) const {
  const KeyPair* k = find(principal);
  return k && k->private_key.has_value();
}

std::vector<Principal> Keystore::owned() const {
  std::vector<Principal> out;
  for (const auto& [p, k] : entries_) {
    if (k.private_key) out.push_back(p);
  }
  return out;
}

Keystore Keystore::merged(const Keystore& other) const {
  Keystore ks = *this;
  for (const auto& [p, k] : other.entries_) ks.add(p, k);
  return ks;
}

Keystore Keystore::public_only() const {
  Keystore ks;
  for (const auto& [p, k] : entries_) ks.add(p, KeyPair{k.public_key, std::nullopt});
  return ks;
}

Keystore Keystore::restricted_to(const std::vector<Principal>& principals) const {
  Keystore ks;
  for (const auto& [p, k] : entries_) {
    const bool keep = std::find(principals.begin(), principals.end(), p) != principals.end();
    ks.add(p, keep ? k : KeyPair{k.public_key, std::nullopt});
  }
  return ks;
}

std::string Keystore::serialize(std::string_view provider_name) const {
  std::string out = "#clio-keystore provider=" + std::string(provider_name) + "\n";
  for (const auto& [p, k] : entries_) {
    out += p.name() + " " + base64_encode(k.public_key) + " " +
           (k.private_key ? base64_encode(*k.private_key) : "-") + "\n";
  }
  return out;
}

std::pair<Keystore, std::string> Keystore::parse(std::string_view text) {
  Keystore ks;
  std::string provider;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (auto at = line.find("provider="); line.starts_with("#clio-keystore") && at != line.npos) {
        provider = line.substr(at + 9);
      }
      continue;
    }
    std::istringstream fields(line);
    std::string name, pub, priv, extra;
    if (!(fields >> name >> pub >> priv) || (fields >> extra)) {
      throw IoError("keystore line " + std::to_string(n) + ": expected 3 fields");
    }
    auto pk = base64_decode(pub);
    std::optional<Bytes> sk;
    if (priv != "-") {
      sk = base64_decode(priv);
      if (!sk) throw IoError("keystore line " + std::to_string(n) + ": bad private key");
    }
    if (!pk) throw IoError("keystore line " + std::to_string(n) + ": bad public key");
    try {
      ks.add(Principal(name), KeyPair{std::move(*pk), std::move(sk)});
    } catch (const Error& e) {
      throw IoError("keystore line " + std::to_string(n) + ": " + e.what());
    }
  }
  return {std::move(ks), provider};
}

Label authority_of(const Keystore& ks) {
  Formula p = Formula::conjunction_of(ks.owned());
  return Label(p, p, p);
}

Label start_label(const Keystore& ks) {
  Formula p = Formula::conjunction_of(ks.owned());
  return Label(Formula::True(), p, p);
}

Label clearance_of(const Keystore& ks) {
  return Label(Formula::conjunction_of(ks.owned()), Formula::True(), Formula::True());
}

// --- Category keys ---------------------------------------------------------

namespace {

void put_field(Bytes& out, ByteView b) {
  append_u64be(out, b.size());
  out.insert(out.end(), b.begin(), b.end());
}

void put_field(Bytes& out, std::string_view s) { put_field(out, ByteView(to_bytes(s))); }

}  // namespace

Bytes category_key_message(const CategoryKey& ck) {
  Bytes out = to_bytes("clio-ck/v1");
  put_field(out, ck.category.text());
  put_field(out, ck.public_key);
  append_u64be(out, ck.wrapped.size());
  for (const auto& [p, w] : ck.wrapped) {
    put_field(out, p.name());
    put_field(out, w);
  }
  return out;
}

// --- Interactions ----------------------------------------------------------

RealInteraction RealInteraction::skip(Origin o) {
  RealInteraction i;
  i.origin = o;
  return i;
}

RealInteraction RealInteraction::store_ck(CategoryKey ck, Origin o) {
  RealInteraction i;
  i.kind = Kind::kStoreCK;
  i.origin = o;
  i.ck = std::move(ck);
  return i;
}

RealInteraction RealInteraction::store_val(GroundValue key, Label label, Bytes ciphertext,
                                           Origin o) {
  RealInteraction i;
  i.kind = Kind::kStoreVal;
  i.origin = o;
  i.key = std::move(key);
  i.label = std::move(label);
  i.ciphertext = std::move(ciphertext);
  return i;
}

void RealStore::apply(const RealInteraction& i) {
  switch (i.kind) {
    case RealInteraction::Kind::kSkip: break;
    case RealInteraction::Kind::kStoreCK: category_keys.insert_or_assign(i.ck->category, *i.ck); break;
    case RealInteraction::Kind::kStoreVal:
      entries.insert_or_assign(i.key, RealEntry{i.label, i.ciphertext});
      break;
  }
}

RealStore replay(const History& history, RealStore base) {
  for (const auto& i : history) base.apply(i);
  return base;
}

std::string entry_record(const GroundValue& key, const RealEntry& e) {
  return base64_encode(encode_ground(key)) + " " + e.label.text() + " " +
         base64_encode(e.ciphertext);
}

std::string category_key_record(const CategoryKey& ck) {
  std::string out = "ck: " + ck.category.text() + " " + base64_encode(ck.public_key);
  for (const auto& [p, w] : ck.wrapped) out += " " + p.name() + "=" + base64_encode(w);
  return out + " " + base64_encode(ck.signature);
}

std::optional<std::pair<GroundValue, RealEntry>> parse_entry_record(std::string_view line) {
  const auto first = line.find(' ');
  const auto last = line.rfind(' ');
  if (first == line.npos || last <= first) return std::nullopt;
  auto kb = base64_decode(line.substr(0, first));
  auto cb = base64_decode(line.substr(last + 1));
  if (!kb || !cb) return std::nullopt;
  auto key = decode_ground_exact(*kb);
  if (!key) return std::nullopt;
  try {
    std::string_view lt = line.substr(first + 1, last - first - 1);
    Label l = parse_label(lt);
    if (l.text() != lt) return std::nullopt;
    return std::make_pair(std::move(*key), RealEntry{std::move(l), std::move(*cb)});
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<CategoryKey> parse_category_key_record(std::string_view line) {
  std::vector<std::string> tok;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.size() < 4 || tok[0] != "ck:") return std::nullopt;
  try {
    CategoryKey ck{parse_category(tok[1]), {}, {}, {}};
    if (ck.category.text() != tok[1]) return std::nullopt;
    auto pub = base64_decode(tok[2]);
    auto sig = base64_decode(tok.back());
    if (!pub || !sig) return std::nullopt;
    ck.public_key = std::move(*pub);
    ck.signature = std::move(*sig);
    for (std::size_t i = 3; i + 1 < tok.size(); ++i) {
      auto eq = tok[i].find('=');
      if (eq == std::string::npos) return std::nullopt;
      auto w = base64_decode(std::string_view(tok[i]).substr(eq + 1));
      if (!w) return std::nullopt;
      if (!ck.wrapped.emplace(Principal(tok[i].substr(0, eq)), std::move(*w)).second) {
        return std::nullopt;
      }
    }
    return ck;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// --- Category key management -----------------------------------------------

std::optional<CategoryKeyMaterial> fetch_category_key(const RealStore& store,
                                                      const Category& cat, const Keystore& ks,
                                                      const CryptoProvider& p) {
  auto it = store.category_keys.find(cat);
  if (it == store.category_keys.end()) return std::nullopt;
  const CategoryKey& ck = it->second;
  if (ck.category != cat) return std::nullopt;
  const Bytes msg = category_key_message(ck);
  const bool verified = std::any_of(cat.members().begin(), cat.members().end(), [&](const auto& m) {
    const KeyPair* k = ks.find(m);
    return k && p.verify(k->public_key, msg, ck.signature);
  });
  if (!verified) return std::nullopt;
  CategoryKeyMaterial out{ck.public_key, std::nullopt};
  for (const auto& m : cat.members()) {
    if (!ks.owns(m)) continue;
    auto w = ck.wrapped.find(m);
    if (w == ck.wrapped.end()) continue;
    if (auto sk = p.dec(*ks.find(m)->private_key, w->second)) {
      out.private_key = std::move(*sk);
      break;
    }
  }
  return out;
}

CategoryKeyMaterial initialize_category_key(RealStore& store, const Category& cat,
                                            const Keystore& ks, const CryptoProvider& p,
                                            Rng& rng, History& out) {
  const bool present = store.category_keys.count(cat) > 0;
  if (present) {
    if (auto m = fetch_category_key(store, cat, ks, p)) return *m;
  }
  const Principal* signer = nullptr;
  for (const auto& m : cat.members()) {
    if (ks.owns(m)) {
      signer = &m;
      break;
    }
  }
  if (!signer) {
    throw CategoryKeyError(present ? "unverifiable category key for " + cat.text()
                                   : "cannot create category key for " + cat.text() +
                                         ": no member private key");
  }
  KeyPair fresh = p.gen(rng);
  CategoryKey ck{cat, fresh.public_key, {}, {}};
  for (const auto& m : cat.members()) {
    const KeyPair* k = ks.find(m);
    if (!k) throw CategoryKeyError("no public key for category member " + m.name());
    ck.wrapped.emplace(m, p.enc(k->public_key, *fresh.private_key, rng));
  }
  ck.signature = p.sign(*ks.find(*signer)->private_key, category_key_message(ck), rng);
  RealInteraction i = RealInteraction::store_ck(std::move(ck));
  store.apply(i);
  out.push_back(std::move(i));
  return {std::move(fresh.public_key), std::move(fresh.private_key)};
}

// --- Serialization ---------------------------------------------------------

Bytes encode_payload(const GroundValue& value, const GroundValue& key, std::uint64_t version) {
  Bytes out;
  encode_ground(value, out);
  encode_ground(key, out);
  append_u64be(out, version);
  return out;
}

Bytes encrypt_for_formula(RealStore& store, const Formula& conf, ByteView plaintext,
                          const Keystore& ks, const CryptoProvider& p, Rng& rng, History& out) {
  if (conf.is_false()) throw CategoryKeyError("cannot encrypt for confidentiality False");
  Bytes c(plaintext.begin(), plaintext.end());
  for (const auto& cat : conf.clauses()) {
    CategoryKeyMaterial m = initialize_category_key(store, cat, ks, p, rng, out);
    c = p.enc(m.public_key, c, rng);
  }
  return c;
}

std::vector<Bytes> sign_for_formula(RealStore& store, const Formula& integ, ByteView message,
                                    const Keystore& ks, const CryptoProvider& p, Rng& rng,
                                    History& out) {
  if (integ.is_false()) throw CategoryKeyError("cannot sign for integrity False");
  std::vector<Bytes> sigs;
  for (const auto& cat : integ.clauses()) {
    CategoryKeyMaterial m = initialize_category_key(store, cat, ks, p, rng, out);
    if (!m.private_key) throw CategoryKeyError("no signing authority for " + cat.text());
    sigs.push_back(p.sign(*m.private_key, message, rng));
  }
  return sigs;
}

Serialized serialize(const RealStore& store, const Label& label, const GroundValue& value,
                     const GroundValue& key, std::uint64_t version, const Keystore& ks,
                     const CryptoProvider& p, Rng& rng) {
  RealStore working = store;
  Serialized s;
  Bytes plain = encode_payload(value, key, version);
  std::vector<Bytes> sigs = sign_for_formula(working, label.integ(), plain, ks, p, rng,
                                             s.category_keys);
  append_u64be(plain, sigs.size());
  for (const auto& sig : sigs) put_field(plain, sig);
  s.ciphertext = encrypt_for_formula(working, label.conf(), plain, ks, p, rng, s.category_keys);
  return s;
}

std::optional<Deserialized> deserialize(const RealStore& store, const Label& label,
                                        ByteView ciphertext, const TypePtr& type,
                                        const Keystore& ks, const CryptoProvider& p) {
  if (label.conf().is_false() || label.integ().is_false()) return std::nullopt;
  Bytes c(ciphertext.begin(), ciphertext.end());
  const auto& layers = label.conf().clauses();
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    auto m = fetch_category_key(store, *it, ks, p);
    if (!m || !m->private_key) return std::nullopt;
    auto d = p.dec(*m->private_key, c);
    if (!d) return std::nullopt;
    c = std::move(*d);
  }
  std::size_t pos = 0;
  auto value = decode_ground(c, pos);
  if (!value) return std::nullopt;
  auto key = decode_ground(c, pos);
  if (!key) return std::nullopt;
  auto version = read_u64be(c, pos);
  if (!version) return std::nullopt;
  const ByteView payload = ByteView(c).first(pos);
  auto count = read_u64be(c, pos);
  const auto& cats = label.integ().clauses();
  if (!count || *count != cats.size()) return std::nullopt;
  std::vector<ByteView> sigs;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    auto len = read_u64be(c, pos);
    if (!len || *len > c.size() - pos) return std::nullopt;
    sigs.push_back(ByteView(c).subspan(pos, *len));
    pos += *len;
  }
  if (pos != c.size()) return std::nullopt;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    auto m = fetch_category_key(store, cats[i], ks, p);
    if (!m || !p.verify(m->public_key, payload, sigs[i])) return std::nullopt;
  }
  if (type && !same_type(type_of_ground(*value), type)) return std::nullopt;
  return Deserialized{std::move(*value), std::move(*key), *version};
}

std::optional<Bytes> peel_without_keys(ByteView ciphertext, std::size_t layers,
                                       const CryptoProvider& p) {
  Bytes c(ciphertext.begin(), ciphertext.end());
  for (std::size_t i = 0; i < layers; ++i) {
    auto d = p.dec({}, c);
    if (!d) return std::nullopt;
    c = std::move(*d);
  }
  return c;
}

// --- Real semantics --------------------------------------------------------

std::uint64_t increment(const VersionMap& v, const GroundValue& key) {
  auto it = v.find(key);
  return (it == v.end() ? 0 : it->second) + 1;
}

void RealState::append(RealInteraction i) {
  store.apply(i);
  history.push_back(std::move(i));
}

RealState make_real_state(Configuration config, Keystore ks, Label store_level,
                          const CryptoProvider& p, std::uint64_t seed, RealStore base) {
  RealState s;
  s.config = std::move(config);
  s.store = base;
  s.base = std::move(base);
  s.keystore = std::move(ks);
  s.store_level = std::move(store_level);
  s.provider = &p;
  Rng root(seed);
  s.rng = root.fork("runtime");
  s.adversary_rng = root.fork("adversary");
  return s;
}

void RealBridge::on_store(const GroundValue& key, const LabeledGround& lv) {
  const std::uint64_t version = increment(state_.versions, key);
  state_.versions[key] = version;
  Serialized s = serialize(state_.store, lv.label, lv.value, key, version, state_.keystore,
                           *state_.provider, state_.rng);
  for (auto& ck : s.category_keys) state_.append(std::move(ck));
  state_.append(RealInteraction::store_val(key, lv.label, std::move(s.ciphertext)));
}

StoreEvent RealBridge::on_fetch(const GroundValue& key, const LabeledGround&,
                                const TypePtr& type) {
  auto it = state_.store.entries.find(key);
  if (it == state_.store.entries.end()) return StoreEvent::missing(key);
  const RealEntry& e = it->second;
  auto d = deserialize(state_.store, e.label, e.ciphertext, type, state_.keystore,
                       *state_.provider);
  if (!d) return StoreEvent::missing(key);
  std::uint64_t& seen = state_.versions[key];
  if (d->key != key || d->version < seen) {
    if (seen == 0) state_.versions.erase(key);
    return StoreEvent::missing(key);
  }
  seen = std::max(seen, d->version);
  return StoreEvent::fetch(key, LabeledGround{e.label, std::move(d->value)});
}

StoreEvent real_store_step(RealState& state) {
  RealBridge bridge(state);
  StepResult r = step(state.config, bridge, state.store_level);
  state.config = std::move(r.config);
  return r.event;
}

std::vector<StoreEvent> real_low_step(RealState& state, Strategy& strategy) {
  History adv = strategy.next(state.history, state.adversary_rng);
  if (adv.size() > kStrategyOutputCap) throw Error("strategy output cap exceeded");
  for (auto& i : adv) {
    i.origin = RealInteraction::Origin::kAdversary;
    state.append(std::move(i));
  }
  RealBridge bridge(state);
  RunResult r = low_step(state.config, bridge, state.store_level, state.high_budget);
  state.config = std::move(r.config);
  return std::move(r.trace);
}

RealState step_meta(const Configuration& initial, Strategy& strategy, std::size_t j,
                    const Keystore& ks, const Label& store_level, const CryptoProvider& p,
                    std::uint64_t seed) {
  RealState s = make_real_state(initial, ks, store_level, p, seed);
  for (std::size_t i = 0; i < j; ++i) {
    if (is_terminal(s.config)) {
      throw LowStepShortfall("program terminated after " + std::to_string(i) + " of " +
                             std::to_string(j) + " low steps");
    }
    real_low_step(s, strategy);
  }
  return s;
}

}  // namespace clio
