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

// clio: keystore generation, program execution, store inspection and games.
//
// Exit codes:
//   0 success          4 monitor failure
//   1 game failed      5 step budget exhausted
//   2 usage or I/O     6 category key or crypto failure
//   3 type error       7 parse error

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "clio/backend.hpp"
#include "clio/codec.hpp"
#include "clio/harness.hpp"
#include "clio/instances.hpp"

namespace {

using namespace clio;

enum Exit : int {
  kOk = 0,
  kGameFailed = 1,
  kUsage = 2,
  kType = 3,
  kMonitor = 4,
  kBudget = 5,
  kCrypto = 6,
  kParse = 7,
};

struct Options {
  std::string keystore;
  std::string as;
  std::string store = "memory";
  std::string store_level;
  std::string label;
  std::string clearance;
  std::string provider;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::size_t j = 10000;
  bool raw = false;
  bool dry_type = false;
};

std::uint64_t seed_or_random(const Options& o) {
  if (o.seed) return *o.seed;
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) | rd();
}

std::vector<Principal> split_principals(const std::string& s) {
  std::vector<Principal> out;
  std::stringstream in(s);
  for (std::string name; std::getline(in, name, ',');) {
    if (!name.empty()) out.emplace_back(name);
  }
  return out;
}

struct LoadedKeystore {
  Keystore keystore;
  std::string provider;
};

LoadedKeystore load_keystore(const Options& o) {
  auto [ks, provider] = Keystore::parse(read_file(o.keystore));
  if (!o.as.empty()) {
    auto who = split_principals(o.as);
    for (const auto& p : who) {
      if (!ks.owns(p)) throw IoError(o.keystore + ": no private key for " + p.name());
    }
    ks = ks.restricted_to(who);
  }
  return {std::move(ks), provider};
}

const CryptoProvider& pick_provider(const Options& o, const std::string& from_keystore) {
  if (!o.provider.empty()) return provider_by_name(o.provider);
  return provider_by_name(from_keystore.empty() ? "real" : from_keystore);
}

// Accepts `⟨c | i | a⟩`, `<c | i | a>` or the bare components.
Label label_arg(std::string_view s) {
  for (auto [open, close] : {std::pair<std::string_view, std::string_view>{"⟨", "⟩"}, {"<", ">"}}) {
    if (s.starts_with(open) && s.ends_with(close)) {
      return parse_label(s.substr(open.size(), s.size() - open.size() - close.size()));
    }
  }
  return parse_label(s);
}

std::string show(ByteView b, bool raw) { return raw ? base64_encode(b) : digest(b); }

std::string origin(const RealInteraction& i) {
  return i.origin == RealInteraction::Origin::kRuntime ? "runtime" : "adversary";
}

void print_interaction(std::ostream& out, const RealInteraction& i, bool raw) {
  switch (i.kind) {
    case RealInteraction::Kind::kSkip: out << "  [" << origin(i) << "] skip\n"; break;
    case RealInteraction::Kind::kStoreCK:
      out << "  [" << origin(i) << "] ck " << i.ck->category.text() << " pub="
          << show(i.ck->public_key, raw) << " sig=" << show(i.ck->signature, raw) << "\n";
      break;
    case RealInteraction::Kind::kStoreVal:
      out << "  [" << origin(i) << "] store " << i.key.text() << " ⟨" << i.label.text() << "⟩ "
          << show(i.ciphertext, raw) << "\n";
      break;
  }
}

std::unique_ptr<Backend> open_store(const std::string& where) {
  if (where == "memory") return memory_backend();
  return file_backend(where);
}

int cmd_keygen(const std::vector<std::string>& names, const std::string& out_path,
               const Options& o) {
  if (names.empty()) {
    std::cerr << "keygen: at least one principal is required\n";
    return kUsage;
  }
  std::vector<Principal> principals;
  for (const auto& n : names) principals.emplace_back(n);
  const std::string provider = o.provider.empty() ? "real" : o.provider;
  const CryptoProvider& p = provider_by_name(provider);
  Rng rng = Rng(seed_or_random(o)).fork("keygen");
  Keystore ks = Keystore::generate(principals, p, rng);
  const std::string text = ks.serialize(p.name());
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!(f << text)) throw IoError("cannot write " + out_path);
  }
  std::cerr << "authority ⟨" << authority_of(ks).text() << "⟩\n";
  return kOk;
}

int cmd_run(const std::string& program_path, const Options& o) {
  TermPtr program = parse_term(read_file(program_path));
  if (contains_internal_forms(program)) throw SyntaxError("internal forms are not allowed", 1, 1);
  TypePtr ty = typecheck(program);
  if (ty->kind() != Type::Kind::kClio) throw TypeError("program must be a CLIO computation, got " + ty->str());
  if (o.dry_type) {
    std::cout << "type: " << ty->str() << "\n";
    return kOk;
  }
  if (o.keystore.empty()) {
    std::cerr << "run: --keystore is required\n";
    return kUsage;
  }
  LoadedKeystore lk = load_keystore(o);
  const CryptoProvider& p = pick_provider(o, lk.provider);
  Configuration c{start_label(lk.keystore), clearance_of(lk.keystore), program};
  if (!o.label.empty()) c.lcur = label_arg(o.label);
  if (!o.clearance.empty()) c.ccur = label_arg(o.clearance);
  if (!can_flow_to(c.lcur, c.ccur)) {
    std::cerr << "run: initial label ⟨" << c.lcur.text() << "⟩ does not flow to clearance ⟨"
              << c.ccur.text() << "⟩\n";
    return kUsage;
  }
  const Label level = o.store_level.empty() ? authority_of(lk.keystore) : label_arg(o.store_level);

  auto backend = open_store(o.store);
  RealState s = make_real_state(c, lk.keystore, level, p, seed_or_random(o), load_store(*backend));
  SkipStrategy skip;
  std::size_t steps = 0;
  int status = kOk;
  std::string failure;
  try {
    for (; !is_terminal(s.config); ++steps) {
      if (steps == o.j) throw BudgetExhausted("no result after " + std::to_string(o.j) + " low steps");
      real_low_step(s, skip);
    }
  } catch (const MonitorFailure& e) {
    status = kMonitor;
    failure = std::string("monitor failure: ") + e.what();
  } catch (const CategoryKeyError& e) {
    status = kCrypto;
    failure = std::string("category key failure: ") + e.what();
  } catch (const CryptoError& e) {
    status = kCrypto;
    failure = std::string("crypto failure: ") + e.what();
  } catch (const BudgetExhausted& e) {
    status = kBudget;
    failure = std::string("budget exhausted: ") + e.what();
  }
  save_store(s.store, *backend);

  TermPtr result = s.config.term;
  if (const auto* lio = result->as<node::Lio>()) {
    try {
      result = t::lio(evaluate_pure(lio->value));
    } catch (const Error&) {
    }
  }
  std::cout << "result: " << pretty(result) << "\n"
            << "lcur: ⟨" << s.config.lcur.text() << "⟩\n"
            << "ccur: ⟨" << s.config.ccur.text() << "⟩\n"
            << "low steps: " << steps << "\n"
            << "history:\n";
  for (const auto& i : s.history) print_interaction(std::cout, i, o.raw);
  if (status != kOk) std::cerr << failure << "\n";
  return status;
}

int cmd_dump(const Options& o) {
  auto backend = open_store(o.store);
  RealStore store = load_store(*backend);
  std::optional<LoadedKeystore> lk;
  if (!o.keystore.empty()) lk = load_keystore(o);
  const CryptoProvider& p = pick_provider(o, lk ? lk->provider : std::string());
  for (const auto& [cat, ck] : store.category_keys) {
    std::cout << "ck " << cat.text() << " pub=" << show(ck.public_key, o.raw) << " sig="
              << show(ck.signature, o.raw) << "\n";
  }
  for (const auto& [key, e] : store.entries) {
    std::cout << key.text() << " ⟨" << e.label.text() << "⟩ " << show(e.ciphertext, o.raw);
    if (lk) {
      if (auto d = deserialize(store, e.label, e.ciphertext, nullptr, lk->keystore, p);
          d && d->key == key) {
        std::cout << " = " << d->value.text() << " (version " << d->version << ")";
      } else {
        std::cout << " = <unreadable>";
      }
    }
    std::cout << "\n";
  }
  return kOk;
}

void summary(const std::string& game, std::size_t trials, double advantage, double stderr_,
             bool pass) {
  nlohmann::json j{{"game", game}, {"trials", trials}, {"advantage", advantage},
                   {"stderr", stderr_}, {"pass", pass}};
  std::cout << j.dump() << "\n";
}

int cmd_game_cta(const std::string& path, const Options& o) {
  CtaSuite suite = load_cta_suite(path);
  const CryptoProvider& p = pick_provider(o, "");
  bool invalid = false;
  for (auto& inst : suite.instances) {
    if (o.trials) inst.trials = *o.trials;
    if (o.seed) inst.seed_base = *o.seed;
    for (const auto& why : validate_cta(inst)) {
      std::cout << "invalid " << inst.name << ": " << why << "\n";
      invalid = true;
    }
  }
  if (invalid) return kUsage;

  auto owned = builtin_distinguishers();
  std::vector<const Distinguisher*> ds;
  for (const auto& d : owned) ds.push_back(d.get());
  double worst = 0, worst_se = 0;
  std::size_t trials = 0;
  for (const auto& inst : suite.instances) {
    CtaReport r = estimate_advantage(inst, ds, p);
    trials += 2 * r.trials;
    for (const auto& e : r.estimates) {
      std::cout << inst.name << " " << e.distinguisher << " p0=" << e.p0 << " p1=" << e.p1
                << " advantage=" << e.advantage << " stderr=" << e.stderr_ << "\n";
      if (e.advantage >= worst) {
        worst = e.advantage;
        worst_se = e.stderr_;
      }
    }
  }
  const bool pass = worst < suite.threshold;
  std::cout << "cta " << (pass ? "PASS" : "FAIL") << " provider=" << p.name()
            << " max-advantage=" << worst << " threshold=" << suite.threshold << "\n";
  summary("cta", trials, worst, worst_se, pass);
  return pass ? kOk : kGameFailed;
}

int cmd_game_forgery(const std::string& path, const Options& o) {
  auto cases = load_forgery_suite(path);
  const CryptoProvider& p = pick_provider(o, "");
  bool invalid = false;
  for (auto& c : cases) {
    if (o.trials) c.instance.trials = *o.trials;
    if (o.seed) c.instance.seed_base = *o.seed;
    for (const auto& why : validate_forgery(c.instance)) {
      std::cout << "invalid " << c.instance.name << ": " << why << "\n";
      invalid = true;
    }
  }
  if (invalid) return kUsage;
  std::size_t trials = 0, successes = 0, violations = 0;
  double worst = 0;
  for (const auto& c : cases) {
    for (auto a : c.adversaries) {
      ForgeryReport r = run_forgery_game(c.instance, a, p);
      std::cout << r.instance << " " << r.adversary << " trials=" << r.trials
                << " successes=" << r.successes << " floor-violations=" << r.floor_violations
                << " monitor-stops=" << r.monitor_stops << "\n";
      trials += r.trials;
      successes += r.successes;
      violations += r.floor_violations;
      if (r.trials) worst = std::max(worst, static_cast<double>(r.successes) / r.trials);
    }
  }
  const bool pass = successes == 0 && violations == 0;
  std::cout << "forgery " << (pass ? "PASS" : "FAIL") << " provider=" << p.name()
            << " successes=" << successes << " floor-violations=" << violations << "\n";
  const double n = trials ? static_cast<double>(trials) : 1.0;
  const double rate = static_cast<double>(successes) / n;
  summary("forgery", trials, worst, std::sqrt(rate * (1 - rate) / n), pass);
  return pass ? kOk : kGameFailed;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return kType;
  } catch (const MonitorFailure& e) {
    std::cerr << "monitor failure: " << e.what() << "\n";
    return kMonitor;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const CategoryKeyError& e) {
    std::cerr << "category key failure: " << e.what() << "\n";
    return kCrypto;
  } catch (const CryptoError& e) {
    std::cerr << "crypto failure: " << e.what() << "\n";
    return kCrypto;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cryptographically protected information flow control"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--provider", o.provider, "crypto provider")
        ->check(CLI::IsMember({"real", "identity", "testvec"}));
    cmd->add_option("--seed", o.seed, "randomness seed");
  };

  std::vector<std::string> names;
  std::string out_path;
  auto* keygen = app.add_subcommand("keygen", "generate a keystore");
  keygen->add_option("principals", names, "principal names");
  keygen->add_option("-o,--out", out_path, "output file (default stdout)");
  add_common(keygen);

  std::string program_path;
  auto* run = app.add_subcommand("run", "run a program against a store");
  run->add_option("program", program_path, "program file")->required();
  run->add_option("--keystore", o.keystore, "keystore file");
  run->add_option("--as", o.as, "comma-separated principals whose private keys are used");
  run->add_option("--store", o.store, "store file or 'memory'");
  run->add_option("--store-level", o.store_level, "store level label (default authority)");
  run->add_option("--label", o.label, "initial current label");
  run->add_option("--clearance", o.clearance, "initial clearance");
  run->add_option("--j", o.j, "low step budget");
  run->add_flag("--raw", o.raw, "print full ciphertexts");
  run->add_flag("--dry-type", o.dry_type, "only typecheck");
  add_common(run);

  auto* dump = app.add_subcommand("dump", "print a store");
  dump->add_option("--store", o.store, "store file")->required();
  dump->add_option("--keystore", o.keystore, "keystore for decryption");
  dump->add_option("--as", o.as, "comma-separated principals whose private keys are used");
  dump->add_flag("--raw", o.raw, "print full ciphertexts");
  add_common(dump);

  std::string instance_path;
  auto* game = app.add_subcommand("game", "run a security game");
  game->require_subcommand(1);
  auto* cta = game->add_subcommand("cta", "chosen-term attack game");
  auto* forgery = game->add_subcommand("forgery", "leveraged forgery game");
  for (auto* g : {cta, forgery}) {
    g->add_option("instance", instance_path, "instance file")->required();
    g->add_option("--trials", o.trials, "trials per branch or adversary");
    add_common(g);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  return guarded([&] {
    if (*keygen) return cmd_keygen(names, out_path, o);
    if (*run) return cmd_run(program_path, o);
    if (*dump) return cmd_dump(o);
    if (*cta) return cmd_game_cta(instance_path, o);
    if (*forgery) return cmd_game_forgery(instance_path, o);
    return int{kUsage};
  });
}
