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
#include "clio/instances.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace clio {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

json load_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::vector<Principal> principals(const json& j, const char* field) {
  std::vector<Principal> out;
  for (const auto& p : j.value(field, json::array())) out.emplace_back(p.get<std::string>());
  return out;
}

TermPtr program(const json& j, const std::string& field, const fs::path& dir) {
  if (j.contains(field)) return parse_term(j.at(field).get<std::string>());
  if (j.contains(field + "_file")) {
    fs::path p = j.at(field + "_file").get<std::string>();
    if (p.is_relative()) p = dir / p;
    return parse_term(read_file(p));
  }
  throw Error("missing '" + field + "' or '" + field + "_file'");
}

template <typename F>
auto with_context(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(where + ": " + e.what());
  }
}

}  // namespace

std::string game_kind(const fs::path& path) {
  return with_context(path.string(), [&] { return load_json(path).at("game").get<std::string>(); });
}

CtaSuite load_cta_suite(const fs::path& path) {
  const json doc = load_json(path);
  const fs::path dir = path.parent_path();
  return with_context(path.string(), [&] {
    if (doc.at("game") != "cta") throw Error(path.string() + ": not a cta instance file");
    CtaSuite suite;
    suite.threshold = doc.value("threshold", kDefaultAdvantageThreshold);
    for (const auto& j : doc.at("instances")) {
      CtaInstance inst;
      inst.name = j.at("name").get<std::string>();
      with_context(inst.name, [&] {
        inst.adversary_principals = principals(j, "adversary");
        inst.protected_principals = principals(j, "protected");
        inst.program = program(j, "program", dir);
        const auto& in = j.at("inputs");
        if (in.size() != 2) throw Error("exactly two inputs are required");
        ParseOptions opts;
        opts.allow_labeled_literals = true;
        inst.input0 = parse_term(in[0].get<std::string>(), opts);
        inst.input1 = parse_term(in[1].get<std::string>(), opts);
        inst.j = j.value("j", std::size_t{1});
        inst.trials = j.value("trials", kDefaultTrials);
        inst.seed_base = j.value("seed", std::uint64_t{0});
        if (j.contains("store_level")) inst.store_level = parse_label(j.at("store_level").get<std::string>());
        const std::string strategy = j.value("strategy", std::string("skip"));
        if (strategy == "skip") {
          inst.strategy = skip_strategy();
        } else if (strategy == "corrupt") {
          inst.strategy = corrupting_strategy();
        } else {
          throw Error("unknown strategy '" + strategy + "'");
        }
        return 0;
      });
      suite.instances.push_back(std::move(inst));
    }
    return suite;
  });
}

std::vector<ForgeryCase> load_forgery_suite(const fs::path& path) {
  const json doc = load_json(path);
  const fs::path dir = path.parent_path();
  return with_context(path.string(), [&] {
    if (doc.at("game") != "forgery") throw Error(path.string() + ": not a forgery instance file");
    std::vector<ForgeryCase> out;
    for (const auto& j : doc.at("instances")) {
      ForgeryCase c;
      ForgeryInstance& inst = c.instance;
      inst.name = j.at("name").get<std::string>();
      with_context(inst.name, [&] {
        inst.base_principals = principals(j, "base");
        inst.target = Principal(j.value("target", std::string("P")));
        inst.phase1 = program(j, "phase1", dir);
        inst.phase2 = program(j, "phase2", dir);
        inst.j1 = j.value("j1", std::size_t{1});
        inst.j2 = j.value("j2", std::size_t{1});
        inst.trials = j.value("trials", std::size_t{100});
        inst.seed_base = j.value("seed", std::uint64_t{0});
        for (const auto& a : j.value("adversaries", json::array({"replay", "splice", "rollback", "bitflip"}))) {
          auto kind = forgery_adversary_by_name(a.get<std::string>());
          if (!kind) throw Error("unknown adversary '" + a.get<std::string>() + "'");
          c.adversaries.push_back(*kind);
        }
        return 0;
      });
      out.push_back(std::move(c));
    }
    return out;
  });
}

}  // namespace clio
