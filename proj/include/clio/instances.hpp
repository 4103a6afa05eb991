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

#include <filesystem>
#include <string>
#include <vector>

#include "clio/harness.hpp"

namespace clio {

// Game instance files (JSON).
//
//   {"game": "cta", "threshold": 0.15, "instances": [
//     {"name": ..., "adversary": ["E"], "protected": ["A"],
//      "program": "<source>" | "program_file": "<path>",
//      "inputs": ["<term>", "<term>"], "j": 1, "trials": 200, "seed": 1,
//      "store_level": "<label>", "strategy": "skip" | "corrupt"}]}
//
//   {"game": "forgery", "instances": [
//     {"name": ..., "base": ["E"], "target": "P",
//      "phase1": "<source>" | "phase1_file": ..., "j1": 2,
//      "phase2": "<source>" | "phase2_file": ..., "j2": 4,
//      "adversaries": ["replay", ...], "trials": 100, "seed": 1}]}
//
// Relative program paths resolve against the instance file's directory.
// Inputs may contain `labeled ⟨l⟩ v` literals.

struct CtaSuite {
  std::vector<CtaInstance> instances;
  double threshold = kDefaultAdvantageThreshold;
};

struct ForgeryCase {
  ForgeryInstance instance;
  std::vector<ForgeryAdversary> adversaries;
};

/// Throws IoError on unreadable files and Error on malformed content.
CtaSuite load_cta_suite(const std::filesystem::path& path);
std::vector<ForgeryCase> load_forgery_suite(const std::filesystem::path& path);

/// "cta" or "forgery".
std::string game_kind(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace clio
