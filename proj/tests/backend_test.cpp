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
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support.hpp"

namespace clio {
namespace {

using testing::L;

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("clio-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::filesystem::path file(const std::string& n) const { return path_ / n; }

 private:
  std::filesystem::path path_;
};

RealStore sample_store(std::uint64_t seed) {
  const auto& p = real_provider();
  Rng rng(seed);
  Keystore ks = Keystore::generate({Principal("A"), Principal("B")}, p, rng);
  RealStore store;
  for (int i = 0; i < 4; ++i) {
    Serialized s = serialize(store, L(i % 2 ? "A | B | True" : "A ∨ B | A | True"),
                             GroundValue::integer(i), GroundValue::text("k" + std::to_string(i)), 1, ks, p,
                             rng);
    for (const auto& ck : s.category_keys) store.apply(ck);
    store.apply(RealInteraction::store_val(GroundValue::text("k" + std::to_string(i)),
                                           L(i % 2 ? "A | B | True" : "A ∨ B | A | True"), s.ciphertext));
  }
  return store;
}

TEST(MemoryBackend, PutGetRemove) {
  auto b = memory_backend();
  b->put(ns::kEntry, to_bytes("k"), to_bytes("v"));
  EXPECT_EQ(*b->get(ns::kEntry, to_bytes("k")), to_bytes("v"));
  EXPECT_FALSE(b->get(ns::kCategoryKey, to_bytes("k")));
  b->remove(ns::kEntry, to_bytes("k"));
  EXPECT_FALSE(b->get(ns::kEntry, to_bytes("k")));
  EXPECT_THROW(b->put("other", to_bytes("k"), to_bytes("v")), Error);
}

TEST(MemoryBackend, StoreRoundTrip) {
  RealStore s = sample_store(1);
  auto b = memory_backend();
  save_store(s, *b);
  EXPECT_EQ(load_store(*b), s);
}

TEST(FileBackend, ReloadIsExact) {
  TempDir d;
  RealStore s = sample_store(2);
  {
    auto b = file_backend(d.file("s.db"));
    save_store(s, *b);
  }
  const std::string first = read_file(d.file("s.db"));
  {
    auto b = file_backend(d.file("s.db"));
    EXPECT_EQ(load_store(*b), s);
    save_store(load_store(*b), *b);
  }
  EXPECT_EQ(read_file(d.file("s.db")), first);
}

TEST(FileBackend, DeletionsPersist) {
  TempDir d;
  RealStore s = sample_store(3);
  {
    auto b = file_backend(d.file("s.db"));
    save_store(s, *b);
  }
  s.entries.erase(GroundValue::text("k1"));
  {
    auto b = file_backend(d.file("s.db"));
    save_store(s, *b);
  }
  auto b = file_backend(d.file("s.db"));
  EXPECT_EQ(load_store(*b), s);
}

TEST(FileBackend, ReplaysAppendLogWithTombstones) {
  TempDir d;
  RealStore s = sample_store(4);
  const auto path = d.file("s.db");
  {
    auto b = file_backend(path);
    save_store(s, *b);
  }
  {
    std::ofstream o(path, std::ios::app);
    const auto& [k, e] = *s.entries.begin();
    o << entry_record(k, e) << "\n";
    o << "del: entry " << base64_encode(encode_ground(k)) << "\n";
  }
  s.entries.erase(s.entries.begin());
  auto b = file_backend(path);
  EXPECT_EQ(load_store(*b), s);
}

TEST(FileBackend, MalformedFileIsIoError) {
  TempDir d;
  {
    std::ofstream o(d.file("bad.db"));
    o << "!!!! not a record\n";
  }
  EXPECT_THROW(file_backend(d.file("bad.db")), IoError);
  {
    std::ofstream o(d.file("bad2.db"));
    o << "aGk= looks like a key\n";
  }
  EXPECT_THROW(load_store(*file_backend(d.file("bad2.db"))), IoError);
  EXPECT_THROW(file_backend(d.file("missing-dir/x.db")), IoError);
}

TEST(FileBackend, RejectsMismatchedRecords) {
  TempDir d;
  auto b = file_backend(d.file("s.db"));
  EXPECT_THROW(b->put(ns::kEntry, to_bytes("k"), to_bytes("garbage")), Error);
}

}  // namespace
}  // namespace clio
