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
#include "clio/backend.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <set>

#include "clio/codec.hpp"

namespace clio {

namespace {

void check_ns(std::string_view n) {
  if (n != ns::kEntry && n != ns::kCategoryKey) {
    throw Error("unknown backend namespace '" + std::string(n) + "'");
  }
}

class MemoryBackend : public Backend {
 public:
  std::optional<Bytes> get(std::string_view n, ByteView key) const override {
    std::lock_guard lock(mu_);
    auto it = data_.find({std::string(n), Bytes(key.begin(), key.end())});
    if (it == data_.end()) return std::nullopt;
    return it->second;
  }

  void put(std::string_view n, ByteView key, ByteView value) override {
    check_ns(n);
    std::lock_guard lock(mu_);
    data_[{std::string(n), Bytes(key.begin(), key.end())}] = Bytes(value.begin(), value.end());
  }

  void remove(std::string_view n, ByteView key) override {
    std::lock_guard lock(mu_);
    data_.erase({std::string(n), Bytes(key.begin(), key.end())});
  }

  std::vector<Record> snapshot() const override {
    std::lock_guard lock(mu_);
    std::vector<Record> out;
    for (const auto& [k, v] : data_) out.push_back({k.first, k.second, v});
    return out;
  }

 protected:
  mutable std::mutex mu_;
  std::map<std::pair<std::string, Bytes>, Bytes> data_;
};

// Key a record line is filed under, or nullopt when the line is malformed.
std::optional<std::pair<std::string, Bytes>> key_of_line(std::string_view line) {
  if (line.starts_with("ck: ")) {
    auto rest = line.substr(4);
    auto sp = rest.find(' ');
    if (sp == rest.npos || sp == 0) return std::nullopt;
    return std::make_pair(std::string(ns::kCategoryKey), to_bytes(rest.substr(0, sp)));
  }
  auto sp = line.find(' ');
  if (sp == line.npos) return std::nullopt;
  auto key = base64_decode(line.substr(0, sp));
  if (!key) return std::nullopt;
  return std::make_pair(std::string(ns::kEntry), std::move(*key));
}

class FileBackend final : public MemoryBackend {
 public:
  explicit FileBackend(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_, std::ios::binary);
    if (in) {
      std::string line;
      std::size_t n = 0;
      while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        if (line.starts_with("del: ")) {
          std::string_view rest = std::string_view(line).substr(5);
          auto sp = rest.find(' ');
          auto key = sp == rest.npos ? std::nullopt : base64_decode(rest.substr(sp + 1));
          if (!key) fail("line " + std::to_string(n) + ": malformed tombstone");
          data_.erase({std::string(rest.substr(0, sp)), *key});
          continue;
        }
        auto k = key_of_line(line);
        if (!k) fail("line " + std::to_string(n) + ": malformed record");
        data_[*k] = to_bytes(line);
      }
      if (in.bad()) fail("read error");
    } else if (std::filesystem::exists(path_)) {
      fail("cannot open for reading");
    }
    out_.open(path_, std::ios::binary | std::ios::app);
    if (!out_) fail("cannot open for writing");
  }

  ~FileBackend() override {
    try {
      compact();
    } catch (...) {
    }
  }

  void put(std::string_view n, ByteView key, ByteView value) override {
    check_ns(n);
    const std::string line = to_string(value);
    auto k = key_of_line(line);
    if (line.find('\n') != line.npos || !k || k->first != n ||
        !std::equal(k->second.begin(), k->second.end(), key.begin(), key.end())) {
      throw Error("record does not match its namespace and key");
    }
    std::lock_guard lock(mu_);
    data_[*k] = Bytes(value.begin(), value.end());
    write(line);
  }

  void remove(std::string_view n, ByteView key) override {
    std::lock_guard lock(mu_);
    if (data_.erase({std::string(n), Bytes(key.begin(), key.end())})) {
      write("del: " + std::string(n) + " " + base64_encode(key));
    }
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw IoError(path_.string() + ": " + what);
  }

  void write(const std::string& line) {
    out_ << line << '\n';
    out_.flush();
    if (!out_) fail("write error");
  }

  // Category keys first, then entries, each ordered by key.
  void compact() {
    std::lock_guard lock(mu_);
    out_.close();
    std::filesystem::path tmp = path_;
    tmp += ".tmp";
    {
      std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
      for (std::string_view n : {ns::kCategoryKey, ns::kEntry}) {
        for (const auto& [k, v] : data_) {
          if (k.first == n) o << to_string(v) << '\n';
        }
      }
      if (!o) fail("compaction failed");
    }
    std::filesystem::rename(tmp, path_);
  }

  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace

std::unique_ptr<Backend> memory_backend() { return std::make_unique<MemoryBackend>(); }

std::unique_ptr<Backend> file_backend(const std::filesystem::path& path) {
  return std::make_unique<FileBackend>(path);
}

void save_store(const RealStore& store, Backend& backend) {
  std::set<std::pair<std::string, Bytes>> live;
  for (const auto& [cat, ck] : store.category_keys) {
    Bytes key = to_bytes(cat.text());
    backend.put(ns::kCategoryKey, key, to_bytes(category_key_record(ck)));
    live.insert({std::string(ns::kCategoryKey), key});
  }
  for (const auto& [k, e] : store.entries) {
    Bytes key = encode_ground(k);
    backend.put(ns::kEntry, key, to_bytes(entry_record(k, e)));
    live.insert({std::string(ns::kEntry), key});
  }
  for (const auto& r : backend.snapshot()) {
    if (!live.count({r.ns, r.key})) backend.remove(r.ns, r.key);
  }
}

RealStore load_store(const Backend& backend) {
  RealStore s;
  for (const auto& r : backend.snapshot()) {
    const std::string line = to_string(r.value);
    if (r.ns == ns::kCategoryKey) {
      auto ck = parse_category_key_record(line);
      if (!ck) throw IoError("malformed category key record: " + line);
      s.category_keys.insert_or_assign(ck->category, std::move(*ck));
    } else {
      auto e = parse_entry_record(line);
      if (!e) throw IoError("malformed entry record: " + line);
      s.entries.insert_or_assign(std::move(e->first), std::move(e->second));
    }
  }
  return s;
}

}  // namespace clio
