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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clio/store.hpp"

namespace clio {

namespace ns {
inline constexpr std::string_view kEntry = "entry";
inline constexpr std::string_view kCategoryKey = "ck";
}  // namespace ns

struct Record {
  std::string ns;
  Bytes key;
  Bytes value;
  friend bool operator==(const Record&, const Record&) = default;
};

/// Last-write-wins key/value storage over the "entry" and "ck" namespaces.
/// Implementations are internally synchronized.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::optional<Bytes> get(std::string_view ns, ByteView key) const = 0;
  virtual void put(std::string_view ns, ByteView key, ByteView value) = 0;
  virtual void remove(std::string_view ns, ByteView key) = 0;
  /// All live records ordered by namespace, then key.
  virtual std::vector<Record> snapshot() const = 0;
};

std::unique_ptr<Backend> memory_backend();

/// Values are the store's wire records: `entry` values are entry records
/// whose first field is the base64 key, `ck` values are category-key records
/// for the category named by the key. Writes append one line; deletions append
/// `del: <ns> <key-b64>`; the file is compacted when the backend is destroyed.
/// Throws IoError naming the path on any I/O or format failure.
std::unique_ptr<Backend> file_backend(const std::filesystem::path& path);

/// Writes every entry and category key of `store`, removing stale records.
void save_store(const RealStore& store, Backend& backend);
/// Throws IoError on malformed records.
RealStore load_store(const Backend& backend);

}  // namespace clio
