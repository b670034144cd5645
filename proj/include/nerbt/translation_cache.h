//
// Copyright 2026 The nerbt Authors
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
//

#ifndef NERBT_TRANSLATION_CACHE_H_
#define NERBT_TRANSLATION_CACHE_H_

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

#include "nerbt/backend.h"

namespace nerbt {

class CacheCorrupt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Backtranslation results keyed by SHA-256 of (normalized text, chain).
//
// With a path, the cache is an append-only file of JSON lines
//   {"k": "<hex>", "v": "<text>", "t": <unix seconds>}
// Later lines win on duplicate keys. A corrupt final line (an interrupted
// write) is cut off on open; corruption anywhere else throws CacheCorrupt.
//
// Lookups take a shared lock and inserts an exclusive one, so one cache can
// serve concurrent translation batches.
class TranslationCache {
 public:
  // In-memory only.
  TranslationCache() = default;
  explicit TranslationCache(const std::filesystem::path& path);

  TranslationCache(const TranslationCache&) = delete;
  TranslationCache& operator=(const TranslationCache&) = delete;

  static std::string Key(std::string_view text, const LanguageChain& chain);

  // Collapses whitespace runs to one space and trims both ends.
  static std::string Normalize(std::string_view text);

  std::optional<std::string> Lookup(const std::string& key) const;
  void Insert(const std::string& key, const std::string& value);

  std::size_t size() const;
  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }
  // Bytes dropped from a truncated tail when the file was opened.
  std::size_t recovered_bytes() const { return recovered_bytes_; }

 private:
  void LoadAndRecover(const std::filesystem::path& path);

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::string> entries_;
  std::ofstream file_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
  std::size_t recovered_bytes_ = 0;
  bool missing_newline_ = false;
};

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

}  // namespace nerbt

#endif  // NERBT_TRANSLATION_CACHE_H_
