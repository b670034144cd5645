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

#include "nerbt/translation_cache.h"

#include <openssl/evp.h>

#include <chrono>
#include <mutex>

#include "json.hpp"

namespace nerbt {
namespace {

using json = nlohmann::json;

bool ParseRecord(std::string_view line, std::string& key, std::string& value) {
  json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (!record.is_object()) return false;
  auto k = record.find("k");
  auto v = record.find("v");
  if (k == record.end() || v == record.end() || !k->is_string() ||
      !v->is_string()) {
    return false;
  }
  key = k->get<std::string>();
  value = v->get<std::string>();
  return true;
}

}  // namespace

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

TranslationCache::TranslationCache(const std::filesystem::path& path) {
  LoadAndRecover(path);
  file_.open(path, std::ios::binary | std::ios::app);
  if (!file_) {
    throw std::runtime_error("cannot open cache " + path.string() +
                             " for appending");
  }
  if (missing_newline_) file_ << '\n';
}

void TranslationCache::LoadAndRecover(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read cache " + path.string());
  const std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());

  std::size_t offset = 0;
  std::size_t good_end = 0;
  std::size_t line_number = 0;
  std::string key;
  std::string value;
  while (offset < content.size()) {
    ++line_number;
    std::size_t newline = content.find('\n', offset);
    const bool terminated = newline != std::string::npos;
    if (!terminated) newline = content.size();
    std::string_view line(content.data() + offset, newline - offset);
    const std::size_t next = terminated ? newline + 1 : newline;
    const bool last = next >= content.size();
    if (line.empty() || line == "\r") {
      offset = next;
      good_end = offset;
      continue;
    }
    if (ParseRecord(line, key, value)) {
      entries_[key] = value;
      offset = next;
      good_end = offset;
      missing_newline_ = !terminated;
      continue;
    }
    if (!last) {
      throw CacheCorrupt("corrupt cache record at line " +
                         std::to_string(line_number) + " of " + path.string());
    }
    // Interrupted write: a partial final record, possibly without newline.
    break;
  }
  if (good_end < content.size()) {
    recovered_bytes_ = content.size() - good_end;
    in.close();
    std::filesystem::resize_file(path, good_end);
  }
}

std::string TranslationCache::Normalize(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
        c == '\f') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::string TranslationCache::Key(std::string_view text,
                                  const LanguageChain& chain) {
  std::string material = Normalize(text);
  material += '\x1f';
  material += chain.ToString();
  return Sha256Hex(material);
}

std::optional<std::string> TranslationCache::Lookup(
    const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void TranslationCache::Insert(const std::string& key,
                              const std::string& value) {
  std::unique_lock lock(mutex_);
  entries_[key] = value;
  if (file_.is_open()) {
    const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
    nlohmann::ordered_json record = {{"k", key}, {"v", value}, {"t", now}};
    file_ << record.dump(-1, ' ', false, json::error_handler_t::replace)
          << '\n';
    file_.flush();
  }
}

std::size_t TranslationCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace nerbt
