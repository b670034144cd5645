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

#ifndef NERBT_DICTIONARY_BACKEND_H_
#define NERBT_DICTIONARY_BACKEND_H_

#include <atomic>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nerbt/backend.h"

namespace nerbt {

class MalformedTable : public std::runtime_error {
 public:
  MalformedTable(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Offline, deterministic stand-in for an MT system: a per-language-pair
// phrase table applied with greedy longest match over whitespace tokens.
// Text with no matching phrase passes through unchanged, and pairs without a
// table behave as identity.
class DictionaryBackend : public TranslationBackend {
 public:
  DictionaryBackend() = default;
  DictionaryBackend(const DictionaryBackend& other);

  // Lines of `srclang-tgtlang<TAB>phrase<TAB>replacement`. Blank lines and
  // lines starting with '#' are skipped. Later duplicates overwrite earlier
  // ones.
  static DictionaryBackend Parse(std::istream& in);
  static DictionaryBackend Load(const std::string& path);

  void AddPhrase(const std::string& source, const std::string& target,
                 std::string_view phrase, std::string_view replacement);

  std::string name() const override { return "dictionary"; }
  bool Supports(std::string_view, std::string_view) const override {
    return true;
  }
  std::vector<std::string> Translate(
      std::string_view source, std::string_view target,
      std::span<const std::string> texts) override;

  // Single-text translation; output tokens are joined with single spaces.
  std::string TranslateText(std::string_view source, std::string_view target,
                            std::string_view text) const;

  std::size_t phrase_count() const;
  std::size_t calls() const { return calls_.load(); }

 private:
  struct PhraseTable {
    std::map<std::vector<std::string>, std::vector<std::string>> phrases;
    std::size_t longest = 0;
  };

  std::map<std::pair<std::string, std::string>, PhraseTable, std::less<>>
      tables_;
  std::atomic<std::size_t> calls_{0};
};

// Whitespace tokenization shared by backends and the splice step.
std::vector<std::string> SplitWhitespace(std::string_view text);
std::string JoinTokens(std::span<const std::string> tokens);

}  // namespace nerbt

#endif  // NERBT_DICTIONARY_BACKEND_H_
