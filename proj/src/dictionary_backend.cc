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

#include "nerbt/dictionary_backend.h"

#include <algorithm>
#include <fstream>
#include <istream>

namespace nerbt {

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string JoinTokens(std::span<const std::string> tokens) {
  std::string out;
  for (const std::string& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

MalformedTable::MalformedTable(std::size_t line, const std::string& message)
    : std::runtime_error("paraphrase table line " + std::to_string(line) +
                         ": " + message),
      line_(line) {}

DictionaryBackend::DictionaryBackend(const DictionaryBackend& other)
    : TranslationBackend(), tables_(other.tables_) {}

DictionaryBackend DictionaryBackend::Parse(std::istream& in) {
  DictionaryBackend backend;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const std::size_t tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (fields.size() != 3) {
      throw MalformedTable(line_number, "expected 3 tab-separated fields, got " +
                                            std::to_string(fields.size()));
    }
    const std::size_t dash = fields[0].find('-');
    if (dash == std::string_view::npos || dash == 0 ||
        dash + 1 == fields[0].size()) {
      throw MalformedTable(line_number, "language pair must look like en-de");
    }
    if (SplitWhitespace(fields[1]).empty()) {
      throw MalformedTable(line_number, "empty source phrase");
    }
    backend.AddPhrase(std::string(fields[0].substr(0, dash)),
                      std::string(fields[0].substr(dash + 1)), fields[1],
                      fields[2]);
  }
  return backend;
}

DictionaryBackend DictionaryBackend::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open paraphrase table " + path);
  return Parse(in);
}

void DictionaryBackend::AddPhrase(const std::string& source,
                                  const std::string& target,
                                  std::string_view phrase,
                                  std::string_view replacement) {
  std::vector<std::string> key = SplitWhitespace(phrase);
  if (key.empty()) return;
  PhraseTable& table = tables_[{source, target}];
  table.longest = std::max(table.longest, key.size());
  table.phrases[std::move(key)] = SplitWhitespace(replacement);
}

std::string DictionaryBackend::TranslateText(std::string_view source,
                                             std::string_view target,
                                             std::string_view text) const {
  const std::vector<std::string> tokens = SplitWhitespace(text);
  auto it = tables_.find(std::pair<std::string, std::string>(source, target));
  if (it == tables_.end()) return JoinTokens(tokens);
  const PhraseTable& table = it->second;

  std::vector<std::string> out;
  std::vector<std::string> probe;
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool matched = false;
    for (std::size_t len = std::min(table.longest, tokens.size() - i);
         len > 0; --len) {
      probe.assign(tokens.begin() + i, tokens.begin() + i + len);
      auto hit = table.phrases.find(probe);
      if (hit == table.phrases.end()) continue;
      out.insert(out.end(), hit->second.begin(), hit->second.end());
      i += len;
      matched = true;
      break;
    }
    if (!matched) out.push_back(tokens[i++]);
  }
  return JoinTokens(out);
}

std::vector<std::string> DictionaryBackend::Translate(
    std::string_view source, std::string_view target,
    std::span<const std::string> texts) {
  ++calls_;
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    out.push_back(TranslateText(source, target, text));
  }
  return out;
}

std::size_t DictionaryBackend::phrase_count() const {
  std::size_t n = 0;
  for (const auto& [pair, table] : tables_) n += table.phrases.size();
  return n;
}

}  // namespace nerbt
