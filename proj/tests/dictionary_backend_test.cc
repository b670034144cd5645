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
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "nerbt/rng.h"

namespace nerbt {
namespace {

TEST(DictionaryBackendTest, EmptyTableIsIdentity) {
  DictionaryBackend backend;
  const std::vector<std::string> texts = {"is mixed with", "x"};
  EXPECT_EQ(backend.Translate("en", "de", texts), texts);
  EXPECT_EQ(backend.phrase_count(), 0u);
}

TEST(DictionaryBackendTest, ChainsThroughTwoTables) {
  std::istringstream table(
      "# en-de then back\n"
      "en-de\tis mixed\twird gemischt\n"
      "de-en\twird gemischt\tgets combined\n");
  DictionaryBackend backend = DictionaryBackend::Parse(table);
  EXPECT_EQ(backend.phrase_count(), 2u);
  const std::string german = backend.TranslateText("en", "de", "is mixed");
  EXPECT_EQ(german, "wird gemischt");
  EXPECT_EQ(backend.TranslateText("de", "en", german), "gets combined");
}

TEST(DictionaryBackendTest, UnknownTextPassesThroughNormalized) {
  DictionaryBackend backend;
  backend.AddPhrase("en", "de", "mixed", "gemischt");
  EXPECT_EQ(backend.TranslateText("en", "de", "it  was mixed well"),
            "it was gemischt well");
  EXPECT_EQ(backend.TranslateText("de", "en", "it was mixed"), "it was mixed");
}

TEST(DictionaryBackendTest, LongestMatchWins) {
  DictionaryBackend backend;
  backend.AddPhrase("en", "de", "a", "A");
  backend.AddPhrase("en", "de", "a b", "AB");
  backend.AddPhrase("en", "de", "a b c", "ABC");
  EXPECT_EQ(backend.TranslateText("en", "de", "a b c a b a"), "ABC AB A");
}

TEST(DictionaryBackendTest, ReplacementMayBeEmpty) {
  DictionaryBackend backend;
  backend.AddPhrase("en", "de", "um", "");
  EXPECT_EQ(backend.TranslateText("en", "de", "um well um"), "well");
}

TEST(DictionaryBackendTest, RejectsMalformedLines) {
  for (const char* bad : {"en-de\tonly two\n", "ende\ta\tb\n", "-de\ta\tb\n",
                          "en-de\t \tb\n", "en-de\ta\tb\tc\n"}) {
    std::istringstream in(std::string("# ok\n") + bad);
    try {
      DictionaryBackend::Parse(in);
      FAIL() << "expected MalformedTable for " << bad;
    } catch (const MalformedTable& e) {
      EXPECT_EQ(e.line(), 2u);
    }
  }
}

// Oracle: at each position try every phrase in the table and keep the
// longest one that matches.
std::string BruteForce(const std::map<std::string, std::string>& table,
                       const std::string& text) {
  const std::vector<std::string> tokens = SplitWhitespace(text);
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t best_len = 0;
    std::string best;
    for (const auto& [phrase, replacement] : table) {
      const std::vector<std::string> p = SplitWhitespace(phrase);
      if (p.size() <= best_len || i + p.size() > tokens.size()) continue;
      if (std::equal(p.begin(), p.end(), tokens.begin() + i)) {
        best_len = p.size();
        best = replacement;
      }
    }
    if (best_len == 0) {
      out.push_back(tokens[i]);
      ++i;
      continue;
    }
    for (const std::string& t : SplitWhitespace(best)) out.push_back(t);
    i += best_len;
  }
  return JoinTokens(out);
}

TEST(DictionaryBackendTest, MatchesBruteForceOnRandomStrings) {
  Rng rng(31);
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  for (int trial = 0; trial < 500; ++trial) {
    std::map<std::string, std::string> table;
    DictionaryBackend backend;
    for (int k = 0; k < 6; ++k) {
      std::vector<std::string> phrase;
      for (std::size_t j = 0, n = 1 + rng.UniformIndex(3); j < n; ++j) {
        phrase.push_back(alphabet[rng.UniformIndex(3)]);
      }
      const std::string key = JoinTokens(phrase);
      const std::string value = "R" + std::to_string(k);
      table[key] = value;
      backend.AddPhrase("en", "de", key, value);
    }
    std::vector<std::string> text;
    for (std::size_t j = 0, n = rng.UniformIndex(10); j < n; ++j) {
      text.push_back(alphabet[rng.UniformIndex(3)]);
    }
    const std::string input = JoinTokens(text);
    EXPECT_EQ(backend.TranslateText("en", "de", input), BruteForce(table, input))
        << input;
  }
}

TEST(DictionaryBackendTest, LoadsFromFileAndCountsCalls) {
  const std::string path = ::testing::TempDir() + "/table.tsv";
  {
    std::ofstream out(path);
    out << "en-de\thello\thallo\r\n";
  }
  DictionaryBackend backend = DictionaryBackend::Load(path);
  const std::vector<std::string> texts = {"hello you"};
  EXPECT_EQ(backend.Translate("en", "de", texts),
            (std::vector<std::string>{"hallo you"}));
  EXPECT_EQ(backend.calls(), 1u);
  EXPECT_THROW(DictionaryBackend::Load(path + ".missing"), std::runtime_error);
}

TEST(SplitWhitespaceTest, SplitsAndJoins) {
  EXPECT_EQ(SplitWhitespace("  a\tb \n c "),
            (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(SplitWhitespace(" \t").empty());
  const std::vector<std::string> tokens = {"x", "y"};
  EXPECT_EQ(JoinTokens(tokens), "x y");
}

}  // namespace
}  // namespace nerbt
