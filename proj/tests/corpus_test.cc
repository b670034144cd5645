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

#include "nerbt/corpus.h"

#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "nerbt/rng.h"
#include "test_util.h"

namespace nerbt {
namespace {

using ::nerbt::testing::FromLabels;
using ::nerbt::testing::LabelStrings;
using ::nerbt::testing::MakeSentence;
using ::nerbt::testing::RandomValidSentence;

TEST(LabelTest, ParsesTheThreeShapes) {
  EXPECT_EQ(Label::Parse("O"), Label::Outside());
  EXPECT_EQ(Label::Parse("B-ORG"), Label::Begin("ORG"));
  EXPECT_EQ(Label::Parse("I-operation"), Label::Inside("operation"));
}

TEST(LabelTest, RejectsMalformedLabels) {
  for (const char* bad : {"", "o", "B", "X-ORG", "B_ORG", "I-", "B-", "OO"}) {
    EXPECT_FALSE(Label::Parse(bad).has_value()) << bad;
  }
}

TEST(ParseConllTest, MinimalSentence) {
  const Corpus corpus = ParseConll("EU\tB-ORG\nrejects\tO\n\n");
  ASSERT_EQ(corpus.sentences.size(), 1u);
  EXPECT_EQ(corpus.sentences[0].size(), 2u);
  EXPECT_EQ(ExtractMentions(corpus.sentences[0]).size(), 1u);
}

TEST(ParseConllTest, InsideWithoutBeginIsAnError) {
  try {
    ParseConll("word\tI-ORG\n\n");
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.kind(), CorpusError::Kind::kInvalidTransition);
    EXPECT_EQ(e.sentence(), 0u);
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ParseConllTest, RepairTurnsOrphanInsideIntoBegin) {
  ParseOptions options;
  options.repair_iob = true;
  const Corpus corpus =
      ParseConll("a\tO\nb\tI-ORG\nc\tI-ORG\nd\tI-LOC\n\n", options);
  EXPECT_EQ(LabelStrings(corpus.sentences[0]),
            (std::vector<std::string>{"O", "B-ORG", "I-ORG", "B-LOC"}));
}

TEST(ParseConllTest, ReportsMalformedLineWithLineNumber) {
  try {
    ParseConll("a\tO\n\nlonely\n");
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.kind(), CorpusError::Kind::kMalformedLine);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.sentence(), 1u);
  }
}

TEST(ParseConllTest, ReportsInvalidLabel) {
  try {
    ParseConll("a\tB-ORG\nb\tX-ORG\n");
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.kind(), CorpusError::Kind::kInvalidLabel);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseConllTest, SkipsDocstartAndExtraBlankLinesAndUsesLastColumn) {
  const Corpus corpus = ParseConll(
      "-DOCSTART- -X- -X- O\n\n\nEU NNP B-NP B-ORG\nrejects VBZ B-VP O\n\n\n"
      "German JJ B-NP B-MISC\n");
  ASSERT_EQ(corpus.sentences.size(), 2u);
  EXPECT_EQ(corpus.sentences[0],
            MakeSentence({"EU", "rejects"}, {"B-ORG", "O"}));
  EXPECT_EQ(corpus.sentences[1], MakeSentence({"German"}, {"B-MISC"}));
}

TEST(ParseConllTest, HandlesCrlfAndBom) {
  const Corpus corpus = ParseConll("\xEF\xBB\xBF" "EU\tB-ORG\r\nrejects\tO\r\n\r\n");
  ASSERT_EQ(corpus.sentences.size(), 1u);
  EXPECT_EQ(corpus.sentences[0],
            MakeSentence({"EU", "rejects"}, {"B-ORG", "O"}));
}

TEST(ParseConllTest, LenientCollectsEveryProblem) {
  std::istringstream in("a\tI-X\n\nb\tO\nc\tBAD\n\nd\tO\ne\tI-Y\n\n");
  const ParseResult result = ParseConllLenient(in);
  ASSERT_EQ(result.diagnostics.size(), 3u);
  EXPECT_EQ(result.diagnostics[0].sentence, 0u);
  EXPECT_EQ(result.diagnostics[1].kind, CorpusError::Kind::kInvalidLabel);
  EXPECT_EQ(result.diagnostics[1].line, 4u);
  EXPECT_EQ(result.diagnostics[2].sentence, 2u);
  EXPECT_EQ(result.diagnostics[2].line, 7u);
}

TEST(WriteConllTest, SingleToken) {
  Corpus corpus;
  corpus.sentences.push_back(MakeSentence({"a"}, {"O"}));
  EXPECT_EQ(WriteConll(corpus), "a\tO\n\n");
}

TEST(WriteConllTest, LabelsAreEmittedVerbatim) {
  const std::string text =
      "Stir\tB-operation\nthe\tO\npowder\tB-Material\nslowly\tI-Material\n\n";
  EXPECT_EQ(WriteConll(ParseConll(text)), text);
}

TEST(WriteConllTest, EmptyCorpusWritesNothing) {
  EXPECT_EQ(WriteConll(Corpus{}), "");
}

TEST(WriteConllTest, RoundTripsRandomCorpora) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Corpus corpus;
    const std::size_t n = 1 + rng.UniformIndex(5);
    for (std::size_t i = 0; i < n; ++i) {
      corpus.sentences.push_back(RandomValidSentence(rng));
    }
    EXPECT_EQ(ParseConll(WriteConll(corpus)), corpus);
  }
}

TEST(Iob2Test, ParserAcceptsExactlyTheValidSequences) {
  // Random label sequences, some corrupted; the parser must agree with a
  // direct statement of the rule.
  Rng rng(11);
  const std::vector<std::string> alphabet = {"O", "B-A", "I-A", "B-B", "I-B"};
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<std::string> labels(1 + rng.UniformIndex(8));
    for (std::string& l : labels) l = alphabet[rng.UniformIndex(alphabet.size())];
    bool expected = true;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i][0] != 'I') continue;
      const std::string type = labels[i].substr(2);
      if (i == 0 || labels[i - 1] == "O" || labels[i - 1].substr(2) != type) {
        expected = false;
      }
    }
    const LabeledSentence s = FromLabels(labels);
    EXPECT_EQ(IsIob2Valid(s.labels), expected);
    Corpus corpus;
    corpus.sentences.push_back(s);
    const std::string text = WriteConll(corpus);
    bool parsed = true;
    try {
      ParseConll(text);
    } catch (const CorpusError&) {
      parsed = false;
    }
    EXPECT_EQ(parsed, expected);

    std::vector<Label> repaired = s.labels;
    RepairIob2(repaired);
    EXPECT_TRUE(IsIob2Valid(repaired));
    if (expected) EXPECT_EQ(repaired, s.labels);
  }
}

TEST(ExtractMentionsTest, SingleRun) {
  const auto mentions = ExtractMentions(
      MakeSentence({"New", "York", "wins"}, {"B-ORG", "I-ORG", "O"}));
  ASSERT_EQ(mentions.size(), 1u);
  EXPECT_EQ(mentions[0].Surface(), "New York");
  EXPECT_EQ(mentions[0].entity_type, "ORG");
}

TEST(ExtractMentionsTest, AllOutsideHasNone) {
  EXPECT_TRUE(ExtractMentions(FromLabels({"O", "O", "O"})).empty());
}

TEST(ExtractMentionsTest, CountMatchesBeginLabelsAndTokensAddUp) {
  Rng rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const LabeledSentence s = RandomValidSentence(rng);
    std::size_t begins = 0;
    std::size_t outside = 0;
    for (const Label& l : s.labels) {
      begins += l.is_begin();
      outside += l.is_outside();
    }
    const auto mentions = ExtractMentions(s);
    EXPECT_EQ(mentions.size(), begins);
    std::size_t mention_tokens = 0;
    for (const Mention& m : mentions) mention_tokens += m.tokens.size();
    EXPECT_EQ(mention_tokens + outside, s.size());
  }
}

TEST(ComputeStatsTest, HandCountedFixture) {
  const Corpus corpus = ParseConll(
      "EU\tB-ORG\nrejects\tO\nGerman\tB-MISC\ncall\tO\n\n"
      "Peter\tB-PER\nBlackburn\tI-PER\n\n"
      "EU\tB-ORG\nand\tO\neu\tB-ORG\nPeter\tB-PER\n\n");
  const CorpusStats stats = ComputeStats(corpus);
  EXPECT_EQ(stats.n_sentences, 3u);
  EXPECT_EQ(stats.n_mentions, 6u);
  // EU, German, Peter Blackburn, eu, Peter (case-sensitive).
  EXPECT_EQ(stats.n_unique_mentions, 5u);
  EXPECT_EQ(stats.n_entity_types, 3u);
  EXPECT_EQ(corpus.EntityTypes(), (std::set<std::string>{"MISC", "ORG", "PER"}));
}

TEST(ComputeStatsTest, EmptyCorpusIsAllZero) {
  EXPECT_EQ(ComputeStats(Corpus{}), CorpusStats{});
}

TEST(IsValidSentenceTest, ChecksShapeAndTokens) {
  EXPECT_TRUE(IsValidSentence(MakeSentence({"a"}, {"O"})));
  EXPECT_FALSE(IsValidSentence(LabeledSentence{}));
  LabeledSentence mismatched = MakeSentence({"a", "b"}, {"O", "O"});
  mismatched.labels.pop_back();
  EXPECT_FALSE(IsValidSentence(mismatched));
  EXPECT_FALSE(IsValidSentence(MakeSentence({"a b"}, {"O"})));
  EXPECT_FALSE(IsValidSentence(MakeSentence({"a"}, {"I-X"})));
}

}  // namespace
}  // namespace nerbt
