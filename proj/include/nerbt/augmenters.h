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

#ifndef NERBT_AUGMENTERS_H_
#define NERBT_AUGMENTERS_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nerbt/corpus.h"
#include "nerbt/rng.h"

namespace nerbt {

// Tokens observed under each full label (B-X, I-X and O are distinct keys).
// Duplicates are kept, so uniform sampling over an entry follows corpus
// frequency.
struct LabelVocabulary {
  std::map<Label, std::vector<std::string>> tokens;
};

// Distinct mentions per entity type, in order of first occurrence.
struct MentionDictionary {
  std::map<std::string, std::vector<Mention>> mentions;
};

class LexiconError : public std::runtime_error {
 public:
  LexiconError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Lowercased token -> candidate synonyms, each a non-empty token sequence.
class SynonymLexicon {
 public:
  using Synonym = std::vector<std::string>;

  SynonymLexicon() = default;

  // Adds synonyms for `key`. Synonyms equal to the key (ignoring ASCII case)
  // and duplicates are discarded; keys left without synonyms are not stored.
  void Add(std::string_view key, const std::vector<Synonym>& synonyms);

  // Nullptr when the lowercased token has no entry.
  const std::vector<Synonym>* Find(std::string_view token) const;

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::vector<Synonym>>& entries() const {
    return entries_;
  }

  // `key<TAB>syn1|syn2|...`; multi-token synonyms use single spaces and lines
  // starting with '#' are comments.
  static SynonymLexicon Parse(std::istream& in);
  static SynonymLexicon Load(const std::string& path);

 private:
  std::map<std::string, std::vector<Synonym>> entries_;
};

std::string AsciiLower(std::string_view text);

LabelVocabulary BuildLabelVocabulary(const Corpus& corpus);
MentionDictionary BuildMentionDictionary(const Corpus& corpus);

// Replaces each token, with probability p, by a token drawn uniformly from
// vocab[label]. Labels never change. A selected token whose label has no
// vocabulary entry is kept and a warning is appended.
LabeledSentence LabelWiseTokenReplacement(
    const LabeledSentence& s, const LabelVocabulary& vocab, double p, Rng& rng,
    std::vector<std::string>* warnings = nullptr);

// Replaces each token, with probability p, by one of its synonyms. A
// multi-token synonym keeps the original label on its first token; the rest
// continue the entity (I-X) or stay O.
LabeledSentence SynonymReplacement(const LabeledSentence& s,
                                   const SynonymLexicon& lexicon, double p,
                                   Rng& rng);

// Replaces each mention, with probability p, by a different mention of the
// same type from the dictionary. Mentions without an alternative are kept.
LabeledSentence MentionReplacement(const LabeledSentence& s,
                                   const MentionDictionary& dictionary,
                                   double p, Rng& rng);

enum class ShuffleMode {
  kWithinSegments,  // permute tokens inside each selected segment
  kSegmentOrder,    // permute the order of whole segments
};

std::optional<ShuffleMode> ParseShuffleMode(std::string_view name);
std::string_view ShuffleModeName(ShuffleMode mode);

LabeledSentence ShuffleWithinSegments(
    const LabeledSentence& s, double p, Rng& rng,
    ShuffleMode mode = ShuffleMode::kWithinSegments);

}  // namespace nerbt

#endif  // NERBT_AUGMENTERS_H_
