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

#include "nerbt/augmenters.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <utility>

#include "nerbt/segmentation.h"

namespace nerbt {
namespace {

std::vector<std::string> SplitOnSpaces(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view Trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\r' ||
                           text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r' ||
                           text.back() == '\t')) {
    text.remove_suffix(1);
  }
  return text;
}

void Append(LabeledSentence& out, std::string token, Label label) {
  out.tokens.push_back(std::move(token));
  out.labels.push_back(std::move(label));
}

}  // namespace

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

LexiconError::LexiconError(std::size_t line, const std::string& message)
    : std::runtime_error("lexicon line " + std::to_string(line) + ": " +
                         message),
      line_(line) {}

void SynonymLexicon::Add(std::string_view key,
                         const std::vector<Synonym>& synonyms) {
  const std::string lowered = AsciiLower(key);
  std::vector<Synonym>& entry = entries_[lowered];
  for (const Synonym& synonym : synonyms) {
    if (synonym.empty()) continue;
    if (synonym.size() == 1 && AsciiLower(synonym.front()) == lowered) {
      continue;
    }
    if (std::find(entry.begin(), entry.end(), synonym) != entry.end()) {
      continue;
    }
    entry.push_back(synonym);
  }
  if (entry.empty()) entries_.erase(lowered);
}

const std::vector<SynonymLexicon::Synonym>* SynonymLexicon::Find(
    std::string_view token) const {
  auto it = entries_.find(AsciiLower(token));
  return it == entries_.end() ? nullptr : &it->second;
}

SynonymLexicon SynonymLexicon::Parse(std::istream& in) {
  SynonymLexicon lexicon;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw LexiconError(line_number, "expected key<TAB>synonyms");
    }
    std::string_view key = Trim(std::string_view(line).substr(0, tab));
    if (key.empty() || !IsValidToken(key)) {
      throw LexiconError(line_number, "key must be a single token");
    }
    std::string_view rest = std::string_view(line).substr(tab + 1);
    std::vector<Synonym> synonyms;
    while (true) {
      const std::size_t bar = rest.find('|');
      Synonym tokens = SplitOnSpaces(Trim(rest.substr(0, bar)));
      if (!tokens.empty()) synonyms.push_back(std::move(tokens));
      if (bar == std::string_view::npos) break;
      rest.remove_prefix(bar + 1);
    }
    lexicon.Add(key, synonyms);
  }
  return lexicon;
}

SynonymLexicon SynonymLexicon::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open lexicon " + path);
  return Parse(in);
}

LabelVocabulary BuildLabelVocabulary(const Corpus& corpus) {
  LabelVocabulary vocab;
  for (const LabeledSentence& s : corpus.sentences) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      vocab.tokens[s.labels[i]].push_back(s.tokens[i]);
    }
  }
  return vocab;
}

MentionDictionary BuildMentionDictionary(const Corpus& corpus) {
  MentionDictionary dictionary;
  std::map<std::string, std::set<std::string>> seen;
  for (const LabeledSentence& s : corpus.sentences) {
    for (Mention& m : ExtractMentions(s)) {
      if (seen[m.entity_type].insert(m.Surface()).second) {
        const std::string type = m.entity_type;
        dictionary.mentions[type].push_back(std::move(m));
      }
    }
  }
  return dictionary;
}

LabeledSentence LabelWiseTokenReplacement(const LabeledSentence& s,
                                          const LabelVocabulary& vocab,
                                          double p, Rng& rng,
                                          std::vector<std::string>* warnings) {
  LabeledSentence out = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!rng.Bernoulli(p)) continue;
    auto it = vocab.tokens.find(s.labels[i]);
    if (it == vocab.tokens.end() || it->second.empty()) {
      if (warnings) {
        warnings->push_back("MissingLabelVocab: no tokens for label " +
                            s.labels[i].ToString());
      }
      continue;
    }
    out.tokens[i] = it->second[rng.UniformIndex(it->second.size())];
  }
  return out;
}

LabeledSentence SynonymReplacement(const LabeledSentence& s,
                                   const SynonymLexicon& lexicon, double p,
                                   Rng& rng) {
  LabeledSentence out;
  out.tokens.reserve(s.size());
  out.labels.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Label& label = s.labels[i];
    const std::vector<SynonymLexicon::Synonym>* synonyms =
        rng.Bernoulli(p) ? lexicon.Find(s.tokens[i]) : nullptr;
    if (synonyms == nullptr) {
      Append(out, s.tokens[i], label);
      continue;
    }
    const SynonymLexicon::Synonym& chosen =
        (*synonyms)[rng.UniformIndex(synonyms->size())];
    Append(out, chosen.front(), label);
    const Label continuation = label.is_outside()
                                   ? Label::Outside()
                                   : Label::Inside(label.entity_type());
    for (std::size_t k = 1; k < chosen.size(); ++k) {
      Append(out, chosen[k], continuation);
    }
  }
  return out;
}

LabeledSentence MentionReplacement(const LabeledSentence& s,
                                   const MentionDictionary& dictionary,
                                   double p, Rng& rng) {
  LabeledSentence out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!s.labels[i].is_begin()) {
      Append(out, s.tokens[i], s.labels[i]);
      ++i;
      continue;
    }
    const std::string& type = s.labels[i].entity_type();
    std::size_t end = i + 1;
    while (end < s.size() && s.labels[end].is_inside() &&
           s.labels[end].entity_type() == type) {
      ++end;
    }
    const std::vector<std::string> current(s.tokens.begin() + i,
                                           s.tokens.begin() + end);
    const std::vector<std::string>* replacement = nullptr;
    if (rng.Bernoulli(p)) {
      auto it = dictionary.mentions.find(type);
      if (it != dictionary.mentions.end()) {
        std::vector<const Mention*> alternatives;
        for (const Mention& m : it->second) {
          if (m.tokens != current) alternatives.push_back(&m);
        }
        if (!alternatives.empty()) {
          replacement =
              &alternatives[rng.UniformIndex(alternatives.size())]->tokens;
        }
      }
    }
    const std::vector<std::string>& emitted =
        replacement ? *replacement : current;
    for (std::size_t k = 0; k < emitted.size(); ++k) {
      Append(out, emitted[k], k == 0 ? Label::Begin(type) : Label::Inside(type));
    }
    i = end;
  }
  return out;
}

std::optional<ShuffleMode> ParseShuffleMode(std::string_view name) {
  if (name == "within" || name == "within-segments") {
    return ShuffleMode::kWithinSegments;
  }
  if (name == "order" || name == "segment-order") {
    return ShuffleMode::kSegmentOrder;
  }
  return std::nullopt;
}

std::string_view ShuffleModeName(ShuffleMode mode) {
  return mode == ShuffleMode::kWithinSegments ? "within-segments"
                                              : "segment-order";
}

LabeledSentence ShuffleWithinSegments(const LabeledSentence& s, double p,
                                      Rng& rng, ShuffleMode mode) {
  std::vector<Segment> segments = SegmentSentence(s);
  LabeledSentence out;
  out.tokens.reserve(s.size());
  out.labels.reserve(s.size());

  if (mode == ShuffleMode::kSegmentOrder) {
    if (rng.Bernoulli(p)) rng.Shuffle(std::span<Segment>(segments));
    for (const Segment& seg : segments) {
      for (std::size_t k = seg.start; k < seg.end; ++k) {
        Append(out, s.tokens[k], s.labels[k]);
      }
    }
    return out;
  }

  for (const Segment& seg : segments) {
    std::vector<std::string> tokens(s.tokens.begin() + seg.start,
                                    s.tokens.begin() + seg.end);
    if (rng.Bernoulli(p)) rng.Shuffle(std::span<std::string>(tokens));
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      Label label;
      if (seg.is_mention()) {
        label = k == 0 ? Label::Begin(seg.entity_type)
                       : Label::Inside(seg.entity_type);
      }
      Append(out, std::move(tokens[k]), std::move(label));
    }
  }
  return out;
}

}  // namespace nerbt
