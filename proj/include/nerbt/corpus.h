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

#ifndef NERBT_CORPUS_H_
#define NERBT_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nerbt {

// A BIO label. `O` carries no entity type; `B-X` and `I-X` always do.
class Label {
 public:
  enum class Prefix { kBegin, kInside, kOutside };

  Label() = default;  // O

  static Label Outside() { return Label(); }
  static Label Begin(std::string entity_type);
  static Label Inside(std::string entity_type);

  // Parses `O`, `B-<type>` or `I-<type>`. Returns nullopt for anything else.
  static std::optional<Label> Parse(std::string_view text);

  Prefix prefix() const { return prefix_; }
  const std::string& entity_type() const { return entity_type_; }
  bool is_outside() const { return prefix_ == Prefix::kOutside; }
  bool is_begin() const { return prefix_ == Prefix::kBegin; }
  bool is_inside() const { return prefix_ == Prefix::kInside; }

  std::string ToString() const;

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;

 private:
  Label(Prefix prefix, std::string entity_type)
      : prefix_(prefix), entity_type_(std::move(entity_type)) {}

  Prefix prefix_ = Prefix::kOutside;
  std::string entity_type_;
};

// True iff `text` is a usable token: non-empty, no ASCII whitespace.
bool IsValidToken(std::string_view text);

// Parallel token/label arrays. The constructor does not validate; use
// ValidateSentence or the parser to establish the IOB2 invariant.
struct LabeledSentence {
  std::vector<std::string> tokens;
  std::vector<Label> labels;

  std::size_t size() const { return tokens.size(); }

  friend bool operator==(const LabeledSentence&,
                         const LabeledSentence&) = default;
};

struct Corpus {
  std::vector<LabeledSentence> sentences;

  // Union of entity types over all labels, sorted.
  std::set<std::string> EntityTypes() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct Mention {
  std::vector<std::string> tokens;
  std::string entity_type;

  // Tokens joined with single spaces.
  std::string Surface() const;

  friend bool operator==(const Mention&, const Mention&) = default;
};

struct CorpusStats {
  std::size_t n_sentences = 0;
  std::size_t n_mentions = 0;
  std::size_t n_unique_mentions = 0;
  std::size_t n_entity_types = 0;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

class CorpusError : public std::runtime_error {
 public:
  enum class Kind { kMalformedLine, kInvalidLabel, kInvalidTransition };

  CorpusError(Kind kind, std::size_t line, std::size_t sentence,
              const std::string& message);

  Kind kind() const { return kind_; }
  // 1-based input line, 0 when not applicable.
  std::size_t line() const { return line_; }
  // 0-based sentence index within the corpus.
  std::size_t sentence() const { return sentence_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t sentence_;
};

// Positions of every I-X whose predecessor is neither B-X nor I-X.
std::vector<std::size_t> FindTransitionViolations(
    const std::vector<Label>& labels);

bool IsIob2Valid(const std::vector<Label>& labels);

// Rewrites each I-X without a valid predecessor as B-X. Returns the number of
// labels changed.
std::size_t RepairIob2(std::vector<Label>& labels);

// Full sentence check: non-empty, equal lengths, valid tokens, IOB2.
bool IsValidSentence(const LabeledSentence& s);

struct ParseOptions {
  bool repair_iob = false;
};

struct ParseDiagnostic {
  CorpusError::Kind kind;
  std::size_t line;
  std::size_t sentence;
  std::string message;
};

struct ParseResult {
  Corpus corpus;
  // Violations that were repaired (repair_iob) or, for ParseConllLenient,
  // every violation found.
  std::vector<ParseDiagnostic> diagnostics;
  std::size_t repaired_labels = 0;
};

// Reads a CoNLL-style column file: token in the first column, label in the
// last, tab or space separated. Blank lines end sentences and lines starting
// with -DOCSTART- are skipped. Throws CorpusError on the first problem unless
// `options.repair_iob` turns transition errors into repairs.
Corpus ParseConll(std::istream& in, const ParseOptions& options = {});
Corpus ParseConll(std::string_view text, const ParseOptions& options = {});
ParseResult ParseConllWithDiagnostics(std::istream& in,
                                      const ParseOptions& options = {});

// Like ParseConll but collects every error instead of stopping at the first.
// Sentences with transition errors are still returned (repaired when
// requested); malformed lines and bad labels drop their line.
ParseResult ParseConllLenient(std::istream& in,
                              const ParseOptions& options = {});

Corpus ReadConllFile(const std::string& path, const ParseOptions& options = {});

// `token<TAB>label` per line, blank line after each sentence.
void WriteConll(const Corpus& corpus, std::ostream& out);
std::string WriteConll(const Corpus& corpus);

std::vector<Mention> ExtractMentions(const LabeledSentence& s);

CorpusStats ComputeStats(const Corpus& corpus);

}  // namespace nerbt

#endif  // NERBT_CORPUS_H_
