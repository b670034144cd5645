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

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace nerbt {
namespace {

constexpr std::string_view kDocStart = "-DOCSTART-";
constexpr std::string_view kWhitespace = " \t\r\n\v\f";

bool IsSpace(char c) { return kWhitespace.find(c) != std::string_view::npos; }

std::vector<std::string_view> SplitColumns(std::string_view line) {
  std::vector<std::string_view> columns;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsSpace(line[i])) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !IsSpace(line[j])) ++j;
    columns.push_back(line.substr(i, j - i));
    i = j;
  }
  return columns;
}

bool IsBlank(std::string_view line) {
  for (char c : line) {
    if (!IsSpace(c)) return false;
  }
  return true;
}

const char* KindName(CorpusError::Kind kind) {
  switch (kind) {
    case CorpusError::Kind::kMalformedLine:
      return "MalformedLine";
    case CorpusError::Kind::kInvalidLabel:
      return "InvalidLabel";
    case CorpusError::Kind::kInvalidTransition:
      return "InvalidTransition";
  }
  return "CorpusError";
}

// Shared by the strict and lenient entry points. In strict mode the first
// diagnostic is thrown.
class ConllReader {
 public:
  ConllReader(const ParseOptions& options, bool lenient)
      : options_(options), lenient_(lenient) {}

  ParseResult Read(std::istream& in) {
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      std::string_view view = line;
      if (line_number == 1 && view.starts_with("\xEF\xBB\xBF")) {
        view.remove_prefix(3);
      }
      if (IsBlank(view)) {
        FinishSentence();
        continue;
      }
      if (view.starts_with(kDocStart)) {
        FinishSentence();
        continue;
      }
      AddLine(view, line_number);
    }
    FinishSentence();
    return std::move(result_);
  }

 private:
  void Report(CorpusError::Kind kind, std::size_t line,
              const std::string& message) {
    if (!lenient_) throw CorpusError(kind, line, block_index_, message);
    result_.diagnostics.push_back({kind, line, block_index_, message});
  }

  void AddLine(std::string_view line, std::size_t line_number) {
    const std::vector<std::string_view> columns = SplitColumns(line);
    if (columns.size() < 2) {
      Report(CorpusError::Kind::kMalformedLine, line_number,
             "expected at least 2 columns, found " +
                 std::to_string(columns.size()));
      pending_broken_ = true;
      return;
    }
    std::optional<Label> label = Label::Parse(columns.back());
    if (!label) {
      Report(CorpusError::Kind::kInvalidLabel, line_number,
             "invalid label '" + std::string(columns.back()) + "'");
      pending_broken_ = true;
      return;
    }
    pending_.tokens.emplace_back(columns.front());
    pending_.labels.push_back(std::move(*label));
    pending_lines_.push_back(line_number);
  }

  void FinishSentence() {
    if (pending_.tokens.empty() && !pending_broken_) return;
    bool keep = !pending_broken_ && !pending_.tokens.empty();
    const std::vector<std::size_t> violations =
        FindTransitionViolations(pending_.labels);
    if (!violations.empty()) {
      if (options_.repair_iob) {
        for (std::size_t pos : violations) {
          result_.diagnostics.push_back(
              {CorpusError::Kind::kInvalidTransition, pending_lines_[pos],
               block_index_,
               "repaired I-" + pending_.labels[pos].entity_type() +
                   " without a valid predecessor to B-" +
                   pending_.labels[pos].entity_type()});
        }
        result_.repaired_labels += RepairIob2(pending_.labels);
      } else {
        for (std::size_t pos : violations) {
          Report(CorpusError::Kind::kInvalidTransition, pending_lines_[pos],
                 "I-" + pending_.labels[pos].entity_type() +
                     " does not follow B-" +
                     pending_.labels[pos].entity_type() + " or I-" +
                     pending_.labels[pos].entity_type());
        }
        keep = false;
      }
    }
    if (keep) result_.corpus.sentences.push_back(std::move(pending_));
    ++block_index_;
    pending_ = LabeledSentence();
    pending_lines_.clear();
    pending_broken_ = false;
  }

  ParseOptions options_;
  bool lenient_;
  ParseResult result_;
  LabeledSentence pending_;
  std::vector<std::size_t> pending_lines_;
  bool pending_broken_ = false;
  // Sentence index in the input, counting sentences that were dropped.
  std::size_t block_index_ = 0;
};

}  // namespace

Label Label::Begin(std::string entity_type) {
  return Label(Prefix::kBegin, std::move(entity_type));
}

Label Label::Inside(std::string entity_type) {
  return Label(Prefix::kInside, std::move(entity_type));
}

std::optional<Label> Label::Parse(std::string_view text) {
  if (text == "O") return Label();
  if (text.size() < 3 || text[1] != '-') return std::nullopt;
  std::string_view type = text.substr(2);
  for (char c : type) {
    if (IsSpace(c)) return std::nullopt;
  }
  if (text[0] == 'B') return Begin(std::string(type));
  if (text[0] == 'I') return Inside(std::string(type));
  return std::nullopt;
}

std::string Label::ToString() const {
  switch (prefix_) {
    case Prefix::kBegin:
      return "B-" + entity_type_;
    case Prefix::kInside:
      return "I-" + entity_type_;
    case Prefix::kOutside:
      break;
  }
  return "O";
}

bool IsValidToken(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (IsSpace(c)) return false;
  }
  return true;
}

std::set<std::string> Corpus::EntityTypes() const {
  std::set<std::string> types;
  for (const LabeledSentence& s : sentences) {
    for (const Label& label : s.labels) {
      if (!label.is_outside()) types.insert(label.entity_type());
    }
  }
  return types;
}

std::string Mention::Surface() const {
  std::string out;
  for (const std::string& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

CorpusError::CorpusError(Kind kind, std::size_t line, std::size_t sentence,
                         const std::string& message)
    : std::runtime_error(std::string(KindName(kind)) +
                         (line ? " at line " + std::to_string(line) : "") +
                         " (sentence " + std::to_string(sentence) +
                         "): " + message),
      kind_(kind),
      line_(line),
      sentence_(sentence) {}

std::vector<std::size_t> FindTransitionViolations(
    const std::vector<Label>& labels) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_inside()) continue;
    if (i == 0 || labels[i - 1].is_outside() ||
        labels[i - 1].entity_type() != labels[i].entity_type()) {
      out.push_back(i);
    }
  }
  return out;
}

bool IsIob2Valid(const std::vector<Label>& labels) {
  return FindTransitionViolations(labels).empty();
}

std::size_t RepairIob2(std::vector<Label>& labels) {
  // Left to right, so a repaired B-X validates the I-X run that follows it.
  std::size_t changed = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_inside()) continue;
    if (i == 0 || labels[i - 1].is_outside() ||
        labels[i - 1].entity_type() != labels[i].entity_type()) {
      labels[i] = Label::Begin(labels[i].entity_type());
      ++changed;
    }
  }
  return changed;
}

bool IsValidSentence(const LabeledSentence& s) {
  if (s.tokens.empty() || s.tokens.size() != s.labels.size()) return false;
  for (const std::string& token : s.tokens) {
    if (!IsValidToken(token)) return false;
  }
  for (const Label& label : s.labels) {
    if (label.is_outside() != label.entity_type().empty()) return false;
  }
  return IsIob2Valid(s.labels);
}

Corpus ParseConll(std::istream& in, const ParseOptions& options) {
  return ConllReader(options, /*lenient=*/false).Read(in).corpus;
}

Corpus ParseConll(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return ParseConll(in, options);
}

ParseResult ParseConllWithDiagnostics(std::istream& in,
                                      const ParseOptions& options) {
  return ConllReader(options, /*lenient=*/false).Read(in);
}

ParseResult ParseConllLenient(std::istream& in, const ParseOptions& options) {
  return ConllReader(options, /*lenient=*/true).Read(in);
}

Corpus ReadConllFile(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ParseConll(in, options);
}

void WriteConll(const Corpus& corpus, std::ostream& out) {
  for (const LabeledSentence& s : corpus.sentences) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      out << s.tokens[i] << '\t' << s.labels[i].ToString() << '\n';
    }
    out << '\n';
  }
}

std::string WriteConll(const Corpus& corpus) {
  std::ostringstream out;
  WriteConll(corpus, out);
  return out.str();
}

std::vector<Mention> ExtractMentions(const LabeledSentence& s) {
  std::vector<Mention> mentions;
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    if (!s.labels[i].is_begin()) continue;
    Mention m;
    m.entity_type = s.labels[i].entity_type();
    m.tokens.push_back(s.tokens[i]);
    while (i + 1 < s.labels.size() && s.labels[i + 1].is_inside() &&
           s.labels[i + 1].entity_type() == m.entity_type) {
      ++i;
      m.tokens.push_back(s.tokens[i]);
    }
    mentions.push_back(std::move(m));
  }
  return mentions;
}

CorpusStats ComputeStats(const Corpus& corpus) {
  CorpusStats stats;
  stats.n_sentences = corpus.sentences.size();
  std::unordered_set<std::string> unique;
  for (const LabeledSentence& s : corpus.sentences) {
    for (const Mention& m : ExtractMentions(s)) {
      ++stats.n_mentions;
      unique.insert(m.Surface());
    }
  }
  stats.n_unique_mentions = unique.size();
  stats.n_entity_types = corpus.EntityTypes().size();
  return stats;
}

}  // namespace nerbt
