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

#ifndef NERBT_SEGMENTATION_H_
#define NERBT_SEGMENTATION_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nerbt/corpus.h"

namespace nerbt {

// A maximal run of tokens sharing one label: either a whole entity mention
// (B-X I-X*) or a run of O tokens. Covers [start, end).
struct Segment {
  enum class Kind { kMention, kContext };

  std::size_t start = 0;
  std::size_t end = 0;
  Kind kind = Kind::kContext;
  std::string entity_type;  // empty for context segments

  std::size_t length() const { return end - start; }
  bool is_mention() const { return kind == Kind::kMention; }
  bool is_context() const { return kind == Kind::kContext; }

  std::span<const std::string> Tokens(const LabeledSentence& s) const {
    return std::span<const std::string>(s.tokens).subspan(start, length());
  }

  friend bool operator==(const Segment&, const Segment&) = default;
};

inline constexpr std::size_t kDefaultMinSegmentTokens = 3;

struct SegmentPlan {
  std::vector<Segment> segments;
  // Indices into `segments` of backtranslation candidates, ascending.
  std::vector<std::size_t> candidates;
};

// Splits a valid sentence into its unique maximal partition. Every B- label
// opens a new mention segment, so adjacent mentions of one type stay apart.
std::vector<Segment> SegmentSentence(const LabeledSentence& s);

// Candidates are the context segments with at least `min_tokens` tokens.
SegmentPlan PlanCandidates(std::vector<Segment> segments,
                           std::size_t min_tokens = kDefaultMinSegmentTokens);

}  // namespace nerbt

#endif  // NERBT_SEGMENTATION_H_
