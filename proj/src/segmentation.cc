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

#include "nerbt/segmentation.h"

#include <utility>

namespace nerbt {

std::vector<Segment> SegmentSentence(const LabeledSentence& s) {
  std::vector<Segment> segments;
  const std::vector<Label>& labels = s.labels;
  std::size_t i = 0;
  while (i < labels.size()) {
    Segment seg;
    seg.start = i;
    if (labels[i].is_outside()) {
      seg.kind = Segment::Kind::kContext;
      while (i < labels.size() && labels[i].is_outside()) ++i;
    } else {
      // A valid sentence starts every mention with B-; an I- here only
      // happens for unvalidated input and is treated as a mention start.
      seg.kind = Segment::Kind::kMention;
      seg.entity_type = labels[i].entity_type();
      ++i;
      while (i < labels.size() && labels[i].is_inside() &&
             labels[i].entity_type() == seg.entity_type) {
        ++i;
      }
    }
    seg.end = i;
    segments.push_back(std::move(seg));
  }
  return segments;
}

SegmentPlan PlanCandidates(std::vector<Segment> segments,
                           std::size_t min_tokens) {
  SegmentPlan plan;
  plan.segments = std::move(segments);
  for (std::size_t i = 0; i < plan.segments.size(); ++i) {
    const Segment& seg = plan.segments[i];
    if (seg.is_context() && seg.length() >= min_tokens) {
      plan.candidates.push_back(i);
    }
  }
  return plan;
}

}  // namespace nerbt
