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

#ifndef NERBT_AUGMENT_DRIVER_H_
#define NERBT_AUGMENT_DRIVER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nerbt/corpus.h"
#include "nerbt/rng.h"

namespace nerbt {

enum class Method { kLwtr, kSr, kMr, kSis, kBt };

inline constexpr std::array<Method, 5> kAllMethods = {
    Method::kLwtr, Method::kSr, Method::kMr, Method::kSis, Method::kBt};

std::optional<Method> ParseMethod(std::string_view name);
std::string_view MethodName(Method method);

// Seed of the RNG stream for one augmentation attempt. Depends only on its
// coordinates, never on scheduling, so output is independent of --jobs.
std::uint64_t StreamSeed(std::uint64_t run_seed, Method method,
                         std::size_t sentence, std::size_t slot,
                         std::size_t attempt);

struct RunCounters {
  std::size_t originals = 0;
  std::size_t generated = 0;  // augmentations kept
  std::size_t dropped = 0;    // slots identical to the source on every attempt
  std::size_t failed = 0;     // slots lost to backend errors
  std::size_t attempts = 0;
  std::size_t backend_calls = 0;
  std::size_t backend_texts = 0;
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
  std::vector<std::string> warnings;
  std::vector<std::size_t> failed_sentences;

  RunCounters& operator+=(const RunCounters& other);
};

// Augmentations of one method, grouped by source sentence in slot order.
struct Augmentations {
  Method method = Method::kLwtr;
  std::vector<std::vector<LabeledSentence>> per_sentence;
  RunCounters counters;
};

struct AugmentedCorpus {
  Corpus corpus;
  RunCounters counters;
};

using SentenceTransform = std::function<LabeledSentence(
    const LabeledSentence&, Rng&, std::vector<std::string>* warnings)>;

// For every sentence, fills `multiplicity` slots. A slot whose result equals
// the source sentence is retried with a fresh stream up to `retry_budget`
// more times, then dropped.
Augmentations GenerateAugmentations(const Corpus& corpus, Method method,
                                    const SentenceTransform& transform,
                                    std::size_t multiplicity,
                                    std::size_t retry_budget,
                                    std::uint64_t run_seed, std::size_t jobs);

// Each original sentence followed by its augmentations, method by method.
AugmentedCorpus Assemble(const Corpus& original,
                         std::span<const Augmentations> parts);

}  // namespace nerbt

#endif  // NERBT_AUGMENT_DRIVER_H_
