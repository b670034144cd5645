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

#ifndef NERBT_BACKTRANSLATE_H_
#define NERBT_BACKTRANSLATE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nerbt/augment_driver.h"
#include "nerbt/backend.h"
#include "nerbt/corpus.h"
#include "nerbt/rng.h"
#include "nerbt/segmentation.h"
#include "nerbt/translation_cache.h"

namespace nerbt {

struct BacktranslationConfig {
  // Probability that each eligible context segment is backtranslated.
  double p = 0.5;
  std::size_t min_tokens = kDefaultMinSegmentTokens;
  LanguageChain chain;
  std::size_t multiplicity = 1;
  std::size_t retry_budget = 3;

  // Throws std::invalid_argument when p is outside [0, 1], multiplicity is
  // 0, or min_tokens is 0.
  void Validate() const;
};

struct ChainStats {
  std::size_t backend_calls = 0;
  std::size_t backend_texts = 0;
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
};

// Sends each distinct text through every hop of `chain`, re-batching to the
// backend's batch limit and running up to `max_concurrency` batches at once.
// With a cache, the full-chain result is looked up before any backend call
// and stored afterwards. Output order matches input order.
std::vector<std::string> TranslateChain(std::span<const std::string> texts,
                                        const LanguageChain& chain,
                                        TranslationBackend& backend,
                                        TranslationCache* cache = nullptr,
                                        ChainStats* stats = nullptr,
                                        std::size_t max_concurrency = 1);

// Draws one Bernoulli(p) per candidate context segment, in sentence order.
std::vector<Segment> SelectSegments(const LabeledSentence& s,
                                    const BacktranslationConfig& config,
                                    Rng& rng);

// Replaces each selected segment with its whitespace-tokenized translation,
// labelled O. An empty translation keeps the original segment and appends an
// EmptyTranslation warning.
LabeledSentence SpliceTranslations(const LabeledSentence& s,
                                   std::span<const Segment> selected,
                                   std::span<const std::string> translations,
                                   std::vector<std::string>* warnings = nullptr);

// One backtranslation augmentation of `s`. Mention tokens and labels are
// never sent to the backend and come back unchanged.
LabeledSentence BacktranslateSentence(
    const LabeledSentence& s, const BacktranslationConfig& config,
    TranslationBackend& backend, Rng& rng, TranslationCache* cache = nullptr,
    std::vector<std::string>* warnings = nullptr, ChainStats* stats = nullptr);

// Backtranslation slots for every sentence. Work proceeds in rounds, one per
// attempt, so each round's segments travel to the backend in one batched,
// deduplicated chain call. A backend failure marks that round's slots as
// failed and leaves their sentences unaugmented.
Augmentations GenerateBacktranslations(const Corpus& corpus,
                                       const BacktranslationConfig& config,
                                       TranslationBackend& backend,
                                       std::uint64_t run_seed,
                                       TranslationCache* cache = nullptr,
                                       std::size_t jobs = 1);

// Originals, each followed by up to `multiplicity` backtranslations.
AugmentedCorpus AugmentCorpusBt(const Corpus& corpus,
                                const BacktranslationConfig& config,
                                TranslationBackend& backend,
                                std::uint64_t run_seed,
                                TranslationCache* cache = nullptr,
                                std::size_t jobs = 1);

}  // namespace nerbt

#endif  // NERBT_BACKTRANSLATE_H_
