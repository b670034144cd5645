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

#ifndef NERBT_PIPELINE_H_
#define NERBT_PIPELINE_H_

#include <cstdint>
#include <vector>

#include "nerbt/augment_driver.h"
#include "nerbt/augmenters.h"
#include "nerbt/backend.h"
#include "nerbt/backtranslate.h"
#include "nerbt/corpus.h"
#include "nerbt/translation_cache.h"

namespace nerbt {

inline constexpr std::uint64_t kDefaultSeed = 20211;

// Everything one augmentation run needs. Label vocabulary and mention
// dictionary are built from the input corpus itself.
struct AugmentRequest {
  std::vector<Method> methods = {Method::kBt};
  double p = 0.3;
  std::size_t multiplicity = 1;
  std::size_t retry_budget = 3;
  std::uint64_t seed = kDefaultSeed;
  std::size_t jobs = 1;
  ShuffleMode sis_mode = ShuffleMode::kWithinSegments;
  std::size_t min_tokens = kDefaultMinSegmentTokens;
  LanguageChain chain;

  // Required for sr and bt respectively; not owned.
  const SynonymLexicon* lexicon = nullptr;
  TranslationBackend* backend = nullptr;
  TranslationCache* cache = nullptr;

  // Throws std::invalid_argument on out-of-range values or missing
  // resources.
  void Validate() const;
};

AugmentedCorpus RunAugmentation(const Corpus& corpus,
                                const AugmentRequest& request);

}  // namespace nerbt

#endif  // NERBT_PIPELINE_H_
