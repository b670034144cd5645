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

#include "nerbt/pipeline.h"

#include <stdexcept>

namespace nerbt {

void AugmentRequest::Validate() const {
  if (methods.empty()) throw std::invalid_argument("no augmentation method");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0, 1]");
  }
  if (multiplicity == 0) {
    throw std::invalid_argument("multiplicity must be at least 1");
  }
  if (min_tokens == 0) {
    throw std::invalid_argument("min_tokens must be at least 1");
  }
  for (Method method : methods) {
    if (method == Method::kSr && lexicon == nullptr) {
      throw std::invalid_argument("sr needs a synonym lexicon");
    }
    if (method == Method::kBt && backend == nullptr) {
      throw std::invalid_argument("bt needs a translation backend");
    }
  }
}

AugmentedCorpus RunAugmentation(const Corpus& corpus,
                                const AugmentRequest& request) {
  request.Validate();
  const double p = request.p;
  LabelVocabulary vocab;
  MentionDictionary dictionary;
  for (Method method : request.methods) {
    if (method == Method::kLwtr && vocab.tokens.empty()) {
      vocab = BuildLabelVocabulary(corpus);
    }
    if (method == Method::kMr && dictionary.mentions.empty()) {
      dictionary = BuildMentionDictionary(corpus);
    }
  }

  std::vector<Augmentations> parts;
  for (Method method : request.methods) {
    if (method == Method::kBt) {
      BacktranslationConfig config;
      config.p = p;
      config.min_tokens = request.min_tokens;
      config.chain = request.chain;
      config.multiplicity = request.multiplicity;
      config.retry_budget = request.retry_budget;
      parts.push_back(GenerateBacktranslations(corpus, config,
                                               *request.backend, request.seed,
                                               request.cache, request.jobs));
      continue;
    }
    SentenceTransform transform;
    switch (method) {
      case Method::kLwtr:
        transform = [&](const LabeledSentence& s, Rng& rng,
                        std::vector<std::string>* warnings) {
          return LabelWiseTokenReplacement(s, vocab, p, rng, warnings);
        };
        break;
      case Method::kSr:
        transform = [&](const LabeledSentence& s, Rng& rng,
                        std::vector<std::string>*) {
          return SynonymReplacement(s, *request.lexicon, p, rng);
        };
        break;
      case Method::kMr:
        transform = [&](const LabeledSentence& s, Rng& rng,
                        std::vector<std::string>*) {
          return MentionReplacement(s, dictionary, p, rng);
        };
        break;
      case Method::kSis:
        transform = [&](const LabeledSentence& s, Rng& rng,
                        std::vector<std::string>*) {
          return ShuffleWithinSegments(s, p, rng, request.sis_mode);
        };
        break;
      case Method::kBt:
        break;
    }
    parts.push_back(GenerateAugmentations(corpus, method, transform,
                                          request.multiplicity,
                                          request.retry_budget, request.seed,
                                          request.jobs));
  }
  return Assemble(corpus, parts);
}

}  // namespace nerbt
