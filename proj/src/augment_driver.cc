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

#include "nerbt/augment_driver.h"

#include "nerbt/parallel.h"

namespace nerbt {

std::optional<Method> ParseMethod(std::string_view name) {
  for (Method method : kAllMethods) {
    if (MethodName(method) == name) return method;
  }
  return std::nullopt;
}

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kLwtr:
      return "lwtr";
    case Method::kSr:
      return "sr";
    case Method::kMr:
      return "mr";
    case Method::kSis:
      return "sis";
    case Method::kBt:
      return "bt";
  }
  return "unknown";
}

std::uint64_t StreamSeed(std::uint64_t run_seed, Method method,
                         std::size_t sentence, std::size_t slot,
                         std::size_t attempt) {
  return DeriveSeed(run_seed, {static_cast<std::uint64_t>(method), sentence,
                               slot, attempt});
}

RunCounters& RunCounters::operator+=(const RunCounters& other) {
  generated += other.generated;
  dropped += other.dropped;
  failed += other.failed;
  attempts += other.attempts;
  backend_calls += other.backend_calls;
  backend_texts += other.backend_texts;
  cache_hits += other.cache_hits;
  cache_misses += other.cache_misses;
  warnings.insert(warnings.end(), other.warnings.begin(),
                  other.warnings.end());
  failed_sentences.insert(failed_sentences.end(),
                          other.failed_sentences.begin(),
                          other.failed_sentences.end());
  return *this;
}

Augmentations GenerateAugmentations(const Corpus& corpus, Method method,
                                    const SentenceTransform& transform,
                                    std::size_t multiplicity,
                                    std::size_t retry_budget,
                                    std::uint64_t run_seed, std::size_t jobs) {
  const std::size_t n = corpus.sentences.size();
  Augmentations result;
  result.method = method;
  result.per_sentence.resize(n);

  struct SentenceTally {
    std::size_t dropped = 0;
    std::size_t attempts = 0;
    std::vector<std::string> warnings;
  };
  std::vector<SentenceTally> tallies(n);

  ParallelFor(n, jobs, [&](std::size_t i) {
    const LabeledSentence& source = corpus.sentences[i];
    SentenceTally& tally = tallies[i];
    for (std::size_t slot = 0; slot < multiplicity; ++slot) {
      bool kept = false;
      for (std::size_t attempt = 0; attempt <= retry_budget; ++attempt) {
        ++tally.attempts;
        Rng rng(StreamSeed(run_seed, method, i, slot, attempt));
        LabeledSentence candidate = transform(source, rng, &tally.warnings);
        if (candidate != source) {
          result.per_sentence[i].push_back(std::move(candidate));
          kept = true;
          break;
        }
      }
      if (!kept) ++tally.dropped;
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    result.counters.generated += result.per_sentence[i].size();
    result.counters.dropped += tallies[i].dropped;
    result.counters.attempts += tallies[i].attempts;
    for (std::string& w : tallies[i].warnings) {
      result.counters.warnings.push_back("sentence " + std::to_string(i) +
                                         ": " + std::move(w));
    }
  }
  return result;
}

AugmentedCorpus Assemble(const Corpus& original,
                         std::span<const Augmentations> parts) {
  AugmentedCorpus out;
  out.counters.originals = original.sentences.size();
  for (const Augmentations& part : parts) out.counters += part.counters;
  for (std::size_t i = 0; i < original.sentences.size(); ++i) {
    out.corpus.sentences.push_back(original.sentences[i]);
    for (const Augmentations& part : parts) {
      const std::vector<LabeledSentence>& augs = part.per_sentence[i];
      out.corpus.sentences.insert(out.corpus.sentences.end(), augs.begin(),
                                  augs.end());
    }
  }
  return out;
}

}  // namespace nerbt
