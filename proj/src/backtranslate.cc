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

#include "nerbt/backtranslate.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "nerbt/dictionary_backend.h"
#include "nerbt/parallel.h"

namespace nerbt {

void BacktranslationConfig::Validate() const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0, 1]");
  }
  if (multiplicity == 0) {
    throw std::invalid_argument("multiplicity must be at least 1");
  }
  if (min_tokens == 0) {
    throw std::invalid_argument("min_tokens must be at least 1");
  }
}

std::vector<std::string> TranslateChain(std::span<const std::string> texts,
                                        const LanguageChain& chain,
                                        TranslationBackend& backend,
                                        TranslationCache* cache,
                                        ChainStats* stats,
                                        std::size_t max_concurrency) {
  if (texts.empty()) return {};
  const auto hops = chain.Hops();
  for (const auto& [from, to] : hops) {
    if (!backend.Supports(from, to)) {
      throw BackendUnavailable(backend.name() + " backend cannot translate " +
                               from + "->" + to);
    }
  }

  std::vector<std::string> unique;
  std::vector<std::size_t> slot_of(texts.size());
  {
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < texts.size(); ++i) {
      auto [it, inserted] = index.try_emplace(texts[i], unique.size());
      if (inserted) unique.push_back(texts[i]);
      slot_of[i] = it->second;
    }
  }

  ChainStats local;
  std::vector<std::string> results(unique.size());
  std::vector<std::string> keys;
  std::vector<std::size_t> todo;
  if (cache != nullptr) keys.resize(unique.size());
  for (std::size_t u = 0; u < unique.size(); ++u) {
    if (cache != nullptr) {
      keys[u] = TranslationCache::Key(unique[u], chain);
      if (std::optional<std::string> hit = cache->Lookup(keys[u])) {
        results[u] = std::move(*hit);
        ++local.cache_hits;
        continue;
      }
      ++local.cache_misses;
    }
    todo.push_back(u);
  }

  std::vector<std::string> current;
  current.reserve(todo.size());
  for (std::size_t u : todo) current.push_back(unique[u]);

  if (!current.empty()) {
    for (const auto& [from, to] : hops) {
      const std::size_t limit = backend.max_batch_size() == 0
                                    ? current.size()
                                    : backend.max_batch_size();
      const std::size_t n_batches = (current.size() + limit - 1) / limit;
      std::vector<std::vector<std::string>> outputs(n_batches);
      const std::span<const std::string> all(current);
      ParallelFor(n_batches, max_concurrency, [&](std::size_t b) {
        const std::size_t begin = b * limit;
        const std::size_t count = std::min(limit, current.size() - begin);
        outputs[b] = backend.Translate(from, to, all.subspan(begin, count));
        if (outputs[b].size() != count) {
          throw MalformedResponse(backend.name() + " backend returned " +
                                  std::to_string(outputs[b].size()) +
                                  " translations for " +
                                  std::to_string(count) + " texts");
        }
      });
      local.backend_calls += n_batches;
      local.backend_texts += current.size();
      std::vector<std::string> next;
      next.reserve(current.size());
      for (std::vector<std::string>& batch : outputs) {
        for (std::string& text : batch) next.push_back(std::move(text));
      }
      current = std::move(next);
    }
    for (std::size_t j = 0; j < todo.size(); ++j) {
      if (cache != nullptr) cache->Insert(keys[todo[j]], current[j]);
      results[todo[j]] = std::move(current[j]);
    }
  }

  if (stats != nullptr) {
    stats->backend_calls += local.backend_calls;
    stats->backend_texts += local.backend_texts;
    stats->cache_hits += local.cache_hits;
    stats->cache_misses += local.cache_misses;
  }

  std::vector<std::string> out;
  out.reserve(texts.size());
  for (std::size_t slot : slot_of) out.push_back(results[slot]);
  return out;
}

std::vector<Segment> SelectSegments(const LabeledSentence& s,
                                    const BacktranslationConfig& config,
                                    Rng& rng) {
  SegmentPlan plan = PlanCandidates(SegmentSentence(s), config.min_tokens);
  std::vector<Segment> selected;
  for (std::size_t index : plan.candidates) {
    if (rng.Bernoulli(config.p)) selected.push_back(plan.segments[index]);
  }
  return selected;
}

LabeledSentence SpliceTranslations(const LabeledSentence& s,
                                   std::span<const Segment> selected,
                                   std::span<const std::string> translations,
                                   std::vector<std::string>* warnings) {
  if (selected.size() != translations.size()) {
    throw std::invalid_argument("one translation per selected segment");
  }
  LabeledSentence out;
  std::size_t cursor = 0;
  auto copy_until = [&](std::size_t end) {
    for (; cursor < end; ++cursor) {
      out.tokens.push_back(s.tokens[cursor]);
      out.labels.push_back(s.labels[cursor]);
    }
  };
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const Segment& seg = selected[i];
    copy_until(seg.start);
    std::vector<std::string> replacement = SplitWhitespace(translations[i]);
    if (replacement.empty()) {
      if (warnings != nullptr) {
        warnings->push_back("EmptyTranslation: kept segment [" +
                            std::to_string(seg.start) + ", " +
                            std::to_string(seg.end) + ")");
      }
      copy_until(seg.end);
      continue;
    }
    for (std::string& token : replacement) {
      out.tokens.push_back(std::move(token));
      out.labels.push_back(Label::Outside());
    }
    cursor = seg.end;
  }
  copy_until(s.size());
  return out;
}

LabeledSentence BacktranslateSentence(const LabeledSentence& s,
                                      const BacktranslationConfig& config,
                                      TranslationBackend& backend, Rng& rng,
                                      TranslationCache* cache,
                                      std::vector<std::string>* warnings,
                                      ChainStats* stats) {
  const std::vector<Segment> selected = SelectSegments(s, config, rng);
  if (selected.empty()) return s;
  std::vector<std::string> texts;
  texts.reserve(selected.size());
  for (const Segment& seg : selected) texts.push_back(JoinTokens(seg.Tokens(s)));
  const std::vector<std::string> translations =
      TranslateChain(texts, config.chain, backend, cache, stats);
  return SpliceTranslations(s, selected, translations, warnings);
}

Augmentations GenerateBacktranslations(const Corpus& corpus,
                                       const BacktranslationConfig& config,
                                       TranslationBackend& backend,
                                       std::uint64_t run_seed,
                                       TranslationCache* cache,
                                       std::size_t jobs) {
  config.Validate();
  const std::size_t n = corpus.sentences.size();
  Augmentations result;
  result.method = Method::kBt;
  RunCounters& counters = result.counters;

  struct Slot {
    std::size_t sentence;
    std::size_t index;
  };
  // kept[i][k] holds slot k's accepted augmentation of sentence i.
  std::vector<std::vector<std::optional<LabeledSentence>>> kept(
      n, std::vector<std::optional<LabeledSentence>>(config.multiplicity));
  std::vector<Slot> pending;
  pending.reserve(n * config.multiplicity);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < config.multiplicity; ++k) {
      pending.push_back({i, k});
    }
  }

  for (std::size_t attempt = 0;
       attempt <= config.retry_budget && !pending.empty(); ++attempt) {
    counters.attempts += pending.size();
    std::vector<std::vector<Segment>> selections(pending.size());
    ParallelFor(pending.size(), jobs, [&](std::size_t j) {
      const Slot& slot = pending[j];
      Rng rng(StreamSeed(run_seed, Method::kBt, slot.sentence, slot.index,
                         attempt));
      selections[j] =
          SelectSegments(corpus.sentences[slot.sentence], config, rng);
    });

    std::vector<std::string> texts;
    std::vector<std::size_t> first_text(pending.size());
    for (std::size_t j = 0; j < pending.size(); ++j) {
      first_text[j] = texts.size();
      const LabeledSentence& s = corpus.sentences[pending[j].sentence];
      for (const Segment& seg : selections[j]) {
        texts.push_back(JoinTokens(seg.Tokens(s)));
      }
    }

    std::vector<std::string> translations;
    bool round_failed = false;
    if (!texts.empty()) {
      ChainStats stats;
      try {
        translations = TranslateChain(texts, config.chain, backend, cache,
                                      &stats, jobs);
      } catch (const BackendUnavailable& e) {
        round_failed = true;
        counters.warnings.push_back(std::string("BackendUnavailable: ") +
                                    e.what());
      }
      counters.backend_calls += stats.backend_calls;
      counters.backend_texts += stats.backend_texts;
      counters.cache_hits += stats.cache_hits;
      counters.cache_misses += stats.cache_misses;
    }

    std::vector<std::optional<LabeledSentence>> spliced(pending.size());
    std::vector<std::vector<std::string>> slot_warnings(pending.size());
    ParallelFor(pending.size(), jobs, [&](std::size_t j) {
      if (selections[j].empty() || round_failed) return;
      const std::span<const std::string> mine =
          std::span<const std::string>(translations)
              .subspan(first_text[j], selections[j].size());
      spliced[j] = SpliceTranslations(corpus.sentences[pending[j].sentence],
                                      selections[j], mine, &slot_warnings[j]);
    });

    std::vector<Slot> next;
    for (std::size_t j = 0; j < pending.size(); ++j) {
      const Slot& slot = pending[j];
      for (std::string& w : slot_warnings[j]) {
        counters.warnings.push_back("sentence " +
                                    std::to_string(slot.sentence) + ": " +
                                    std::move(w));
      }
      if (round_failed && !selections[j].empty()) {
        ++counters.failed;
        if (counters.failed_sentences.empty() ||
            counters.failed_sentences.back() != slot.sentence) {
          counters.failed_sentences.push_back(slot.sentence);
        }
        continue;
      }
      if (spliced[j] && *spliced[j] != corpus.sentences[slot.sentence]) {
        kept[slot.sentence][slot.index] = std::move(spliced[j]);
        continue;
      }
      next.push_back(slot);
    }
    pending = std::move(next);
  }
  counters.dropped += pending.size();
  std::sort(counters.failed_sentences.begin(), counters.failed_sentences.end());
  counters.failed_sentences.erase(
      std::unique(counters.failed_sentences.begin(),
                  counters.failed_sentences.end()),
      counters.failed_sentences.end());

  result.per_sentence.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::optional<LabeledSentence>& aug : kept[i]) {
      if (aug) result.per_sentence[i].push_back(std::move(*aug));
    }
    counters.generated += result.per_sentence[i].size();
  }
  return result;
}

AugmentedCorpus AugmentCorpusBt(const Corpus& corpus,
                                const BacktranslationConfig& config,
                                TranslationBackend& backend,
                                std::uint64_t run_seed,
                                TranslationCache* cache, std::size_t jobs) {
  const Augmentations part =
      GenerateBacktranslations(corpus, config, backend, run_seed, cache, jobs);
  return Assemble(corpus, std::span<const Augmentations>(&part, 1));
}

}  // namespace nerbt
