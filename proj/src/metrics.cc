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

#include "nerbt/metrics.h"

#include <sstream>
#include <unordered_set>

namespace nerbt {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json DiversityToJson(const std::optional<DiversityReport>& report) {
  if (!report) return nullptr;
  return ordered_json{{"macro_distinct1", report->macro_mean},
                      {"corpus_distinct1", report->corpus_level},
                      {"sentences", report->per_sentence.size()}};
}

}  // namespace

double Distinct1(const LabeledSentence& s) {
  if (s.tokens.empty()) throw std::invalid_argument("empty sentence");
  std::unordered_set<std::string_view> distinct(s.tokens.begin(),
                                                s.tokens.end());
  return static_cast<double>(distinct.size()) /
         static_cast<double>(s.tokens.size());
}

DiversityReport ComputeDiversity(const Corpus& corpus) {
  if (corpus.sentences.empty()) throw EmptyCorpus();
  DiversityReport report;
  report.per_sentence.reserve(corpus.sentences.size());
  std::unordered_set<std::string_view> distinct;
  std::size_t tokens = 0;
  double sum = 0.0;
  for (const LabeledSentence& s : corpus.sentences) {
    const double d = Distinct1(s);
    report.per_sentence.push_back(d);
    sum += d;
    distinct.insert(s.tokens.begin(), s.tokens.end());
    tokens += s.tokens.size();
  }
  report.macro_mean = sum / static_cast<double>(corpus.sentences.size());
  report.corpus_level =
      static_cast<double>(distinct.size()) / static_cast<double>(tokens);
  return report;
}

RunReport MakeRunReport(const Corpus& original,
                        const AugmentedCorpus& augmented,
                        const ReportPlan& plan) {
  RunReport report;
  report.plan = plan;
  report.counters = augmented.counters;
  report.original_stats = ComputeStats(original);
  report.augmented_stats = ComputeStats(augmented.corpus);
  if (!original.sentences.empty()) {
    report.original_diversity = ComputeDiversity(original);
  }
  if (!augmented.corpus.sentences.empty()) {
    report.augmented_diversity = ComputeDiversity(augmented.corpus);
  }
  return report;
}

ordered_json StatsToJson(const CorpusStats& stats) {
  return ordered_json{{"sentences", stats.n_sentences},
                      {"mentions", stats.n_mentions},
                      {"unique_mentions", stats.n_unique_mentions},
                      {"entity_types", stats.n_entity_types}};
}

ordered_json ReportToJson(const RunReport& report) {
  const ReportPlan& plan = report.plan;
  const RunCounters& c = report.counters;
  ordered_json out;
  out["schema_version"] = kReportSchemaVersion;
  out["plan"] = {{"methods", plan.methods},
                 {"p", plan.p},
                 {"multiplicity", plan.multiplicity},
                 {"seed", plan.seed},
                 {"retry_budget", plan.retry_budget},
                 {"min_tokens", plan.min_tokens},
                 {"chain", plan.chain},
                 {"backend", plan.backend}};
  out["plan"]["subset_size"] =
      plan.subset_size ? ordered_json(*plan.subset_size) : ordered_json();
  out["counts"] = {{"originals", c.originals},
                   {"generated", c.generated},
                   {"dropped", c.dropped},
                   {"failed", c.failed},
                   {"attempts", c.attempts}};
  out["backend"] = {{"calls", c.backend_calls},
                    {"texts", c.backend_texts},
                    {"cache_hits", c.cache_hits},
                    {"cache_misses", c.cache_misses}};
  out["stats"] = {{"original", StatsToJson(report.original_stats)},
                  {"augmented", StatsToJson(report.augmented_stats)}};
  out["diversity"] = {{"original", DiversityToJson(report.original_diversity)},
                      {"augmented",
                       DiversityToJson(report.augmented_diversity)}};
  out["failed_sentences"] = c.failed_sentences;
  out["warnings"] = c.warnings;
  return out;
}

std::string ReportToText(const RunReport& report) {
  const RunCounters& c = report.counters;
  std::ostringstream out;
  out << "method(s):   " << report.plan.methods << "  p=" << report.plan.p
      << "  n=" << report.plan.multiplicity << "  seed=" << report.plan.seed
      << '\n';
  out << "sentences:   " << c.originals << " original, " << c.generated
      << " generated, " << c.dropped << " dropped, " << c.failed
      << " failed\n";
  out << "mentions:    " << report.original_stats.n_mentions << " -> "
      << report.augmented_stats.n_mentions << '\n';
  if (report.original_diversity && report.augmented_diversity) {
    out << "distinct-1:  " << report.original_diversity->macro_mean << " -> "
        << report.augmented_diversity->macro_mean << " (macro), "
        << report.original_diversity->corpus_level << " -> "
        << report.augmented_diversity->corpus_level << " (corpus)\n";
  }
  out << "backend:     " << c.backend_calls << " calls, " << c.backend_texts
      << " texts, " << c.cache_hits << " cache hits, " << c.cache_misses
      << " misses\n";
  if (!c.warnings.empty()) {
    out << "warnings:    " << c.warnings.size() << '\n';
  }
  return out.str();
}

}  // namespace nerbt
