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

#ifndef NERBT_METRICS_H_
#define NERBT_METRICS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nerbt/augment_driver.h"
#include "nerbt/corpus.h"

namespace nerbt {

inline constexpr int kReportSchemaVersion = 1;

class EmptyCorpus : public std::invalid_argument {
 public:
  EmptyCorpus() : std::invalid_argument("corpus has no sentences") {}
};

// Distinct unigrams over token count, case-sensitive. Sentence must be
// non-empty.
double Distinct1(const LabeledSentence& s);

struct DiversityReport {
  std::vector<double> per_sentence;
  // Mean of per_sentence; the headline figure.
  double macro_mean = 0.0;
  // Distinct unigrams over the whole corpus divided by its token count.
  double corpus_level = 0.0;
};

// Throws EmptyCorpus for a corpus without sentences.
DiversityReport ComputeDiversity(const Corpus& corpus);

// Run parameters echoed into the report.
struct ReportPlan {
  std::string methods;
  double p = 0.0;
  std::size_t multiplicity = 1;
  std::uint64_t seed = 0;
  std::size_t retry_budget = 0;
  std::size_t min_tokens = 0;
  std::string chain;
  std::string backend;
  std::optional<std::size_t> subset_size;
};

struct RunReport {
  ReportPlan plan;
  RunCounters counters;
  CorpusStats original_stats;
  CorpusStats augmented_stats;
  std::optional<DiversityReport> original_diversity;
  std::optional<DiversityReport> augmented_diversity;
};

RunReport MakeRunReport(const Corpus& original,
                        const AugmentedCorpus& augmented,
                        const ReportPlan& plan);

// Machine-readable form, fields in a fixed order, carrying schema_version.
nlohmann::ordered_json ReportToJson(const RunReport& report);
std::string ReportToText(const RunReport& report);

nlohmann::ordered_json StatsToJson(const CorpusStats& stats);

}  // namespace nerbt

#endif  // NERBT_METRICS_H_
