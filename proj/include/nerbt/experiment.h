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

#ifndef NERBT_EXPERIMENT_H_
#define NERBT_EXPERIMENT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nerbt/augmenters.h"
#include "nerbt/backend.h"
#include "nerbt/corpus.h"
#include "nerbt/metrics.h"
#include "nerbt/pipeline.h"

namespace nerbt {

// Subset size meaning "the whole training set".
inline constexpr std::size_t kAllSentences =
    std::numeric_limits<std::size_t>::max();

inline constexpr std::array<std::size_t, 4> kDefaultSubsetSizes = {
    50, 150, 500, kAllSentences};
inline constexpr std::array<std::size_t, 4> kDefaultMultiplicities = {1, 3, 6,
                                                                      10};
inline constexpr std::array<std::size_t, 3> kCombinedMultiplicities = {1, 2,
                                                                       3};
inline constexpr std::array<double, 4> kDefaultProbabilities = {0.1, 0.3, 0.5,
                                                                 0.7};

// Augmenter id used for the every-method mode.
inline constexpr std::string_view kCombinedAugmenter = "all";

class SubsetTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ManifestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SubsetSpec {
  std::vector<std::size_t> sizes = {kDefaultSubsetSizes.begin(),
                                    kDefaultSubsetSizes.end()};
  std::uint64_t seed = kDefaultSeed;

  // Sizes must be positive and strictly ascending.
  void Validate() const;
};

// "50", "150", ..., or "full" for kAllSentences.
std::string SubsetName(std::size_t size);

// Nested uniform samples without replacement: every subset is a prefix of one
// seeded permutation, re-sorted into corpus order. Keyed by requested size.
std::map<std::size_t, Corpus> MakeSubsets(const Corpus& corpus,
                                          const SubsetSpec& spec);

struct GridSpec {
  std::vector<std::string> augmenters = {"bt"};
  // Empty means the default list for each augmenter: {1, 3, 6, 10} for a
  // single method, {1, 2, 3} for "all".
  std::vector<std::size_t> multiplicities;
  std::vector<double> probabilities = {kDefaultProbabilities.begin(),
                                       kDefaultProbabilities.end()};
  std::vector<std::size_t> subset_sizes = {kAllSentences};
  std::uint64_t master_seed = kDefaultSeed;

  void Validate() const;
};

struct AugmentationPlan {
  std::string augmenter;  // lwtr, sr, mr, sis, bt or all
  double p = 0.0;
  std::size_t multiplicity = 1;
  std::uint64_t run_seed = 0;
  std::size_t subset_size = kAllSentences;

  // <augmenter>_n<multiplicity>_p<p>_s<run_seed>
  std::string FileStem() const;

  friend bool operator==(const AugmentationPlan&,
                         const AugmentationPlan&) = default;
};

// Derived from the plan's coordinates only, so adding or removing grid values
// never changes another plan's seed.
std::uint64_t PlanSeed(std::uint64_t master_seed, std::string_view augmenter,
                       std::size_t multiplicity, double p,
                       std::size_t subset_size);

// augmenters x multiplicities x probabilities x subset sizes, in that nesting
// order.
std::vector<AugmentationPlan> ExpandGrid(const GridSpec& spec);

// Methods behind an augmenter id; throws std::invalid_argument if unknown.
std::vector<Method> MethodsFor(std::string_view augmenter);

struct ExperimentInputs {
  std::string dataset = "dataset";
  std::filesystem::path train;
  // Development and test files. They are never written; outputs that would
  // land on them are rejected.
  std::vector<std::filesystem::path> held_out;
  std::filesystem::path out_dir = "out";
  std::uint64_t subset_seed = kDefaultSeed;
  std::optional<std::filesystem::path> lexicon;
  std::string backend = "identity";
  LanguageChain chain;
  std::optional<std::filesystem::path> cache;
  std::size_t min_tokens = kDefaultMinSegmentTokens;
  std::size_t retry_budget = 3;
  std::size_t jobs = 1;
  ShuffleMode sis_mode = ShuffleMode::kWithinSegments;
  bool repair_iob = false;
};

struct PlanOutput {
  std::filesystem::path corpus_path;
  std::filesystem::path report_path;
  RunReport report;
};

// Writes <out_dir>/<dataset>/<subset>/<stem>.conll and <stem>.report.json,
// each via a temporary file and rename.
PlanOutput ExecutePlan(const AugmentationPlan& plan,
                       const ExperimentInputs& inputs);

struct Manifest {
  ExperimentInputs inputs;
  GridSpec grid;

  // Relative paths are resolved against `base_dir`. Throws ManifestError.
  static Manifest FromJson(const nlohmann::json& document,
                           const std::filesystem::path& base_dir);
  static Manifest Load(const std::filesystem::path& path);
};

std::vector<PlanOutput> ExecuteGrid(const Manifest& manifest);

// Shortest round-trip decimal form of `value`.
std::string FormatDouble(double value);

// Writes `content` to a sibling temporary file, then renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace nerbt

#endif  // NERBT_EXPERIMENT_H_
