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

#include "nerbt/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <system_error>

#include "nerbt/backend_factory.h"
#include "nerbt/rng.h"

namespace nerbt {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::uint64_t Fnv1a(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

bool SamePath(const fs::path& a, const fs::path& b) {
  std::error_code ec;
  if (fs::exists(a, ec) && fs::exists(b, ec)) return fs::equivalent(a, b, ec);
  return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec);
}

PlanOutput ExecutePlanOn(const AugmentationPlan& plan,
                         const ExperimentInputs& inputs, const Corpus& train,
                         TranslationBackend* backend,
                         TranslationCache* cache,
                         const SynonymLexicon* lexicon) {
  SubsetSpec subset_spec;
  subset_spec.sizes = {plan.subset_size};
  subset_spec.seed = inputs.subset_seed;
  const Corpus subset = MakeSubsets(train, subset_spec).at(plan.subset_size);

  AugmentRequest request;
  request.methods = MethodsFor(plan.augmenter);
  request.p = plan.p;
  request.multiplicity = plan.multiplicity;
  request.retry_budget = inputs.retry_budget;
  request.seed = plan.run_seed;
  request.jobs = inputs.jobs;
  request.sis_mode = inputs.sis_mode;
  request.min_tokens = inputs.min_tokens;
  request.chain = inputs.chain;
  request.lexicon = lexicon;
  request.backend = backend;
  request.cache = cache;
  const AugmentedCorpus augmented = RunAugmentation(subset, request);

  ReportPlan report_plan;
  report_plan.methods = plan.augmenter;
  report_plan.p = plan.p;
  report_plan.multiplicity = plan.multiplicity;
  report_plan.seed = plan.run_seed;
  report_plan.retry_budget = inputs.retry_budget;
  report_plan.min_tokens = inputs.min_tokens;
  report_plan.chain = inputs.chain.ToString();
  report_plan.backend = inputs.backend;
  report_plan.subset_size = subset.sentences.size();

  PlanOutput output;
  output.report = MakeRunReport(subset, augmented, report_plan);
  const fs::path dir =
      inputs.out_dir / inputs.dataset / SubsetName(plan.subset_size);
  output.corpus_path = dir / (plan.FileStem() + ".conll");
  output.report_path = dir / (plan.FileStem() + ".report.json");
  for (const fs::path& protected_path : inputs.held_out) {
    if (SamePath(output.corpus_path, protected_path) ||
        SamePath(output.report_path, protected_path)) {
      throw std::runtime_error("refusing to overwrite held-out file " +
                               protected_path.string());
    }
  }
  if (SamePath(output.corpus_path, inputs.train) ||
      SamePath(output.report_path, inputs.train)) {
    throw std::runtime_error("refusing to overwrite training file " +
                             inputs.train.string());
  }
  fs::create_directories(dir);
  WriteFileAtomic(output.corpus_path, WriteConll(augmented.corpus));
  WriteFileAtomic(output.report_path,
                  ReportToJson(output.report).dump(2) + "\n");
  return output;
}

std::vector<std::size_t> ParseSizes(const json& value) {
  if (!value.is_array() || value.empty()) {
    throw ManifestError("\"sizes\" must be a non-empty array");
  }
  std::vector<std::size_t> sizes;
  for (const json& item : value) {
    if (item.is_string() && (item == "full" || item == "all")) {
      sizes.push_back(kAllSentences);
    } else if (item.is_number_unsigned() && item.get<std::size_t>() > 0) {
      sizes.push_back(item.get<std::size_t>());
    } else {
      throw ManifestError("subset sizes must be positive integers or \"full\"");
    }
  }
  return sizes;
}

template <typename T>
T Get(const json& document, const char* key, T fallback) {
  auto it = document.find(key);
  if (it == document.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ManifestError(std::string("manifest key \"") + key +
                        "\" has the wrong type");
  }
}

}  // namespace

void SubsetSpec::Validate() const {
  if (sizes.empty()) throw std::invalid_argument("no subset sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw std::invalid_argument("subset size must be > 0");
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument("subset sizes must be strictly ascending");
    }
  }
}

std::string SubsetName(std::size_t size) {
  return size == kAllSentences ? "full" : std::to_string(size);
}

std::map<std::size_t, Corpus> MakeSubsets(const Corpus& corpus,
                                          const SubsetSpec& spec) {
  spec.Validate();
  const std::size_t n = corpus.sentences.size();
  for (std::size_t size : spec.sizes) {
    if (size != kAllSentences && size > n) {
      throw SubsetTooLarge("subset of " + std::to_string(size) +
                           " sentences requested from a corpus of " +
                           std::to_string(n));
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(spec.seed, {0x737562736574ULL}));
  rng.Shuffle(std::span<std::size_t>(order));

  std::map<std::size_t, Corpus> subsets;
  for (std::size_t size : spec.sizes) {
    const std::size_t k = size == kAllSentences ? n : size;
    std::vector<std::size_t> chosen(order.begin(), order.begin() + k);
    std::sort(chosen.begin(), chosen.end());
    Corpus subset;
    subset.sentences.reserve(k);
    for (std::size_t index : chosen) {
      subset.sentences.push_back(corpus.sentences[index]);
    }
    subsets.emplace(size, std::move(subset));
  }
  return subsets;
}

void GridSpec::Validate() const {
  if (augmenters.empty()) throw std::invalid_argument("no augmenters in grid");
  for (const std::string& augmenter : augmenters) MethodsFor(augmenter);
  if (probabilities.empty()) {
    throw std::invalid_argument("no probabilities in grid");
  }
  for (double p : probabilities) {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::invalid_argument("grid probabilities must lie in (0, 1)");
    }
  }
  for (std::size_t m : multiplicities) {
    if (m == 0) throw std::invalid_argument("multiplicity must be >= 1");
  }
  if (subset_sizes.empty()) throw std::invalid_argument("no subset sizes");
  for (std::size_t size : subset_sizes) {
    if (size == 0) throw std::invalid_argument("subset size must be > 0");
  }
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

std::string AugmentationPlan::FileStem() const {
  return augmenter + "_n" + std::to_string(multiplicity) + "_p" +
         FormatDouble(p) + "_s" + std::to_string(run_seed);
}

std::uint64_t PlanSeed(std::uint64_t master_seed, std::string_view augmenter,
                       std::size_t multiplicity, double p,
                       std::size_t subset_size) {
  const auto p_micro = static_cast<std::uint64_t>(std::llround(p * 1e6));
  // Keep seeds within 53 bits so they survive JSON round trips.
  return DeriveSeed(master_seed, {Fnv1a(augmenter), multiplicity, p_micro,
                                  subset_size}) >>
         11;
}

std::vector<Method> MethodsFor(std::string_view augmenter) {
  if (augmenter == kCombinedAugmenter) {
    return std::vector<Method>(kAllMethods.begin(), kAllMethods.end());
  }
  if (std::optional<Method> method = ParseMethod(augmenter)) return {*method};
  throw std::invalid_argument("unknown augmenter '" + std::string(augmenter) +
                              "'");
}

std::vector<AugmentationPlan> ExpandGrid(const GridSpec& spec) {
  spec.Validate();
  std::vector<AugmentationPlan> plans;
  for (const std::string& augmenter : spec.augmenters) {
    std::vector<std::size_t> multiplicities = spec.multiplicities;
    if (multiplicities.empty()) {
      if (augmenter == kCombinedAugmenter) {
        multiplicities.assign(kCombinedMultiplicities.begin(),
                              kCombinedMultiplicities.end());
      } else {
        multiplicities.assign(kDefaultMultiplicities.begin(),
                              kDefaultMultiplicities.end());
      }
    }
    for (std::size_t multiplicity : multiplicities) {
      for (double p : spec.probabilities) {
        for (std::size_t size : spec.subset_sizes) {
          AugmentationPlan plan;
          plan.augmenter = augmenter;
          plan.p = p;
          plan.multiplicity = multiplicity;
          plan.subset_size = size;
          plan.run_seed =
              PlanSeed(spec.master_seed, augmenter, multiplicity, p, size);
          plans.push_back(std::move(plan));
        }
      }
    }
  }
  return plans;
}

void WriteFileAtomic(const fs::path& path, const std::string& content) {
  fs::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + temp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + temp.string());
  }
  fs::rename(temp, path);
}

PlanOutput ExecutePlan(const AugmentationPlan& plan,
                       const ExperimentInputs& inputs) {
  ParseOptions options;
  options.repair_iob = inputs.repair_iob;
  const Corpus train = ReadConllFile(inputs.train.string(), options);
  std::optional<SynonymLexicon> lexicon;
  if (inputs.lexicon) lexicon = SynonymLexicon::Load(inputs.lexicon->string());
  std::unique_ptr<TranslationBackend> backend = MakeBackend(inputs.backend);
  std::unique_ptr<TranslationCache> cache;
  if (inputs.cache) cache = std::make_unique<TranslationCache>(*inputs.cache);
  return ExecutePlanOn(plan, inputs, train, backend.get(), cache.get(),
                       lexicon ? &*lexicon : nullptr);
}

std::vector<PlanOutput> ExecuteGrid(const Manifest& manifest) {
  const ExperimentInputs& inputs = manifest.inputs;
  const std::vector<AugmentationPlan> plans = ExpandGrid(manifest.grid);
  ParseOptions options;
  options.repair_iob = inputs.repair_iob;
  const Corpus train = ReadConllFile(inputs.train.string(), options);
  std::optional<SynonymLexicon> lexicon;
  if (inputs.lexicon) lexicon = SynonymLexicon::Load(inputs.lexicon->string());
  std::unique_ptr<TranslationBackend> backend = MakeBackend(inputs.backend);
  std::unique_ptr<TranslationCache> cache;
  if (inputs.cache) cache = std::make_unique<TranslationCache>(*inputs.cache);
  std::vector<PlanOutput> outputs;
  outputs.reserve(plans.size());
  for (const AugmentationPlan& plan : plans) {
    outputs.push_back(ExecutePlanOn(plan, inputs, train, backend.get(),
                                    cache.get(),
                                    lexicon ? &*lexicon : nullptr));
  }
  return outputs;
}

Manifest Manifest::FromJson(const json& document, const fs::path& base_dir) {
  if (!document.is_object()) throw ManifestError("manifest must be an object");
  static const std::vector<std::string> kKnownKeys = {
      "dataset",     "train",        "dev",          "test",
      "out_dir",     "augmenters",   "multiplicities", "probabilities",
      "sizes",       "subset_seed",  "seed",         "backend",
      "chain",       "cache",        "lexicon",      "min_tokens",
      "retry_budget", "jobs",        "sis_mode",     "repair_iob"};
  for (const auto& [key, value] : document.items()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) ==
        kKnownKeys.end()) {
      throw ManifestError("unknown manifest key \"" + key + "\"");
    }
  }
  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  Manifest manifest;
  ExperimentInputs& in = manifest.inputs;
  if (!document.contains("train")) throw ManifestError("missing \"train\"");
  in.train = resolve(Get<std::string>(document, "train", ""));
  in.dataset = Get<std::string>(document, "dataset", in.train.stem().string());
  for (const char* key : {"dev", "test"}) {
    if (document.contains(key)) {
      in.held_out.push_back(resolve(Get<std::string>(document, key, "")));
    }
  }
  in.out_dir = resolve(Get<std::string>(document, "out_dir", "out"));
  in.subset_seed = Get<std::uint64_t>(document, "subset_seed", kDefaultSeed);
  if (document.contains("lexicon")) {
    in.lexicon = resolve(Get<std::string>(document, "lexicon", ""));
  }
  in.backend = Get<std::string>(document, "backend", "identity");
  if (in.backend.starts_with("dict:")) {
    in.backend = "dict:" + resolve(in.backend.substr(5)).string();
  }
  try {
    in.chain = LanguageChain::Parse(Get<std::string>(document, "chain", "en-de-en"));
  } catch (const std::invalid_argument& e) {
    throw ManifestError(e.what());
  }
  if (document.contains("cache")) {
    in.cache = resolve(Get<std::string>(document, "cache", ""));
  }
  in.min_tokens = Get<std::size_t>(document, "min_tokens", in.min_tokens);
  in.retry_budget = Get<std::size_t>(document, "retry_budget", in.retry_budget);
  in.jobs = Get<std::size_t>(document, "jobs", in.jobs);
  in.repair_iob = Get<bool>(document, "repair_iob", false);
  if (document.contains("sis_mode")) {
    std::optional<ShuffleMode> mode =
        ParseShuffleMode(Get<std::string>(document, "sis_mode", ""));
    if (!mode) throw ManifestError("unknown sis_mode");
    in.sis_mode = *mode;
  }

  GridSpec& grid = manifest.grid;
  grid.augmenters = Get<std::vector<std::string>>(document, "augmenters",
                                                  grid.augmenters);
  grid.multiplicities = Get<std::vector<std::size_t>>(
      document, "multiplicities", grid.multiplicities);
  grid.probabilities = Get<std::vector<double>>(document, "probabilities",
                                                grid.probabilities);
  grid.master_seed = Get<std::uint64_t>(document, "seed", kDefaultSeed);
  if (document.contains("sizes")) {
    grid.subset_sizes = ParseSizes(document["sizes"]);
  }
  try {
    grid.Validate();
  } catch (const ManifestError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ManifestError(e.what());
  }
  return manifest;
}

Manifest Manifest::Load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot open manifest " + path.string());
  json document = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (document.is_discarded()) {
    throw ManifestError("manifest " + path.string() + " is not valid JSON");
  }
  return FromJson(document, path.parent_path());
}

}  // namespace nerbt
