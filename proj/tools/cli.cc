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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <map>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nerbt/augmenters.h"
#include "nerbt/backend.h"
#include "nerbt/backend_factory.h"
#include "nerbt/corpus.h"
#include "nerbt/dictionary_backend.h"
#include "nerbt/experiment.h"
#include "nerbt/http_backend.h"
#include "nerbt/metrics.h"
#include "nerbt/pipeline.h"
#include "nerbt/translation_cache.h"

namespace nerbt {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// Raised for bad flag values discovered after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

// Opens `path` for reading, "-" meaning the provided stdin stream.
class InputFile {
 public:
  InputFile(const std::string& path, std::istream& stdin_stream) {
    if (path == "-") {
      stream_ = &stdin_stream;
      return;
    }
    file_.open(path, std::ios::binary);
    if (!file_) throw UsageError("cannot open " + path);
    stream_ = &file_;
  }
  std::istream& stream() { return *stream_; }

 private:
  std::ifstream file_;
  std::istream* stream_ = nullptr;
};

void WriteOutput(const std::string& path, const std::string& content,
                 std::ostream& out) {
  if (path == "-") {
    out << content;
    out.flush();
    return;
  }
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  WriteFileAtomic(target, content);
}

std::string DiagnosticKind(CorpusError::Kind kind) {
  switch (kind) {
    case CorpusError::Kind::kMalformedLine:
      return "MalformedLine";
    case CorpusError::Kind::kInvalidLabel:
      return "InvalidLabel";
    case CorpusError::Kind::kInvalidTransition:
      return "InvalidTransition";
  }
  return "Error";
}

// ---------------------------------------------------------------- validate

struct ValidateFlags {
  std::string input = "-";
  bool repair_iob = false;
  std::string output;
  bool json = false;
};

int RunValidate(const ValidateFlags& flags, Streams io) {
  InputFile input(flags.input, io.in);
  ParseOptions options;
  options.repair_iob = flags.repair_iob;
  const ParseResult result = ParseConllLenient(input.stream(), options);

  if (flags.json) {
    ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["path"] = flags.input;
    doc["valid"] = result.diagnostics.empty();
    doc["sentences"] = result.corpus.sentences.size();
    ordered_json diagnostics = ordered_json::array();
    for (const ParseDiagnostic& d : result.diagnostics) {
      diagnostics.push_back({{"kind", DiagnosticKind(d.kind)},
                             {"line", d.line},
                             {"sentence", d.sentence},
                             {"message", d.message}});
    }
    doc["diagnostics"] = std::move(diagnostics);
    io.out << doc.dump(2) << '\n';
  } else {
    for (const ParseDiagnostic& d : result.diagnostics) {
      io.out << flags.input << ":" << d.line << ": sentence " << d.sentence
             << ": " << DiagnosticKind(d.kind) << ": " << d.message << '\n';
    }
    if (result.diagnostics.empty()) {
      io.out << flags.input << ": OK (" << result.corpus.sentences.size()
             << " sentences)\n";
    }
  }

  if (flags.repair_iob) {
    std::string target = flags.output;
    if (target.empty()) {
      if (flags.input == "-") {
        throw UsageError("--repair-iob on stdin needs --output");
      }
      target = flags.input + ".repaired.conll";
    }
    WriteOutput(target, WriteConll(result.corpus), io.out);
    io.err << "wrote repaired copy (" << result.repaired_labels
           << " labels changed) to " << target << '\n';
  }
  return result.diagnostics.empty() ? kExitOk : kExitInvalidData;
}

// ------------------------------------------------------------------- stats

struct StatsFlags {
  std::string input = "-";
  bool json = false;
  bool repair_iob = false;
};

int RunStats(const StatsFlags& flags, Streams io) {
  InputFile input(flags.input, io.in);
  ParseOptions options;
  options.repair_iob = flags.repair_iob;
  const Corpus corpus = ParseConll(input.stream(), options);
  const CorpusStats stats = ComputeStats(corpus);
  if (flags.json) {
    ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["path"] = flags.input;
    doc.update(StatsToJson(stats));
    io.out << doc.dump(2) << '\n';
    return kExitOk;
  }
  io.out << "sentences        " << stats.n_sentences << '\n'
         << "mentions         " << stats.n_mentions << '\n'
         << "unique mentions  " << stats.n_unique_mentions << '\n'
         << "entity types     " << stats.n_entity_types << '\n';
  return kExitOk;
}

// ----------------------------------------------------------------- augment

struct AugmentFlags {
  std::string input = "-";
  std::string output;
  std::string method = "bt";
  double p = 0.3;
  std::size_t n = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string backend = "identity";
  std::string chain = "en-de-en";
  std::string cache;
  std::size_t min_tokens = kDefaultMinSegmentTokens;
  std::string lexicon;
  std::size_t retry_budget = 3;
  std::size_t jobs = 1;
  std::string report;
  std::string sis_mode = "within-segments";
  bool repair_iob = false;
  bool quiet = false;
  // HTTP backend options.
  std::size_t timeout_ms = 30000;
  std::size_t max_batch = 32;
  std::size_t max_retries = 4;
  std::size_t backoff_ms = 250;
  std::string auth_header = "Authorization";
  std::string auth_env = "NERBT_AUTH_TOKEN";
};

int RunAugment(const AugmentFlags& flags, Streams io) {
  AugmentRequest request;
  if (flags.method == kCombinedAugmenter) {
    request.methods.assign(kAllMethods.begin(), kAllMethods.end());
  } else if (std::optional<Method> method = ParseMethod(flags.method)) {
    request.methods = {*method};
  } else {
    throw UsageError("unknown --method " + flags.method);
  }
  if (!(flags.p >= 0.0 && flags.p <= 1.0)) {
    throw UsageError("--p must lie in [0, 1]");
  }
  std::optional<ShuffleMode> sis_mode = ParseShuffleMode(flags.sis_mode);
  if (!sis_mode) throw UsageError("unknown --sis-mode " + flags.sis_mode);
  try {
    request.chain = LanguageChain::Parse(flags.chain);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  InputFile input(flags.input, io.in);
  ParseOptions options;
  options.repair_iob = flags.repair_iob;
  const Corpus corpus = ParseConll(input.stream(), options);

  std::optional<SynonymLexicon> lexicon;
  if (!flags.lexicon.empty()) lexicon = SynonymLexicon::Load(flags.lexicon);

  std::unique_ptr<TranslationBackend> backend;
  std::unique_ptr<TranslationCache> cache;
  const bool needs_backend =
      std::find(request.methods.begin(), request.methods.end(), Method::kBt) !=
      request.methods.end();
  if (needs_backend) {
    HttpBackendConfig http;
    http.timeout = std::chrono::milliseconds(flags.timeout_ms);
    http.max_batch_size = flags.max_batch;
    http.max_retries = flags.max_retries;
    http.initial_backoff = std::chrono::milliseconds(flags.backoff_ms);
    http.auth_header = flags.auth_header;
    http.auth_env = flags.auth_env;
    try {
      backend = MakeBackend(flags.backend, http);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (!flags.cache.empty()) {
      cache = std::make_unique<TranslationCache>(fs::path(flags.cache));
    }
  }

  request.p = flags.p;
  request.multiplicity = flags.n;
  request.retry_budget = flags.retry_budget;
  request.seed = flags.seed;
  request.jobs = flags.jobs;
  request.sis_mode = *sis_mode;
  request.min_tokens = flags.min_tokens;
  request.lexicon = lexicon ? &*lexicon : nullptr;
  request.backend = backend.get();
  request.cache = cache.get();
  try {
    request.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const AugmentedCorpus augmented = RunAugmentation(corpus, request);

  ReportPlan plan;
  plan.methods = flags.method;
  plan.p = flags.p;
  plan.multiplicity = flags.n;
  plan.seed = flags.seed;
  plan.retry_budget = flags.retry_budget;
  plan.min_tokens = flags.min_tokens;
  plan.chain = request.chain.ToString();
  plan.backend = needs_backend ? flags.backend : "";
  const RunReport report = MakeRunReport(corpus, augmented, plan);

  if (augmented.counters.failed > 0) {
    // Nothing is written when the backend lost sentences; the output file is
    // only created by the final rename.
    io.err << "backend failures for " << augmented.counters.failed
           << " augmentation slot(s); no output written\n";
    for (const std::string& w : augmented.counters.warnings) {
      io.err << "  " << w << '\n';
    }
    if (!flags.report.empty()) {
      WriteOutput(flags.report, ReportToJson(report).dump(2) + "\n", io.out);
    }
    return kExitBackend;
  }

  WriteOutput(flags.output, WriteConll(augmented.corpus), io.out);
  if (!flags.report.empty()) {
    WriteOutput(flags.report, ReportToJson(report).dump(2) + "\n", io.out);
  }
  if (!flags.quiet) io.err << ReportToText(report);
  return kExitOk;
}

// --------------------------------------------------------------- diversity

struct DiversityFlags {
  std::vector<std::string> inputs;
  bool json = false;
};

int RunDiversity(const DiversityFlags& flags, Streams io) {
  ordered_json rows = ordered_json::array();
  std::ostringstream table;
  table << "corpus\tsentences\tmacro_distinct1\tcorpus_distinct1\n";
  for (const std::string& path : flags.inputs) {
    InputFile input(path, io.in);
    const Corpus corpus = ParseConll(input.stream());
    const DiversityReport report = ComputeDiversity(corpus);
    rows.push_back({{"path", path},
                    {"sentences", corpus.sentences.size()},
                    {"macro_distinct1", report.macro_mean},
                    {"corpus_distinct1", report.corpus_level}});
    table << path << '\t' << corpus.sentences.size() << '\t'
          << FormatDouble(report.macro_mean) << '\t'
          << FormatDouble(report.corpus_level) << '\n';
  }
  if (flags.json) {
    ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["corpora"] = std::move(rows);
    io.out << doc.dump(2) << '\n';
  } else {
    io.out << table.str();
  }
  return kExitOk;
}

// ------------------------------------------------------------------ subset

struct SubsetFlags {
  std::string input = "-";
  std::string out_dir = "subsets";
  std::vector<std::string> sizes = {"50", "150", "500", "full"};
  std::uint64_t seed = kDefaultSeed;
  bool repair_iob = false;
};

int RunSubset(const SubsetFlags& flags, Streams io) {
  SubsetSpec spec;
  spec.seed = flags.seed;
  spec.sizes.clear();
  for (const std::string& size : flags.sizes) {
    if (size == "full" || size == "all") {
      spec.sizes.push_back(kAllSentences);
      continue;
    }
    std::size_t value = 0;
    const auto [end, ec] =
        std::from_chars(size.data(), size.data() + size.size(), value);
    if (ec != std::errc() || end != size.data() + size.size() || value == 0) {
      throw UsageError("bad subset size '" + size + "'");
    }
    spec.sizes.push_back(value);
  }
  try {
    spec.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  InputFile input(flags.input, io.in);
  ParseOptions options;
  options.repair_iob = flags.repair_iob;
  const Corpus corpus = ParseConll(input.stream(), options);
  std::map<std::size_t, Corpus> subsets;
  try {
    subsets = MakeSubsets(corpus, spec);
  } catch (const SubsetTooLarge& e) {
    throw UsageError(e.what());
  }
  fs::create_directories(flags.out_dir);
  for (std::size_t size : spec.sizes) {
    const fs::path path = fs::path(flags.out_dir) / (SubsetName(size) + ".conll");
    WriteFileAtomic(path, WriteConll(subsets.at(size)));
    io.out << path.string() << '\t' << subsets.at(size).sentences.size()
           << '\n';
  }
  return kExitOk;
}

// -------------------------------------------------------------------- grid

struct GridFlags {
  std::string manifest;
  bool dry_run = false;
};

int RunGrid(const GridFlags& flags, Streams io) {
  Manifest manifest;
  try {
    manifest = Manifest::Load(flags.manifest);
  } catch (const ManifestError& e) {
    throw UsageError(e.what());
  }
  if (flags.dry_run) {
    for (const AugmentationPlan& plan : ExpandGrid(manifest.grid)) {
      io.out << SubsetName(plan.subset_size) << '\t' << plan.FileStem()
             << '\n';
    }
    return kExitOk;
  }
  int status = kExitOk;
  for (const PlanOutput& output : ExecuteGrid(manifest)) {
    if (output.report.counters.failed > 0) {
      fs::remove(output.corpus_path);
      io.err << output.corpus_path.string() << ": backend failures, removed\n";
      status = kExitBackend;
      continue;
    }
    io.out << output.corpus_path.string() << '\n';
  }
  return status;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{"nerbt: data augmentation for BIO-labelled NER corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nerbt 1.0.0");

  ValidateFlags validate;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Check a CoNLL file for IOB2 errors");
  validate_cmd->add_option("input", validate.input, "CoNLL file, - for stdin")
      ->capture_default_str();
  validate_cmd->add_flag("--repair-iob", validate.repair_iob,
                         "Write a copy with I-X after invalid predecessors "
                         "turned into B-X");
  validate_cmd->add_option("-o,--output", validate.output,
                           "Repaired copy path (default <input>.repaired.conll)");
  validate_cmd->add_flag("--json", validate.json, "Machine-readable output");

  StatsFlags stats;
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "Sentence and mention counts");
  stats_cmd->add_option("input", stats.input, "CoNLL file, - for stdin")
      ->capture_default_str();
  stats_cmd->add_flag("--json", stats.json, "Machine-readable output");
  stats_cmd->add_flag("--repair-iob", stats.repair_iob,
                      "Repair IOB2 violations instead of failing");

  AugmentFlags augment;
  CLI::App* augment_cmd =
      app.add_subcommand("augment", "Write an augmented training corpus");
  augment_cmd->add_option("-i,--input", augment.input, "Training CoNLL file")
      ->capture_default_str();
  augment_cmd->add_option("-o,--output", augment.output,
                          "Output CoNLL file, - for stdout")
      ->required();
  augment_cmd
      ->add_option("--method", augment.method, "lwtr, sr, mr, sis, bt or all")
      ->check(CLI::IsMember({"lwtr", "sr", "mr", "sis", "bt", "all"}))
      ->capture_default_str();
  augment_cmd->add_option("--p", augment.p, "Per-unit replacement probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  augment_cmd->add_option("--n", augment.n, "Augmentations per sentence")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  augment_cmd->add_option("--seed", augment.seed, "Run seed")
      ->capture_default_str();
  augment_cmd
      ->add_option("--backend", augment.backend,
                   "identity, dict:FILE or http:URL")
      ->capture_default_str();
  augment_cmd->add_option("--chain", augment.chain, "Language chain")
      ->capture_default_str();
  augment_cmd->add_option("--cache", augment.cache, "Translation cache file");
  augment_cmd
      ->add_option("--min-tokens", augment.min_tokens,
                   "Shortest context segment sent for backtranslation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  augment_cmd->add_option("--lexicon", augment.lexicon,
                          "Synonym lexicon (required by sr and all)");
  augment_cmd
      ->add_option("--retry-budget", augment.retry_budget,
                   "Extra attempts for augmentations identical to the source")
      ->capture_default_str();
  augment_cmd->add_option("--jobs", augment.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  augment_cmd->add_option("--report", augment.report, "Write JSON run report");
  augment_cmd
      ->add_option("--sis-mode", augment.sis_mode,
                   "within-segments or segment-order")
      ->capture_default_str();
  augment_cmd->add_flag("--repair-iob", augment.repair_iob,
                        "Repair IOB2 violations in the input");
  augment_cmd->add_flag("-q,--quiet", augment.quiet, "No summary on stderr");
  augment_cmd->add_option("--timeout-ms", augment.timeout_ms, "HTTP timeout")
      ->capture_default_str();
  augment_cmd->add_option("--max-batch", augment.max_batch, "HTTP batch size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  augment_cmd->add_option("--max-retries", augment.max_retries,
                          "HTTP retries after the first attempt")
      ->capture_default_str();
  augment_cmd->add_option("--backoff-ms", augment.backoff_ms,
                          "Initial HTTP retry backoff")
      ->capture_default_str();
  augment_cmd->add_option("--auth-header", augment.auth_header,
                          "HTTP auth header name")
      ->capture_default_str();
  augment_cmd->add_option("--auth-env", augment.auth_env,
                          "Environment variable with the auth header value")
      ->capture_default_str();

  DiversityFlags diversity;
  CLI::App* diversity_cmd = app.add_subcommand(
      "diversity", "Distinct-1 per corpus (macro and corpus level)");
  diversity_cmd->add_option("inputs", diversity.inputs, "CoNLL files")
      ->required();
  diversity_cmd->add_flag("--json", diversity.json, "Machine-readable output");

  SubsetFlags subset;
  CLI::App* subset_cmd =
      app.add_subcommand("subset", "Nested low-resource training subsets");
  subset_cmd->add_option("-i,--input", subset.input, "Training CoNLL file")
      ->capture_default_str();
  subset_cmd->add_option("--out-dir", subset.out_dir, "Output directory")
      ->capture_default_str();
  subset_cmd->add_option("--sizes", subset.sizes, "Sizes, 'full' for all")
      ->delimiter(',')
      ->capture_default_str();
  subset_cmd->add_option("--seed", subset.seed, "Sampling seed")
      ->capture_default_str();
  subset_cmd->add_flag("--repair-iob", subset.repair_iob,
                       "Repair IOB2 violations in the input");

  GridFlags grid;
  CLI::App* grid_cmd = app.add_subcommand(
      "grid", "Run every plan of a hyperparameter grid manifest");
  grid_cmd->add_option("manifest", grid.manifest, "Manifest JSON file")
      ->required();
  grid_cmd->add_flag("--dry-run", grid.dry_run, "List plans only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Streams io{in, out, err};
  try {
    if (*validate_cmd) return RunValidate(validate, io);
    if (*stats_cmd) return RunStats(stats, io);
    if (*augment_cmd) return RunAugment(augment, io);
    if (*diversity_cmd) return RunDiversity(diversity, io);
    if (*subset_cmd) return RunSubset(subset, io);
    if (*grid_cmd) return RunGrid(grid, io);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CorpusError& e) {
    err << "invalid corpus: " << e.what() << '\n';
    return kExitInvalidData;
  } catch (const EmptyCorpus& e) {
    err << "invalid corpus: " << e.what() << '\n';
    return kExitInvalidData;
  } catch (const BackendUnavailable& e) {
    err << "backend error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const std::exception& e) {
    // Lexicon, paraphrase table, cache and filesystem problems.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace nerbt
