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
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "nerbt/corpus.h"
#include "stub_server.h"
#include "test_util.h"

namespace nerbt {
namespace {

namespace fs = std::filesystem;
using ::nerbt::testing::DataPath;
using ::nerbt::testing::ReadFile;
using ::nerbt::testing::StubServer;
using ::nerbt::testing::TempDir;
using ::nerbt::testing::WriteFile;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult RunNerbt(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "nerbt");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string Data(const std::string& name) { return DataPath(name).string(); }

TEST(CliValidateTest, ValidFixturePasses) {
  const CliResult r = RunNerbt({"validate", Data("chem.conll")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("OK (10 sentences)"), std::string::npos);
}

TEST(CliValidateTest, InsideAfterOutsideFailsWithOneDiagnostic) {
  const CliResult r = RunNerbt({"validate", Data("invalid.conll")});
  EXPECT_EQ(r.code, kExitInvalidData);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
  EXPECT_NE(r.out.find(":3: sentence 0: InvalidTransition"), std::string::npos);
}

TEST(CliValidateTest, RepairedCopyRevalidates) {
  TempDir dir;
  const std::string repaired = (dir.path() / "fixed.conll").string();
  const CliResult first =
      RunNerbt({"validate", Data("invalid.conll"), "--repair-iob", "-o", repaired});
  EXPECT_EQ(first.code, kExitInvalidData);
  const CliResult second = RunNerbt({"validate", repaired});
  EXPECT_EQ(second.code, kExitOk) << second.out;
  EXPECT_NE(ReadFile(repaired).find("German\tB-MISC"), std::string::npos);
}

TEST(CliValidateTest, ReadsStdinAndEmitsJson) {
  const CliResult r = RunNerbt({"validate", "-", "--json"}, "a\tO\nb\tI-X\n\n");
  EXPECT_EQ(r.code, kExitInvalidData);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["valid"], false);
  EXPECT_EQ(doc["diagnostics"].size(), 1u);
  EXPECT_EQ(doc["diagnostics"][0]["line"], 2);
}

TEST(CliValidateTest, MissingFileIsUsageError) {
  EXPECT_EQ(RunNerbt({"validate", "/nonexistent.conll"}).code, kExitUsage);
}

TEST(CliStatsTest, HandCountedFixture) {
  const CliResult r = RunNerbt({"stats", Data("news.conll"), "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["sentences"], 8);
  // Per sentence: 3 + 1 + 1 + 3 + 4 + 5 + 4 + 3 mentions; 16 distinct
  // surface forms across ORG, MISC, PER and LOC.
  EXPECT_EQ(doc["mentions"], 24);
  EXPECT_EQ(doc["unique_mentions"], 16);
  EXPECT_EQ(doc["entity_types"], 4);
}

TEST(CliStatsTest, TextTableFromStdin) {
  const CliResult r = RunNerbt({"stats"}, "EU\tB-ORG\nsays\tO\n\n");
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("sentences        1"), std::string::npos);
  EXPECT_NE(r.out.find("mentions         1"), std::string::npos);
}

TEST(CliStatsTest, InvalidInputExitsOne) {
  EXPECT_EQ(RunNerbt({"stats", Data("invalid.conll")}).code, kExitInvalidData);
  EXPECT_EQ(RunNerbt({"stats", Data("invalid.conll"), "--repair-iob"}).code, kExitOk);
}

TEST(CliAugmentTest, IdentityBacktranslationReproducesInput) {
  TempDir dir;
  const std::string out = (dir.path() / "out.conll").string();
  const CliResult r = RunNerbt({"augment", "-i", Data("chem.conll"), "-o", out,
                           "--method", "bt", "--backend", "identity", "--n", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(ReadFile(out), ReadFile(DataPath("chem.conll")));
}

TEST(CliAugmentTest, LwtrAtZeroAddsNothing) {
  const CliResult r = RunNerbt({"augment", "-i", Data("news.conll"), "-o", "-",
                           "--method", "lwtr", "--p", "0", "--n", "1", "-q"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, ReadFile(DataPath("news.conll")));
  EXPECT_TRUE(r.err.empty());
}

TEST(CliAugmentTest, RerunIsByteIdenticalAndReportIsJson) {
  TempDir dir;
  std::vector<std::string> outputs;
  for (const char* jobs : {"1", "8", "1"}) {
    const std::string out = (dir.path() / (std::string("o") + jobs)).string();
    const std::string report = out + ".json";
    const CliResult r = RunNerbt({"augment", "-i", Data("chem.conll"), "-o", out,
                             "--method", "all", "--lexicon", Data("lexicon.tsv"),
                             "--backend", "dict:" + Data("paraphrase.tsv"),
                             "--p", "0.5", "--n", "2", "--jobs", jobs,
                             "--report", report});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    outputs.push_back(ReadFile(out));
    const auto doc = nlohmann::json::parse(ReadFile(report));
    EXPECT_EQ(doc["plan"]["methods"], "all");
    EXPECT_GT(doc["counts"]["generated"].get<int>(), 0);
  }
  EXPECT_EQ(outputs[0], outputs[1]);
  EXPECT_EQ(outputs[0], outputs[2]);
}

TEST(CliAugmentTest, UsageErrors) {
  const std::string in = Data("chem.conll");
  EXPECT_EQ(RunNerbt({"augment", "-i", in, "-o", "-", "--method", "crop"}).code,
            kExitUsage);
  EXPECT_EQ(RunNerbt({"augment", "-i", in, "-o", "-", "--p", "2"}).code, kExitUsage);
  EXPECT_EQ(RunNerbt({"augment", "-i", in, "-o", "-", "--method", "sr"}).code,
            kExitUsage);
  EXPECT_EQ(RunNerbt({"augment", "-i", in, "-o", "-", "--backend", "gpt"}).code,
            kExitUsage);
  EXPECT_EQ(RunNerbt({"augment", "-i", in, "-o", "-", "--chain", "en"}).code,
            kExitUsage);
  EXPECT_EQ(RunNerbt({"augment", "-i", in}).code, kExitUsage);
  EXPECT_EQ(RunNerbt({"augment", "-i", Data("invalid.conll"), "-o", "-"}).code,
            kExitInvalidData);
  EXPECT_EQ(RunNerbt({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(RunNerbt({}).code, kExitUsage);
}

TEST(CliAugmentTest, HelpDocumentsEveryFlag) {
  const CliResult r = RunNerbt({"augment", "--help"});
  EXPECT_EQ(r.code, kExitOk);
  for (const char* flag :
       {"--method", "--p", "--n", "--seed", "--backend", "--chain", "--cache",
        "--min-tokens", "--lexicon", "--jobs", "--report", "--retry-budget"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
}

TEST(CliAugmentTest, BackendFailureExitsThreeWithoutOutput) {
  StubServer server([](int, const nlohmann::json&, httplib::Response& res) {
    res.status = 503;
  });
  TempDir dir;
  const fs::path out = dir.path() / "out.conll";
  const CliResult r =
      RunNerbt({"augment", "-i", Data("chem.conll"), "-o", out.string(),
           "--backend", "http:" + server.url(), "--p", "1", "--max-retries",
           "1", "--backoff-ms", "1"});
  EXPECT_EQ(r.code, kExitBackend);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_TRUE(fs::is_empty(dir.path()));
}

TEST(CliAugmentTest, HttpBackendWithCache) {
  StubServer server([](int, const nlohmann::json& body, httplib::Response& res) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : body["texts"]) out.push_back(t.get<std::string>() + " ok");
    res.set_content(nlohmann::json({{"translations", out}}).dump(),
                    "application/json");
  });
  TempDir dir;
  const std::string cache = (dir.path() / "cache.jsonl").string();
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const std::string out = (dir.path() / ("o" + std::to_string(run))).string();
    const CliResult r = RunNerbt({"augment", "-i", Data("bio.conll"), "-o", out,
                             "--backend", "http:" + server.url(), "--cache",
                             cache, "--n", "2", "--p", "0.7", "-q"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    outputs.push_back(ReadFile(out));
    if (run == 0) EXPECT_GT(server.requests(), 0);
  }
  const int after_first = server.requests();
  EXPECT_EQ(outputs[0], outputs[1]);
  EXPECT_EQ(server.requests(), after_first);
}

TEST(CliDiversityTest, SingleCorpusAndJson) {
  const CliResult r = RunNerbt({"diversity", Data("diversity.conll"), "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], 1);
  ASSERT_EQ(doc["corpora"].size(), 1u);
  EXPECT_EQ(doc["corpora"][0]["sentences"], 6);
  EXPECT_LT(doc["corpora"][0]["macro_distinct1"].get<double>(), 1.0);
  const CliResult text = RunNerbt({"diversity", Data("diversity.conll"), Data("bio.conll")});
  EXPECT_EQ(std::count(text.out.begin(), text.out.end(), '\n'), 3);
}

TEST(CliSubsetTest, DefaultSizesNeedLargeEnoughCorpus) {
  TempDir dir;
  const CliResult r = RunNerbt({"subset", "-i", Data("chem.conll"), "--out-dir",
                           dir.path().string()});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(CliSubsetTest, WritesNestedSubsets) {
  TempDir dir;
  std::string big;
  for (int i = 0; i < 60; ++i) big += ReadFile(DataPath("news.conll"));
  WriteFile(dir.path() / "big.conll", big);
  const CliResult r =
      RunNerbt({"subset", "-i", (dir.path() / "big.conll").string(), "--out-dir",
           (dir.path() / "subsets").string(), "--sizes", "50,150,full"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Corpus small = ReadConllFile((dir.path() / "subsets" / "50.conll").string());
  const Corpus medium = ReadConllFile((dir.path() / "subsets" / "150.conll").string());
  const Corpus full = ReadConllFile((dir.path() / "subsets" / "full.conll").string());
  EXPECT_EQ(small.sentences.size(), 50u);
  EXPECT_EQ(medium.sentences.size(), 150u);
  EXPECT_EQ(full.sentences.size(), 480u);
}

TEST(CliGridTest, RunsManifestAndRejectsBadOnes) {
  TempDir dir;
  for (const char* name : {"chem.conll", "chem_dev.conll", "chem_test.conll",
                           "paraphrase.tsv", "manifest.json"}) {
    fs::copy_file(DataPath(name), dir.path() / name);
  }
  const std::string manifest = (dir.path() / "manifest.json").string();
  const CliResult dry = RunNerbt({"grid", manifest, "--dry-run"});
  ASSERT_EQ(dry.code, kExitOk) << dry.err;
  EXPECT_EQ(std::count(dry.out.begin(), dry.out.end(), '\n'), 32);

  const CliResult r = RunNerbt({"grid", manifest});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir.path() / "out")) {
    files += entry.path().extension() == ".conll";
  }
  EXPECT_EQ(files, 32u);
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "chem" / "5"));
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "chem" / "full"));

  WriteFile(dir.path() / "bad.json", "{\"train\": \"chem.conll\", \"probabilities\": []}");
  EXPECT_EQ(RunNerbt({"grid", (dir.path() / "bad.json").string()}).code, kExitUsage);
  WriteFile(dir.path() / "broken.json", "{not json");
  EXPECT_EQ(RunNerbt({"grid", (dir.path() / "broken.json").string()}).code, kExitUsage);
}

}  // namespace
}  // namespace nerbt
