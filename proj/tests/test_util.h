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

#ifndef NERBT_TESTS_TEST_UTIL_H_
#define NERBT_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "nerbt/backend.h"
#include "nerbt/corpus.h"
#include "nerbt/rng.h"

namespace nerbt::testing {

// Builds a sentence from parallel token and label strings.
inline LabeledSentence MakeSentence(const std::vector<std::string>& tokens,
                                    const std::vector<std::string>& labels) {
  LabeledSentence s;
  s.tokens = tokens;
  for (const std::string& label : labels) s.labels.push_back(*Label::Parse(label));
  return s;
}

// Sentence whose tokens are "t0", "t1", ... under the given labels.
inline LabeledSentence FromLabels(const std::vector<std::string>& labels) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    tokens.push_back("t" + std::to_string(i));
  }
  return MakeSentence(tokens, labels);
}

inline std::vector<std::string> LabelStrings(const LabeledSentence& s) {
  std::vector<std::string> out;
  for (const Label& label : s.labels) out.push_back(label.ToString());
  return out;
}

// Random IOB2-valid sentence of 1..max_len tokens over `n_types` entity
// types, drawing tokens from a small vocabulary so repeats occur.
inline LabeledSentence RandomValidSentence(Rng& rng, std::size_t max_len = 20,
                                           std::size_t n_types = 3,
                                           std::size_t vocab = 30) {
  static const char* const kTypes[] = {"ORG", "LOC", "PER", "MAT", "OP"};
  const std::size_t len = 1 + rng.UniformIndex(max_len);
  LabeledSentence s;
  for (std::size_t i = 0; i < len; ++i) {
    s.tokens.push_back("w" + std::to_string(rng.UniformIndex(vocab)));
    const std::uint64_t r = rng.UniformIndex(10);
    const bool can_continue = i > 0 && !s.labels.back().is_outside();
    if (r < 5) {
      s.labels.push_back(Label::Outside());
    } else if (r < 7 && can_continue) {
      s.labels.push_back(Label::Inside(s.labels.back().entity_type()));
    } else {
      s.labels.push_back(Label::Begin(kTypes[rng.UniformIndex(n_types)]));
    }
  }
  return s;
}

// Backend that records every text it receives and applies a reversible
// marker so the splice path is exercised.
class RecordingBackend : public TranslationBackend {
 public:
  explicit RecordingBackend(bool paraphrase = false) : paraphrase_(paraphrase) {}

  std::string name() const override { return "recording"; }
  bool Supports(std::string_view, std::string_view) const override {
    return true;
  }
  std::vector<std::string> Translate(
      std::string_view source, std::string_view, std::span<const std::string> texts)
      override {
    calls_.fetch_add(1);
    std::vector<std::string> out;
    std::lock_guard lock(mutex_);
    for (const std::string& text : texts) {
      if (source == "en") received_.push_back(text);
      // On the way out, append a novel token; identity on the way back.
      out.push_back(paraphrase_ && source == "en" ? text + " indeed" : text);
    }
    return out;
  }

  std::size_t calls() const { return calls_.load(); }
  std::vector<std::string> received() const {
    std::lock_guard lock(mutex_);
    return received_;
  }

 private:
  bool paraphrase_;
  std::atomic<std::size_t> calls_{0};
  mutable std::mutex mutex_;
  std::vector<std::string> received_;
};

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void WriteFile(const std::filesystem::path& path,
                      const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("nerbt_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path DataPath(const std::string& name) {
  return std::filesystem::path(NERBT_TEST_DATA_DIR) / name;
}

}  // namespace nerbt::testing

#endif  // NERBT_TESTS_TEST_UTIL_H_
