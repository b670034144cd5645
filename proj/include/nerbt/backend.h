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

#ifndef NERBT_BACKEND_H_
#define NERBT_BACKEND_H_

#include <atomic>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nerbt {

// source -> intermediates... -> source, e.g. en -> de -> en.
struct LanguageChain {
  std::string source = "en";
  std::vector<std::string> intermediates = {"de"};

  // Accepts "en-de-en" or the shorthand "en-de"; the trailing return to the
  // source language is implied. Throws std::invalid_argument on empty codes,
  // a missing intermediate, or adjacent repeats.
  static LanguageChain Parse(std::string_view text);

  // Hops in application order, ending back at `source`.
  std::vector<std::pair<std::string, std::string>> Hops() const;

  // Canonical "en-de-en" form; also part of the cache key.
  std::string ToString() const;

  friend bool operator==(const LanguageChain&, const LanguageChain&) = default;
};

// Every failure a backend can report. Subclasses name the last cause seen.
class BackendUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BackendTimeout : public BackendUnavailable {
 public:
  using BackendUnavailable::BackendUnavailable;
};

class HttpStatusError : public BackendUnavailable {
 public:
  HttpStatusError(int status, const std::string& message)
      : BackendUnavailable(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class MalformedResponse : public BackendUnavailable {
 public:
  using BackendUnavailable::BackendUnavailable;
};

// A machine translation service. Implementations must be safe to call from
// several threads at once, return exactly one output per input in order, and
// return an empty batch for an empty batch.
class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;

  virtual std::string name() const = 0;
  virtual bool Supports(std::string_view source,
                        std::string_view target) const = 0;
  // Largest batch accepted by one Translate call; 0 means unlimited.
  virtual std::size_t max_batch_size() const { return 0; }

  virtual std::vector<std::string> Translate(
      std::string_view source, std::string_view target,
      std::span<const std::string> texts) = 0;
};

// Returns every text verbatim.
class IdentityBackend : public TranslationBackend {
 public:
  std::string name() const override { return "identity"; }
  bool Supports(std::string_view, std::string_view) const override {
    return true;
  }
  std::vector<std::string> Translate(
      std::string_view source, std::string_view target,
      std::span<const std::string> texts) override;

  std::size_t calls() const { return calls_.load(); }

 private:
  std::atomic<std::size_t> calls_{0};
};

}  // namespace nerbt

#endif  // NERBT_BACKEND_H_
