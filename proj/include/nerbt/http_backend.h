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

#ifndef NERBT_HTTP_BACKEND_H_
#define NERBT_HTTP_BACKEND_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>

#include "nerbt/backend.h"
#include "nerbt/rng.h"

namespace nerbt {

struct HttpBackendConfig {
  // Base URL such as http://localhost:8080. A path in the URL replaces the
  // default /translate endpoint.
  std::string url;
  std::string auth_header = "Authorization";
  // Environment variable holding the auth header value; unset or empty
  // means no header is sent.
  std::string auth_env = "NERBT_AUTH_TOKEN";
  std::chrono::milliseconds timeout{30000};
  std::size_t max_batch_size = 32;
  // Retries after the first attempt; total attempts = max_retries + 1.
  std::size_t max_retries = 4;
  std::chrono::milliseconds initial_backoff{250};
  std::chrono::milliseconds max_backoff{8000};
  std::uint64_t jitter_seed = 0x5EED;
};

// Client for the JSON translation endpoint:
//   POST /translate {"source": "en", "target": "de", "texts": [...]}
//   200 {"translations": [...]}   (same length and order)
//
// Timeouts, connection failures, 408/429/5xx and malformed bodies are
// retried with exponential backoff and full jitter. Other statuses fail at
// once. When retries run out the last failure is thrown as BackendTimeout,
// HttpStatusError or MalformedResponse (all BackendUnavailable).
class HttpBackend : public TranslationBackend {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit HttpBackend(HttpBackendConfig config);

  std::string name() const override { return "http"; }
  bool Supports(std::string_view, std::string_view) const override {
    return true;
  }
  std::size_t max_batch_size() const override {
    return config_.max_batch_size;
  }
  std::vector<std::string> Translate(
      std::string_view source, std::string_view target,
      std::span<const std::string> texts) override;

  // Replaces std::this_thread::sleep_for between retries.
  void set_sleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }

  std::size_t requests_sent() const { return requests_.load(); }
  std::size_t retries() const { return retries_.load(); }

 private:
  std::vector<std::string> TranslateBatch(std::string_view source,
                                          std::string_view target,
                                          std::span<const std::string> texts);
  std::chrono::milliseconds Backoff(std::size_t retry);

  HttpBackendConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  Sleeper sleeper_;
  std::mutex jitter_mutex_;
  Rng jitter_;
  std::atomic<std::size_t> requests_{0};
  std::atomic<std::size_t> retries_{0};
};

}  // namespace nerbt

#endif  // NERBT_HTTP_BACKEND_H_
