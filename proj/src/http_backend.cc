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

#include "nerbt/http_backend.h"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace nerbt {
namespace {

using json = nlohmann::json;

bool IsRetryableStatus(int status) {
  return status == 408 || status == 429 || status >= 500;
}

}  // namespace

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)),
      sleeper_([](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
      }),
      jitter_(config_.jitter_seed) {
  const std::string& url = config_.url;
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos || url.compare(0, scheme, "http") != 0) {
    throw std::invalid_argument("HTTP backend URL must start with http://: " +
                                url);
  }
  const std::size_t slash = url.find('/', scheme + 3);
  scheme_host_port_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/translate" : url.substr(slash);
  if (path_ == "/") path_ = "/translate";
  if (config_.max_batch_size == 0) config_.max_batch_size = 1;
}

std::chrono::milliseconds HttpBackend::Backoff(std::size_t retry) {
  const double base = static_cast<double>(config_.initial_backoff.count());
  const double cap = static_cast<double>(config_.max_backoff.count());
  const double ceiling =
      std::min(cap, base * static_cast<double>(1ULL << std::min<std::size_t>(
                                                   retry, 30)));
  double u;
  {
    std::lock_guard lock(jitter_mutex_);
    u = jitter_.NextDouble();
  }
  // Full jitter over the upper half keeps a floor on the wait.
  return std::chrono::milliseconds(
      static_cast<std::int64_t>(ceiling * (0.5 + 0.5 * u)));
}

std::vector<std::string> HttpBackend::Translate(
    std::string_view source, std::string_view target,
    std::span<const std::string> texts) {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (std::size_t begin = 0; begin < texts.size();
       begin += config_.max_batch_size) {
    const std::size_t count =
        std::min(config_.max_batch_size, texts.size() - begin);
    std::vector<std::string> part =
        TranslateBatch(source, target, texts.subspan(begin, count));
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<std::string> HttpBackend::TranslateBatch(
    std::string_view source, std::string_view target,
    std::span<const std::string> texts) {
  const json request = {{"source", source},
                        {"target", target},
                        {"texts", std::vector<std::string>(texts.begin(),
                                                           texts.end())}};
  const std::string body = request.dump();

  httplib::Headers headers;
  if (const char* token = std::getenv(config_.auth_env.c_str());
      token != nullptr && *token != '\0') {
    headers.emplace(config_.auth_header, token);
  }

  std::exception_ptr last_failure;
  for (std::size_t attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      ++retries_;
      sleeper_(Backoff(attempt - 1));
    }
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    client.set_write_timeout(config_.timeout);
    ++requests_;
    httplib::Result res =
        client.Post(path_, headers, body, "application/json");

    if (!res) {
      const httplib::Error error = res.error();
      const std::string message =
          "request to " + scheme_host_port_ + path_ +
          " failed: " + httplib::to_string(error);
      if (error == httplib::Error::Read || error == httplib::Error::Write ||
          error == httplib::Error::ConnectionTimeout) {
        last_failure = std::make_exception_ptr(BackendTimeout(message));
      } else {
        last_failure = std::make_exception_ptr(BackendUnavailable(message));
      }
      continue;
    }

    if (res->status != 200) {
      HttpStatusError failure(res->status,
                              "translation endpoint returned HTTP " +
                                  std::to_string(res->status));
      if (!IsRetryableStatus(res->status)) throw failure;
      last_failure = std::make_exception_ptr(failure);
      continue;
    }

    json response = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    auto translations = response.is_object() ? response.find("translations")
                                             : response.end();
    if (!response.is_object() || translations == response.end() ||
        !translations->is_array()) {
      last_failure = std::make_exception_ptr(
          MalformedResponse("response has no \"translations\" array"));
      continue;
    }
    if (translations->size() != texts.size()) {
      last_failure = std::make_exception_ptr(MalformedResponse(
          "expected " + std::to_string(texts.size()) + " translations, got " +
          std::to_string(translations->size())));
      continue;
    }
    std::vector<std::string> out;
    out.reserve(texts.size());
    bool well_typed = true;
    for (const json& item : *translations) {
      if (!item.is_string()) {
        well_typed = false;
        break;
      }
      out.push_back(item.get<std::string>());
    }
    if (!well_typed) {
      last_failure = std::make_exception_ptr(
          MalformedResponse("non-string entry in \"translations\""));
      continue;
    }
    return out;
  }
  std::rethrow_exception(last_failure);
}

}  // namespace nerbt
