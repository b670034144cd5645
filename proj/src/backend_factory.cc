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

#include "nerbt/backend_factory.h"

#include <stdexcept>

#include "nerbt/dictionary_backend.h"

namespace nerbt {

std::unique_ptr<TranslationBackend> MakeBackend(
    std::string_view spec, const HttpBackendConfig& http_defaults) {
  if (spec == "identity") return std::make_unique<IdentityBackend>();
  if (spec.starts_with("dict:")) {
    return std::make_unique<DictionaryBackend>(
        DictionaryBackend::Load(std::string(spec.substr(5))));
  }
  if (spec.starts_with("http:")) {
    HttpBackendConfig config = http_defaults;
    config.url = std::string(spec.substr(5));
    // "http:http://host", "http://host" and "http:host:port" are accepted.
    if (spec.starts_with("http://")) {
      config.url = std::string(spec);
    } else if (!config.url.starts_with("http://") &&
               !config.url.starts_with("https://")) {
      config.url = "http://" + config.url;
    }
    return std::make_unique<HttpBackend>(std::move(config));
  }
  throw std::invalid_argument("unknown backend '" + std::string(spec) +
                              "' (expected identity, dict:FILE or http:URL)");
}

}  // namespace nerbt
