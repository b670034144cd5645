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

#ifndef NERBT_BACKEND_FACTORY_H_
#define NERBT_BACKEND_FACTORY_H_

#include <memory>
#include <string>
#include <string_view>

#include "nerbt/backend.h"
#include "nerbt/http_backend.h"

namespace nerbt {

// Builds a backend from "identity", "dict:<table file>" or "http:<url>".
// For http, `http_defaults` supplies everything except the URL. Throws
// std::invalid_argument for an unknown form.
std::unique_ptr<TranslationBackend> MakeBackend(
    std::string_view spec, const HttpBackendConfig& http_defaults = {});

}  // namespace nerbt

#endif  // NERBT_BACKEND_FACTORY_H_
