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

#include "nerbt/backend.h"

namespace nerbt {

LanguageChain LanguageChain::Parse(std::string_view text) {
  std::vector<std::string> codes;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = text.find('-', start);
    codes.emplace_back(text.substr(start, dash - start));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  for (const std::string& code : codes) {
    if (code.empty()) {
      throw std::invalid_argument("empty language code in chain '" +
                                  std::string(text) + "'");
    }
  }
  for (std::size_t i = 1; i < codes.size(); ++i) {
    if (codes[i] == codes[i - 1]) {
      throw std::invalid_argument("repeated adjacent language '" + codes[i] +
                                  "' in chain '" + std::string(text) + "'");
    }
  }
  if (codes.size() > 2 && codes.back() == codes.front()) codes.pop_back();
  if (codes.size() < 2) {
    throw std::invalid_argument("chain '" + std::string(text) +
                                "' needs at least one intermediate language");
  }
  LanguageChain chain;
  chain.source = codes.front();
  chain.intermediates.assign(codes.begin() + 1, codes.end());
  return chain;
}

std::vector<std::pair<std::string, std::string>> LanguageChain::Hops() const {
  std::vector<std::pair<std::string, std::string>> hops;
  std::string from = source;
  for (const std::string& to : intermediates) {
    hops.emplace_back(from, to);
    from = to;
  }
  hops.emplace_back(from, source);
  return hops;
}

std::string LanguageChain::ToString() const {
  std::string out = source;
  for (const std::string& code : intermediates) out += "-" + code;
  return out + "-" + source;
}

std::vector<std::string> IdentityBackend::Translate(
    std::string_view, std::string_view, std::span<const std::string> texts) {
  ++calls_;
  return std::vector<std::string>(texts.begin(), texts.end());
}

}  // namespace nerbt
