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

#include <stdexcept>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace nerbt {
namespace {

using Hop = std::pair<std::string, std::string>;

TEST(LanguageChainTest, ParsesFullAndShortForms) {
  const LanguageChain full = LanguageChain::Parse("en-de-en");
  EXPECT_EQ(full.source, "en");
  EXPECT_EQ(full.intermediates, (std::vector<std::string>{"de"}));
  EXPECT_EQ(LanguageChain::Parse("en-de"), full);
  EXPECT_EQ(full, LanguageChain{});
  EXPECT_EQ(full.ToString(), "en-de-en");
}

TEST(LanguageChainTest, MultiHopChain) {
  const LanguageChain chain = LanguageChain::Parse("en-de-fr-en");
  EXPECT_EQ(chain.Hops(), (std::vector<Hop>{{"en", "de"}, {"de", "fr"},
                                            {"fr", "en"}}));
  EXPECT_EQ(chain.ToString(), "en-de-fr-en");
}

TEST(LanguageChainTest, RejectsBadChains) {
  for (const char* bad : {"", "en", "en-", "-de", "en--de", "en-en",
                          "en-de-de-en"}) {
    EXPECT_THROW(LanguageChain::Parse(bad), std::invalid_argument) << bad;
  }
}

TEST(IdentityBackendTest, ReturnsInputAndCountsCalls) {
  IdentityBackend backend;
  const std::vector<std::string> texts = {"a b", "c"};
  EXPECT_EQ(backend.Translate("en", "de", texts), texts);
  EXPECT_TRUE(backend.Translate("en", "de", {}).empty());
  EXPECT_EQ(backend.calls(), 2u);
}

TEST(BackendErrorsTest, AllAreBackendUnavailable) {
  EXPECT_THROW(throw BackendTimeout("t"), BackendUnavailable);
  EXPECT_THROW(throw MalformedResponse("m"), BackendUnavailable);
  try {
    throw HttpStatusError(503, "busy");
  } catch (const BackendUnavailable& e) {
    EXPECT_EQ(dynamic_cast<const HttpStatusError&>(e).status(), 503);
  }
}

}  // namespace
}  // namespace nerbt
