// Copyright 2026 The expsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "expsum/text.h"

#include <gtest/gtest.h>

#include "expsum/error.h"

namespace expsum {
namespace {

using Words = std::vector<std::string>;

TEST(SplitCamelCase, AcronymThenWord) {
  EXPECT_EQ(SplitCamelCase("AVSessionManager"), (Words{"AV", "Session", "Manager"}));
}

TEST(SplitCamelCase, DigitsStayWithHump) {
  EXPECT_EQ(SplitCamelCase("getV2Level"), (Words{"get", "V2", "Level"}));
}

TEST(SplitCamelCase, PlainWords) {
  EXPECT_EQ(SplitCamelCase("battery"), (Words{"battery"}));
  EXPECT_EQ(SplitCamelCase("RDB"), (Words{"RDB"}));
  EXPECT_TRUE(SplitCamelCase("").empty());
}

TEST(WordTokens, SplitsPunctuationAndCase) {
  EXPECT_EQ(WordTokens("ohos.battery getBatteryLevel(), STARTUP_HIDE"),
            (Words{"ohos", "battery", "get", "battery", "level", "startup", "hide"}));
}

TEST(NormalizePhrase, CollapsesWhitespace) {
  EXPECT_EQ(NormalizePhrase("  Unknown \t Type\n"), "unknown type");
}

TEST(ReadFile, MissingFileIsIoFailure) {
  try {
    ReadFile("/nonexistent/expsum/file.txt");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIoFailure);
  }
}

}  // namespace
}  // namespace expsum
