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

// Small string helpers shared by the pipeline stages.

#ifndef EXPSUM_TEXT_H_
#define EXPSUM_TEXT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace expsum {

std::string Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Lowercases, trims and collapses internal whitespace runs to one space.
std::string NormalizePhrase(std::string_view s);

// ASCII letters and digits, plus every non-ASCII byte so that UTF-8 words
// are never split apart.
bool IsWordByte(char c);

// "AVSessionManager" -> {"AV", "Session", "Manager"}; "getV2Level" ->
// {"get", "V2", "Level"}. Digits stay attached to the preceding hump.
std::vector<std::string> SplitCamelCase(std::string_view word);

// Lowercased word tokens: split on every non-word byte, then on CamelCase
// boundaries. Used for TF-IDF indexing and term-overlap comparison.
std::vector<std::string> WordTokens(std::string_view text);

// Reads a whole file; throws Error(kIoFailure).
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

}  // namespace expsum

#endif  // EXPSUM_TEXT_H_
