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

// Structural frontend for TypeScript and ArkTS sources.
//
// The frontend does not build a full AST. It lexes the source, walks the
// declaration structure (imports, namespaces, classes/structs/interfaces)
// and picks the first function-like declaration as the target: a function
// declaration, a class or interface method, an accessor, a constructor, an
// arrow function bound to a variable, or an enum. The target's JSDoc block
// supplies the domain annotations and its body is scanned for behavior.

#ifndef EXPSUM_TS_FRONTEND_H_
#define EXPSUM_TS_FRONTEND_H_

#include <string>
#include <string_view>
#include <vector>

#include "expsum/code_model.h"

namespace expsum {

struct TsToken {
  enum class Kind { kIdentifier, kNumber, kString, kTemplate, kRegex, kPunct, kDocComment };

  Kind kind;
  std::string text;
  size_t begin = 0;  // byte offsets into the source
  size_t end = 0;
  bool newline_before = false;
};

// Throws Error(kParseFailure) on unterminated strings, templates, comments
// or regex literals. Ordinary comments are dropped; /** */ blocks are kept.
std::vector<TsToken> LexTs(std::string_view source);

// Parses the tag lines of a /** */ block: "@since 9" -> {"@since", "9"}.
// Tags without text map to "true"; repeated tags are joined with "; ".
std::map<std::string, std::string> ParseJsDocTags(std::string_view comment);

class TsFrontend : public Frontend {
 public:
  MetadataSet Parse(std::string_view source) const override;
  std::string ControlFlowSkeleton(std::string_view source) const override;
};

}  // namespace expsum

#endif  // EXPSUM_TS_FRONTEND_H_
