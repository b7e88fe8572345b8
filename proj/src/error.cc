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

#include "expsum/error.h"

namespace expsum {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParseFailure: return "ParseFailure";
    case ErrorKind::kUnsupportedLanguage: return "UnsupportedLanguage";
    case ErrorKind::kIoFailure: return "IoFailure";
    case ErrorKind::kEmptyDictionary: return "EmptyDictionary";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kClientFailure: return "ClientFailure";
    case ErrorKind::kMalformedDraft: return "MalformedDraft";
    case ErrorKind::kMalformedRefinement: return "MalformedRefinement";
    case ErrorKind::kAllCategoriesExcluded: return "AllCategoriesExcluded";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace expsum
