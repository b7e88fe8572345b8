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

#ifndef EXPSUM_ERROR_H_
#define EXPSUM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace expsum {

// Failure classes surfaced by the library. The names are part of the CLI
// output contract (batch error lines carry ErrorKindName()).
enum class ErrorKind {
  kParseFailure,
  kUnsupportedLanguage,
  kIoFailure,
  kEmptyDictionary,
  kEmptyCorpus,
  kClientFailure,
  kMalformedDraft,
  kMalformedRefinement,
  kAllCategoriesExcluded,
  kInvalidConfig,
  kInvalidArgument,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Sub-kind of a ClientFailure. Only kNetwork is retried.
enum class ClientFailureCause { kNetwork, kHttpStatus, kMalformedPayload, kNoMockRule };

class ClientError : public Error {
 public:
  ClientError(ClientFailureCause cause, const std::string& message)
      : Error(ErrorKind::kClientFailure, message), cause_(cause) {}

  ClientFailureCause cause() const { return cause_; }

 private:
  ClientFailureCause cause_;
};

}  // namespace expsum

#endif  // EXPSUM_ERROR_H_
