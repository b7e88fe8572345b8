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

// Drops empty and uninformative metadata before it reaches a prompt.
//
// A value is uninformative when its whole normalized text (lowercased,
// trimmed, whitespace collapsed) equals a dictionary entry. Matching is never
// by substring, so "Returns the level" survives a dictionary containing
// "return". Parameters are judged per parameter: one is dropped only when
// both its name and its type are uninformative.

#ifndef EXPSUM_METADATA_CHECK_H_
#define EXPSUM_METADATA_CHECK_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "expsum/code_model.h"
#include "json.hpp"

namespace expsum {

class UninformativeDictionary {
 public:
  // Normalizes and deduplicates. Throws Error(kEmptyDictionary) when no
  // entry survives normalization.
  UninformativeDictionary(const std::vector<std::string>& entries, std::string version);

  bool Matches(std::string_view value) const;

  const std::set<std::string>& entries() const { return entries_; }
  const std::string& version() const { return version_; }

 private:
  std::set<std::string> entries_;
  std::string version_;
};

// One entry per line, '#' starts a comment line. A "# version: X" comment
// sets the version; otherwise the file name is used. Throws
// Error(kIoFailure) or Error(kEmptyDictionary).
UninformativeDictionary LoadDictionary(const std::filesystem::path& path);

enum class RemovalReason { kEmpty, kUninformative };

std::string_view RemovalReasonName(RemovalReason reason);

struct RemovedField {
  // Top-level field name ("return_type", "dmt.@since") or a subfield
  // ("parameters[1]", "dependency[0]") when only part of a list goes.
  std::string field;
  RemovalReason reason;

  bool operator==(const RemovedField&) const = default;
};

struct CheckReport {
  std::vector<RemovedField> removed_fields;
  MetadataSet retained;
};

// Total and pure. function_name and file_path are always retained.
CheckReport CheckMetadata(const MetadataSet& m, const UninformativeDictionary& dict);

// Top-level fields of `m` that carry a value: function_name, parameters,
// ..., plus one "dmt.<key>" per annotation.
std::vector<std::string> PresentFields(const MetadataSet& m);

// Number of informative values, counting list elements and annotations
// individually.
size_t InformativeValueCount(const MetadataSet& m);

nlohmann::ordered_json CheckReportToJson(const CheckReport& report);

// Metadata rendered for a prompt: only fields with values, in table order.
nlohmann::ordered_json RetainedMetadataJson(const MetadataSet& m);

}  // namespace expsum

#endif  // EXPSUM_METADATA_CHECK_H_
