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

// Function metadata modeling. A function is reduced to a MetadataSet made of
// common metadata (signature, context and behavior fields that exist in any
// project) and an open map of project-specific domain annotations.

#ifndef EXPSUM_CODE_MODEL_H_
#define EXPSUM_CODE_MODEL_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace expsum {

enum class Language { kArkts, kTypescript, kJava, kPython, kCCpp, kUnknown };

std::string_view LanguageName(Language lang);
// Accepts the names produced by LanguageName plus a few aliases ("ts",
// "ets", "cpp"). Unknown names map to kUnknown.
Language ParseLanguage(std::string_view name);
Language LanguageFromPath(std::string_view path);

struct ParameterField {
  // Empty only when the frontend could not recover a name (destructuring
  // patterns); type_annotation is then present.
  std::string name;
  std::optional<std::string> type_annotation;
  std::optional<std::string> default_value;

  bool operator==(const ParameterField&) const = default;
};

struct MetadataSet {
  // Signature.
  std::string function_name;
  std::vector<ParameterField> parameters;
  std::optional<std::string> return_type;
  // Context.
  std::string file_path;
  std::optional<std::string> package_module;
  std::vector<std::string> dependency;
  // Behavior.
  std::optional<std::string> control_flow_skeleton;
  std::optional<std::string> io_behavior;
  std::optional<std::string> variable_modification;
  // Domain metadata keyed by annotation name, e.g. "@since".
  std::map<std::string, std::string> dmt;

  bool operator==(const MetadataSet&) const = default;
};

struct FunctionRecord {
  std::optional<std::string> source_text;
  Language language = Language::kUnknown;
  std::string file_path;
  std::optional<MetadataSet> pre_extracted;
};

// Which domain annotations to harvest. Keys not listed are dropped.
struct DmtConfig {
  std::set<std::string> enabled_keys;

  // @deprecated, @atomicservice, @since, @syscap, @officialdoc, @usage.
  static DmtConfig HarmonyOs();
};

// A language frontend turns source text into raw metadata. Implementations
// must be immutable after construction so one instance can serve many
// worker threads.
class Frontend {
 public:
  virtual ~Frontend() = default;

  // Returns metadata with every annotation found (no DMT filtering) and an
  // empty file_path. Throws Error(kParseFailure).
  virtual MetadataSet Parse(std::string_view source) const = 0;

  // Skeleton of a function (or of a bare statement list).
  virtual std::string ControlFlowSkeleton(std::string_view source) const = 0;
};

class FrontendRegistry {
 public:
  // Registers the TypeScript/ArkTS frontend for kArkts and kTypescript.
  static FrontendRegistry Default();

  void Register(Language lang, std::shared_ptr<const Frontend> frontend);
  const Frontend* Find(Language lang) const;

 private:
  std::map<Language, std::shared_ptr<const Frontend>> frontends_;
};

// Models one function. A pre_extracted record bypasses parsing and is only
// DMT-filtered. Throws Error(kParseFailure), Error(kUnsupportedLanguage) or
// Error(kInvalidArgument) for records violating FunctionRecord invariants.
MetadataSet ModelFunction(const FunctionRecord& record, const DmtConfig& dmt_config,
                          const FrontendRegistry& registry = FrontendRegistry::Default());

// Semicolon-joined labels from {conditional, loop, try, switch,
// return statement, callback registration} in first-occurrence order.
std::string ExtractControlFlowSkeleton(std::string_view source, Language language,
                                       const FrontendRegistry& registry =
                                           FrontendRegistry::Default());

// JSON rendering with keys in metadata-table order; dmt keys sorted. Absent
// optionals are written as null so every field is always present.
nlohmann::ordered_json MetadataToJson(const MetadataSet& m);
// Throws Error(kParseFailure) on shape errors.
MetadataSet MetadataFromJson(const nlohmann::json& j);

// Canonical text form (two-space indented JSON).
std::string SerializeMetadata(const MetadataSet& m);
MetadataSet DeserializeMetadata(std::string_view text);

FunctionRecord FunctionRecordFromJson(const nlohmann::json& j);

}  // namespace expsum

#endif  // EXPSUM_CODE_MODEL_H_
