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

// Two-stage summarization: a draft generator constrained by per-category
// schemas, and a refiner that either rejects the draft's category or
// polishes the text. Each rejection removes the rejected category from the
// next draft prompt.
//
// Wire format expected from the model:
//   draft:    "CATEGORY: <category>\nSUMMARY: <text>"
//   refiner:  "Error category: <category>"  or  "FINAL: <text>"

#ifndef EXPSUM_SUMMARIZER_H_
#define EXPSUM_SUMMARIZER_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "expsum/code_model.h"
#include "expsum/llm_client.h"
#include "expsum/retrieval.h"
#include "json.hpp"

namespace expsum {

enum class FunctionCategory { kField, kProcedural, kConstructor, kCallback, kUtility };

inline constexpr std::array<FunctionCategory, 5> kAllCategories = {
    FunctionCategory::kField, FunctionCategory::kProcedural, FunctionCategory::kConstructor,
    FunctionCategory::kCallback, FunctionCategory::kUtility};

std::string_view CategoryName(FunctionCategory c);
// Case-insensitive; nullopt for unknown names.
std::optional<FunctionCategory> ParseCategory(std::string_view name);

struct CategorySchema {
  FunctionCategory category = FunctionCategory::kField;
  std::string definition;
  std::vector<std::string> classification_criteria;
  std::map<std::string, std::string> datatype_templates;
  std::vector<std::string> forbidden;
  std::vector<std::string> example_names;
};

// Indexed by category. Loading validates that all five are present, that
// the field schema carries Boolean/Integer/String/Object/Enumeration
// templates, and that no schema names another category, so leaving a
// schema out of a prompt really removes that category from it.
using SchemaSet = std::map<FunctionCategory, CategorySchema>;

CategorySchema CategorySchemaFromJson(const nlohmann::json& j);
void ValidateSchemas(const SchemaSet& schemas);
// Reads <dir>/<category>.json for each category.
SchemaSet LoadSchemas(const std::filesystem::path& dir);

// JSON list of strings; empty lists are rejected.
std::vector<std::string> LoadRefinerConstraints(const std::filesystem::path& path);

struct SummarizerConfig {
  int max_iterations = 3;
  int max_parse_retries = 1;
  double temperature = 0.0;
  int max_tokens = 512;

  void Validate() const;
};

struct DraftResult {
  std::string summary_text;
  FunctionCategory declared_category = FunctionCategory::kField;
  std::string raw_response;
};

struct RefinementOutcome {
  bool accepted = false;
  std::string final_text;                                      // when accepted
  FunctionCategory error_category = FunctionCategory::kField;  // when rejected
};

struct TraceStep {
  DraftResult draft;
  RefinementOutcome outcome;
};

struct SummaryResult {
  std::string final_summary;
  FunctionCategory category = FunctionCategory::kField;
  std::vector<std::string> retrieved_terms;
  int iterations = 0;
  std::set<FunctionCategory> excluded_categories;
  std::vector<TraceStep> trace;
  bool degraded = false;
};

// Throws Error(kAllCategoriesExcluded) when nothing would remain.
LlmRequest BuildDraftPrompt(const MetadataSet& meta, const RetrievalResult& retrieval,
                            const SchemaSet& schemas,
                            const std::set<FunctionCategory>& excluded,
                            const SummarizerConfig& cfg = {});

LlmRequest BuildRefinePrompt(const MetadataSet& meta, const DraftResult& draft,
                             const std::vector<std::string>& refiner_constraints,
                             const SummarizerConfig& cfg = {});

// Throw Error(kMalformedDraft) / Error(kMalformedRefinement).
DraftResult ParseDraft(const LlmResponse& response);
RefinementOutcome ParseRefinement(const LlmResponse& response);

// `meta` must already have been through the metadata check.
SummaryResult Summarize(const MetadataSet& meta, const RetrievalResult& retrieval,
                        const LlmClient& client, const SchemaSet& schemas,
                        const std::vector<std::string>& refiner_constraints,
                        const SummarizerConfig& cfg);

// Forbidden set/get verb forms found in `text`, lowercased, in order.
std::vector<std::string> SetGetVerbs(std::string_view text);

nlohmann::ordered_json SummaryTraceToJson(const SummaryResult& result);

}  // namespace expsum

#endif  // EXPSUM_SUMMARIZER_H_
