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

// Cascaded knowledge retrieval.
//
//   1. keep entries whose path context covers enough of the query path,
//   2. rank survivors by TF-IDF cosine against the query text, keep top n,
//   3. drop terms nested inside a longer retrieved term.

#ifndef EXPSUM_RETRIEVAL_H_
#define EXPSUM_RETRIEVAL_H_

#include <string>
#include <string_view>
#include <vector>

#include "expsum/code_model.h"
#include "expsum/knowledge_base.h"
#include "json.hpp"

namespace expsum {

struct QueryText {
  std::string concatenated;  // metadata values joined by ", "
  std::string path;
};

struct RetrievalConfig {
  double path_overlap_threshold = 0.75;
  int top_n = 9;
  double token_overlap_threshold = 0.75;

  // Throws Error(kInvalidConfig) unless thresholds are in (0, 1] and
  // top_n >= 1.
  void Validate() const;
};

struct ScoredEntry {
  KnowledgeEntry entry;
  double score = 0.0;
};

struct RetrievalResult {
  std::vector<std::string> terms;
  std::vector<ScoredEntry> entries;
  // Survivors after stage 1, after stage 2, and terms after stage 3.
  std::vector<size_t> stage_trace;
};

// Query path from package_module when present, else file_path; query text
// from the retained metadata values.
QueryText BuildQuery(const MetadataSet& m);

// Lowercased path tokens split on '/', '.' and '@'.
std::vector<std::string> PathTokens(std::string_view path);

// Length of the common left-aligned token run over the query token count.
double PathOverlap(std::string_view query_path, std::string_view entry_path);

// Lowercased word and camel-case tokens.
std::vector<std::string> TermTokens(std::string_view term);

// Multiset intersection size over the token count of the longer term.
double TokenOverlap(std::string_view a, std::string_view b);

std::vector<KnowledgeEntry> Stage1Filter(const QueryText& query,
                                         const std::vector<KnowledgeEntry>& entries,
                                         const RetrievalConfig& cfg);

// Descending score; ties by path_context, then term.
std::vector<ScoredEntry> Stage2Rank(const QueryText& query, const TfIdfModel& model,
                                    const std::vector<KnowledgeEntry>& survivors,
                                    const RetrievalConfig& cfg);

std::vector<std::string> Stage3Dedup(const std::vector<std::string>& terms,
                                     const RetrievalConfig& cfg);

RetrievalResult Retrieve(const QueryText& query, const KnowledgeBase& kb,
                         const RetrievalConfig& cfg);

nlohmann::ordered_json RetrievalResultToJson(const RetrievalResult& result);

}  // namespace expsum

#endif  // EXPSUM_RETRIEVAL_H_
