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

// Domain-term knowledge base built from package-level documentation.
//
// Each entry is a (term, documentation, path context, vector) tuple. Vectors
// are TF-IDF encodings of the documentation under one model fitted on the
// whole corpus:
//
//   tf(i, j)  = n(i, j) / sum_k n(k, j)
//   idf(i)    = ln(M / (m_i + alpha))
//
// where M is the number of documents and m_i the number containing token i.

#ifndef EXPSUM_KNOWLEDGE_BASE_H_
#define EXPSUM_KNOWLEDGE_BASE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "expsum/llm_client.h"
#include "json.hpp"

namespace expsum {

struct PackageDoc {
  std::string path_context;  // e.g. "@kit.AVSessionKit.avSession"
  std::string text;
};

// Token index -> weight. Zero weights are never stored.
using SparseVector = std::map<uint32_t, double>;

struct TfIdfModel {
  std::map<std::string, uint32_t> vocabulary;
  std::map<std::string, uint32_t> doc_frequency;
  uint32_t doc_count = 0;
  double alpha = 0.01;

  double Idf(const std::string& token) const;
};

struct KnowledgeEntry {
  std::string term;
  std::string documentation;
  std::string path_context;
  SparseVector vector;
};

struct KnowledgeBase {
  TfIdfModel model;
  std::vector<KnowledgeEntry> entries;
};

// Surface forms that look like domain terms: mixed-case identifiers
// ("AVSession", "getBatteryLevel"), names with '_' ("STARTUP_HIDE"), dotted
// or otherwise joined identifiers ("ohos.battery"), and all-caps words of
// two or more letters. Deduplicated, in order of first occurrence.
std::vector<std::string> ExtractTermsLexical(const PackageDoc& doc);

// Words whose most plausible synonym would change the sentence's meaning,
// as judged by `client`. Candidates are lowercase content words that the
// lexical pass did not already catch. Client failures are rethrown with the
// document's path context attached.
std::vector<std::string> ExtractTermsSemantic(const PackageDoc& doc, const LlmClient& client);

// The request sent for one candidate word. Exposed so mock scripts can be
// written against it.
LlmRequest SemanticJudgmentRequest(std::string_view word, std::string_view sentence);

// Throws Error(kEmptyCorpus) on an empty corpus.
TfIdfModel FitTfidf(const std::vector<PackageDoc>& docs);

// Out-of-vocabulary tokens still count toward the TF denominator.
SparseVector EncodeTfidf(const TfIdfModel& model, std::string_view text);

double Cosine(const SparseVector& a, const SparseVector& b);

// One entry per (term, doc). `client` may be null for a lexical-only build.
// Throws Error(kEmptyCorpus), Error(kInvalidArgument) for a doc with an
// empty path or text, and ClientError.
KnowledgeBase BuildKnowledgeBase(const std::vector<PackageDoc>& docs, const LlmClient* client);

// A directory of text files (path context = file name minus a .txt/.md
// extension, read in name order) or a JSON manifest [{path_context, text}].
std::vector<PackageDoc> LoadPackageDocs(const std::filesystem::path& path);

nlohmann::ordered_json KnowledgeBaseToJson(const KnowledgeBase& kb);
KnowledgeBase KnowledgeBaseFromJson(const nlohmann::json& j);
void SaveKnowledgeBase(const KnowledgeBase& kb, const std::filesystem::path& path);
KnowledgeBase LoadKnowledgeBase(const std::filesystem::path& path);

}  // namespace expsum

#endif  // EXPSUM_KNOWLEDGE_BASE_H_
