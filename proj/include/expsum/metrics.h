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

// Reference-based summary metrics on a 0-100 scale.
//
// BLEU-4 is sentence level: clipped n-gram precisions for n = 1..4 with
// uniform weights, epsilon smoothing (0.1 / count) for orders with no match,
// and the usual brevity penalty. Orders for which the candidate has no
// n-grams at all are left out of the geometric mean, so a short candidate
// identical to its reference scores 100. ROUGE-L is the LCS F1 (beta = 1).

#ifndef EXPSUM_METRICS_H_
#define EXPSUM_METRICS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace expsum {

inline constexpr double kBleuEpsilon = 0.1;

// Lowercased alphanumeric runs; everything else separates tokens.
std::vector<std::string> MetricTokens(std::string_view text);

double Bleu4(std::string_view candidate, std::string_view reference);
double RougeL(std::string_view candidate, std::string_view reference);

// Embedding-based similarity (e.g. Sentence-BERT cosine). No implementation
// ships; the report reserves a column for one.
class SemanticMetric {
 public:
  virtual ~SemanticMetric() = default;
  virtual double Score(std::string_view candidate, std::string_view reference) const = 0;
};

struct ScoredPair {
  std::string id;
  std::string candidate;
  std::string reference;
};

struct ItemScore {
  std::string id;
  double bleu4 = 0.0;
  double rouge_l = 0.0;
  std::optional<double> semantic;
};

struct EvaluationReport {
  std::vector<ItemScore> per_item;
  double mean_bleu4 = 0.0;
  double mean_rouge_l = 0.0;
  size_t n = 0;
};

// Throws Error(kEmptyCorpus) for no pairs and Error(kInvalidArgument) for an
// empty reference.
EvaluationReport EvaluateCorpus(const std::vector<ScoredPair>& pairs,
                                const SemanticMetric* semantic = nullptr);

// JSON lines of {id, candidate, reference}.
std::vector<ScoredPair> LoadScoredPairs(const std::filesystem::path& path);

nlohmann::ordered_json EvaluationReportToJson(const EvaluationReport& report);
std::string EvaluationReportToCsv(const EvaluationReport& report);

}  // namespace expsum

#endif  // EXPSUM_METRICS_H_
