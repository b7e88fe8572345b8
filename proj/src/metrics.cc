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

#include "expsum/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "expsum/error.h"
#include "expsum/text.h"

namespace expsum {

std::vector<std::string> MetricTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (IsWordByte(c)) {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, int> NgramCounts(const std::vector<std::string>& tokens, size_t n) {
  std::map<Ngram, int> counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

}  // namespace

double Bleu4(std::string_view candidate, std::string_view reference) {
  std::vector<std::string> cand = MetricTokens(candidate);
  std::vector<std::string> ref = MetricTokens(reference);
  if (cand.empty()) return 0.0;

  double log_sum = 0.0;
  int orders = 0;
  for (size_t n = 1; n <= 4; ++n) {
    if (cand.size() < n) break;
    auto c_counts = NgramCounts(cand, n);
    auto r_counts = NgramCounts(ref, n);
    int total = static_cast<int>(cand.size() - n + 1);
    int matched = 0;
    for (const auto& [gram, count] : c_counts) {
      auto it = r_counts.find(gram);
      if (it != r_counts.end()) matched += std::min(count, it->second);
    }
    double p = matched > 0 ? static_cast<double>(matched) / total : kBleuEpsilon / total;
    log_sum += std::log(p);
    ++orders;
  }
  double c = static_cast<double>(cand.size());
  double r = static_cast<double>(ref.size());
  double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return 100.0 * bp * std::exp(log_sum / orders);
}

double RougeL(std::string_view candidate, std::string_view reference) {
  std::vector<std::string> cand = MetricTokens(candidate);
  std::vector<std::string> ref = MetricTokens(reference);
  if (cand.empty() || ref.empty()) return 0.0;
  std::vector<std::vector<int>> dp(cand.size() + 1, std::vector<int>(ref.size() + 1, 0));
  for (size_t i = 1; i <= cand.size(); ++i) {
    for (size_t j = 1; j <= ref.size(); ++j) {
      dp[i][j] = cand[i - 1] == ref[j - 1] ? dp[i - 1][j - 1] + 1
                                           : std::max(dp[i - 1][j], dp[i][j - 1]);
    }
  }
  double lcs = dp[cand.size()][ref.size()];
  if (lcs == 0) return 0.0;
  double p = lcs / cand.size();
  double r = lcs / ref.size();
  return 100.0 * 2 * p * r / (p + r);
}

EvaluationReport EvaluateCorpus(const std::vector<ScoredPair>& pairs, const SemanticMetric* semantic) {
  if (pairs.empty()) throw Error(ErrorKind::kEmptyCorpus, "empty corpus: nothing to evaluate");
  EvaluationReport report;
  report.n = pairs.size();
  double bleu_sum = 0.0, rouge_sum = 0.0;
  for (const auto& p : pairs) {
    if (Trim(p.reference).empty()) {
      throw Error(ErrorKind::kInvalidArgument, "empty reference for id '" + p.id + "'");
    }
    ItemScore s{p.id, Bleu4(p.candidate, p.reference), RougeL(p.candidate, p.reference), std::nullopt};
    if (semantic != nullptr) s.semantic = semantic->Score(p.candidate, p.reference);
    bleu_sum += s.bleu4;
    rouge_sum += s.rouge_l;
    report.per_item.push_back(std::move(s));
  }
  report.mean_bleu4 = bleu_sum / report.n;
  report.mean_rouge_l = rouge_sum / report.n;
  return report;
}

std::vector<ScoredPair> LoadScoredPairs(const std::filesystem::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<ScoredPair> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      pairs.push_back({j.at("id").get<std::string>(), j.at("candidate").get<std::string>(),
                       j.at("reference").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kParseFailure,
                  path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return pairs;
}

nlohmann::ordered_json EvaluationReportToJson(const EvaluationReport& report) {
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& s : report.per_item) {
    nlohmann::ordered_json item;
    item["id"] = s.id;
    item["bleu4"] = s.bleu4;
    item["rougeL"] = s.rouge_l;
    item["sentbert_cos"] = s.semantic ? nlohmann::ordered_json(*s.semantic) : nlohmann::ordered_json();
    items.push_back(std::move(item));
  }
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["corpus_means"] = {{"bleu4", report.mean_bleu4}, {"rougeL", report.mean_rouge_l}};
  j["per_item"] = std::move(items);
  return j;
}

std::string EvaluationReportToCsv(const EvaluationReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << "id,bleu4,rougeL,sentbert_cos\n";
  for (const auto& s : report.per_item) {
    std::string id = s.id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : id) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      id = quoted + "\"";
    }
    out << id << ',' << s.bleu4 << ',' << s.rouge_l << ',';
    if (s.semantic) out << *s.semantic;
    out << '\n';
  }
  return out.str();
}

}  // namespace expsum
