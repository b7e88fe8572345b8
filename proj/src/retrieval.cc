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

#include "expsum/retrieval.h"

#include <algorithm>
#include <map>
#include <set>

#include "expsum/error.h"
#include "expsum/metadata_check.h"
#include "expsum/text.h"

namespace expsum {

void RetrievalConfig::Validate() const {
  auto in_range = [](double t) { return t > 0.0 && t <= 1.0; };
  if (!in_range(path_overlap_threshold) || !in_range(token_overlap_threshold)) {
    throw Error(ErrorKind::kInvalidConfig, "retrieval thresholds must lie in (0, 1]");
  }
  if (top_n < 1) throw Error(ErrorKind::kInvalidConfig, "retrieval top_n must be >= 1");
}

namespace {

void Flatten(const nlohmann::ordered_json& j, std::vector<std::string>& out) {
  if (j.is_string()) {
    std::string s = Trim(j.get<std::string>());
    if (!s.empty()) out.push_back(std::move(s));
  } else if (j.is_array() || j.is_object()) {
    for (const auto& v : j) Flatten(v, out);
  }
}

}  // namespace

QueryText BuildQuery(const MetadataSet& m) {
  std::vector<std::string> values;
  Flatten(RetainedMetadataJson(m), values);
  QueryText q;
  q.concatenated = Join(values, ", ");
  q.path = m.package_module && !Trim(*m.package_module).empty() ? *m.package_module : m.file_path;
  return q;
}

std::vector<std::string> PathTokens(std::string_view path) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : path) {
    if (c == '/' || c == '.' || c == '@') {
      if (!cur.empty()) tokens.push_back(ToLower(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(ToLower(cur));
  return tokens;
}

double PathOverlap(std::string_view query_path, std::string_view entry_path) {
  std::vector<std::string> q = PathTokens(query_path);
  std::vector<std::string> e = PathTokens(entry_path);
  if (q.empty()) return 0.0;
  size_t run = 0;
  while (run < q.size() && run < e.size() && q[run] == e[run]) ++run;
  return static_cast<double>(run) / static_cast<double>(q.size());
}

std::vector<std::string> TermTokens(std::string_view term) { return WordTokens(term); }

double TokenOverlap(std::string_view a, std::string_view b) {
  std::vector<std::string> ta = TermTokens(a);
  std::vector<std::string> tb = TermTokens(b);
  size_t longer = std::max(ta.size(), tb.size());
  if (longer == 0) return 0.0;
  std::map<std::string, int> counts;
  for (const auto& t : ta) ++counts[t];
  size_t shared = 0;
  for (const auto& t : tb) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++shared;
    }
  }
  return static_cast<double>(shared) / static_cast<double>(longer);
}

std::vector<KnowledgeEntry> Stage1Filter(const QueryText& query,
                                         const std::vector<KnowledgeEntry>& entries,
                                         const RetrievalConfig& cfg) {
  std::vector<KnowledgeEntry> kept;
  for (const auto& e : entries) {
    if (PathOverlap(query.path, e.path_context) >= cfg.path_overlap_threshold) kept.push_back(e);
  }
  return kept;
}

std::vector<ScoredEntry> Stage2Rank(const QueryText& query, const TfIdfModel& model,
                                    const std::vector<KnowledgeEntry>& survivors,
                                    const RetrievalConfig& cfg) {
  SparseVector qv = EncodeTfidf(model, query.concatenated);
  std::vector<ScoredEntry> scored;
  scored.reserve(survivors.size());
  for (const auto& e : survivors) scored.push_back({e, Cosine(qv, e.vector)});
  std::stable_sort(scored.begin(), scored.end(), [](const ScoredEntry& a, const ScoredEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.entry.path_context != b.entry.path_context) {
      return a.entry.path_context < b.entry.path_context;
    }
    return a.entry.term < b.entry.term;
  });
  if (scored.size() > static_cast<size_t>(cfg.top_n)) scored.resize(cfg.top_n);
  return scored;
}

std::vector<std::string> Stage3Dedup(const std::vector<std::string>& terms,
                                     const RetrievalConfig& cfg) {
  std::vector<std::string> unique;
  std::set<std::string> seen;
  for (const auto& t : terms) {
    if (seen.insert(t).second) unique.push_back(t);
  }
  std::vector<std::string> kept;
  for (size_t i = 0; i < unique.size(); ++i) {
    bool nested = false;
    for (size_t j = 0; j < unique.size() && !nested; ++j) {
      if (j == i || unique[i].size() >= unique[j].size()) continue;
      nested = TokenOverlap(unique[i], unique[j]) >= cfg.token_overlap_threshold;
    }
    if (!nested) kept.push_back(unique[i]);
  }
  return kept;
}

RetrievalResult Retrieve(const QueryText& query, const KnowledgeBase& kb,
                         const RetrievalConfig& cfg) {
  cfg.Validate();
  RetrievalResult result;
  std::vector<KnowledgeEntry> c1 = Stage1Filter(query, kb.entries, cfg);
  result.entries = Stage2Rank(query, kb.model, c1, cfg);
  std::vector<std::string> terms;
  for (const auto& s : result.entries) terms.push_back(s.entry.term);
  result.terms = Stage3Dedup(terms, cfg);
  result.stage_trace = {c1.size(), result.entries.size(), result.terms.size()};
  return result;
}

nlohmann::ordered_json RetrievalResultToJson(const RetrievalResult& result) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& s : result.entries) {
    entries.push_back({{"term", s.entry.term},
                       {"path_context", s.entry.path_context},
                       {"score", s.score}});
  }
  nlohmann::ordered_json j;
  j["terms"] = result.terms;
  j["entries"] = std::move(entries);
  j["stage_trace"] = result.stage_trace;
  return j;
}

}  // namespace expsum
