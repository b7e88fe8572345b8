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

// Reference TF-IDF written straight from the formulas, with linear scans
// and no shared code with the library. Inputs are pre-tokenized.

#ifndef EXPSUM_TESTS_ORACLES_NAIVE_TFIDF_H_
#define EXPSUM_TESTS_ORACLES_NAIVE_TFIDF_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;

// Token -> weight for `text` under a model fitted on `corpus`.
inline std::map<std::string, double> NaiveTfidf(const std::vector<Tokens>& corpus,
                                                const Tokens& text, double alpha = 0.01) {
  std::map<std::string, double> out;
  const double total_docs = static_cast<double>(corpus.size());
  for (size_t i = 0; i < text.size(); ++i) {
    const std::string& t = text[i];
    bool seen_before = false;
    for (size_t k = 0; k < i; ++k) seen_before = seen_before || text[k] == t;
    if (seen_before) continue;

    int n = 0;
    for (const auto& u : text) n += u == t ? 1 : 0;
    int containing = 0;
    for (const auto& doc : corpus) {
      bool has = false;
      for (const auto& u : doc) has = has || u == t;
      containing += has ? 1 : 0;
    }
    if (containing == 0) continue;
    double tf = static_cast<double>(n) / static_cast<double>(text.size());
    double idf = std::log(total_docs / (containing + alpha));
    out[t] = tf * idf;
  }
  return out;
}

inline double NaiveCosine(const std::map<std::string, double>& a,
                          const std::map<std::string, double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (const auto& [k, v] : a) {
    na += v * v;
    if (b.count(k)) dot += v * b.at(k);
  }
  for (const auto& [k, v] : b) nb += v * v;
  if (na == 0 || nb == 0) return 0;
  return dot / std::sqrt(na * nb);
}

}  // namespace oracle

#endif  // EXPSUM_TESTS_ORACLES_NAIVE_TFIDF_H_
