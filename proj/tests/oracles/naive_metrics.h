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

// Brute-force BLEU-4 and ROUGE-L for short ASCII inputs. N-grams are
// compared as joined strings by linear scan; the LCS is found by trying
// every subsequence of the candidate. Exponential, so keep inputs short.

#ifndef EXPSUM_TESTS_ORACLES_NAIVE_METRICS_H_
#define EXPSUM_TESTS_ORACLES_NAIVE_METRICS_H_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> MetricTokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<std::string> Grams(const std::vector<std::string>& t, size_t n) {
  std::vector<std::string> g;
  for (size_t i = 0; i + n <= t.size(); ++i) {
    std::string s;
    for (size_t k = 0; k < n; ++k) s += t[i + k] + "\x1f";
    g.push_back(s);
  }
  return g;
}

inline double NaiveBleu4(const std::string& candidate, const std::string& reference) {
  auto c = MetricTokens(candidate);
  auto r = MetricTokens(reference);
  if (c.empty()) return 0;
  double log_p = 0;
  int orders = 0;
  for (size_t n = 1; n <= 4; ++n) {
    auto cg = Grams(c, n);
    if (cg.empty()) continue;
    auto rg = Grams(r, n);
    int matched = 0;
    for (size_t i = 0; i < cg.size(); ++i) {
      if (std::find(cg.begin(), cg.begin() + i, cg[i]) != cg.begin() + i) continue;
      int in_c = static_cast<int>(std::count(cg.begin(), cg.end(), cg[i]));
      int in_r = static_cast<int>(std::count(rg.begin(), rg.end(), cg[i]));
      matched += std::min(in_c, in_r);
    }
    double p = matched > 0 ? double(matched) / cg.size() : 0.1 / cg.size();
    log_p += std::log(p);
    ++orders;
  }
  double bp = c.size() > r.size() ? 1.0 : std::exp(1.0 - double(r.size()) / c.size());
  return 100.0 * bp * std::exp(log_p / orders);
}

inline bool IsSubsequence(const std::vector<std::string>& s, const std::vector<std::string>& of) {
  size_t j = 0;
  for (size_t i = 0; i < of.size() && j < s.size(); ++i) {
    if (of[i] == s[j]) ++j;
  }
  return j == s.size();
}

inline size_t BruteLcs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  size_t best = 0;
  for (unsigned mask = 0; mask < (1u << a.size()); ++mask) {
    std::vector<std::string> sub;
    for (size_t i = 0; i < a.size(); ++i) {
      if (mask & (1u << i)) sub.push_back(a[i]);
    }
    if (sub.size() > best && IsSubsequence(sub, b)) best = sub.size();
  }
  return best;
}

inline double NaiveRougeL(const std::string& candidate, const std::string& reference) {
  auto c = MetricTokens(candidate);
  auto r = MetricTokens(reference);
  if (c.empty() || r.empty()) return 0;
  double lcs = static_cast<double>(BruteLcs(c, r));
  if (lcs == 0) return 0;
  double p = lcs / c.size(), rec = lcs / r.size();
  return 100.0 * 2 * p * rec / (p + rec);
}

}  // namespace oracle

#endif  // EXPSUM_TESTS_ORACLES_NAIVE_METRICS_H_
