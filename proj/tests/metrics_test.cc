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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "expsum/error.h"
#include "expsum/text.h"
#include "oracles/naive_metrics.h"
#include "support/test_support.h"

namespace expsum {
namespace {

TEST(Bleu4, IdentityScoresHundred) {
  EXPECT_NEAR(Bleu4("Obtains the current battery level.", "obtains the current battery level"),
              100.0, 1e-9);
  EXPECT_NEAR(Bleu4("ok", "ok"), 100.0, 1e-9);
}

TEST(Bleu4, ShortCandidateMatchesOracle) {
  const char* cand = "obtains the battery level";
  const char* ref = "obtains the battery level of the device";
  double want = oracle::NaiveBleu4(cand, ref);
  EXPECT_NEAR(Bleu4(cand, ref), want, 1e-6);
  // Every n-gram of the candidate occurs in the reference, so only the
  // brevity penalty exp(1 - 7/4) remains.
  EXPECT_NEAR(want, 100.0 * std::exp(-0.75), 1e-9);
}

TEST(Bleu4, EmptyCandidateAndDisjoint) {
  EXPECT_EQ(Bleu4("", "a b c"), 0.0);
  // No matches at any order: every precision is 0.1 / count and the
  // lengths are equal, so no brevity penalty.
  double smoothed = 100.0 * std::pow((0.1 / 4) * (0.1 / 3) * (0.1 / 2) * (0.1 / 1), 0.25);
  EXPECT_NEAR(Bleu4("x y z w", "a b c d"), smoothed, 1e-9);
}

TEST(RougeL, HandComputedF1) {
  // LCS = 3, P = 1, R = 3/4, F1 = 6/7.
  EXPECT_NEAR(RougeL("a c d", "a b c d"), 85.71, 0.01);
  EXPECT_NEAR(RougeL("a b c d", "a b c d"), 100.0, 1e-9);
  EXPECT_EQ(RougeL("x", "a b"), 0.0);
}

TEST(Metrics, MatchOraclesOnRandomPairs) {
  static const std::vector<std::string> kWords = {"the", "battery", "level", "of", "device",
                                                  "obtains", "a", "b"};
  std::mt19937 rng(99);
  auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
  auto sentence = [&](size_t max_len) {
    std::vector<std::string> w;
    size_t len = 1 + pick(max_len);
    for (size_t i = 0; i < len; ++i) w.push_back(kWords[pick(kWords.size())]);
    return Join(w, pick(2) ? " " : ", ");
  };
  for (int i = 0; i < 300; ++i) {
    std::string c = sentence(10), r = sentence(10);
    EXPECT_NEAR(Bleu4(c, r), oracle::NaiveBleu4(c, r), 1e-6) << c << " | " << r;
    EXPECT_NEAR(RougeL(c, r), oracle::NaiveRougeL(c, r), 1e-6) << c << " | " << r;
  }
}

TEST(EvaluateCorpus, MeansAndErrors) {
  EvaluationReport rep = EvaluateCorpus({{"1", "a b c d", "a b c d"}, {"2", "a c d", "a b c d"}});
  EXPECT_EQ(rep.n, 2u);
  EXPECT_NEAR(rep.mean_rouge_l, (100.0 + 600.0 / 7.0) / 2.0, 1e-9);
  EXPECT_NEAR(rep.mean_bleu4, (rep.per_item[0].bleu4 + rep.per_item[1].bleu4) / 2.0, 1e-12);

  try {
    EvaluateCorpus({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyCorpus);
  }
  try {
    EvaluateCorpus({{"1", "a", " "}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
  }
}

TEST(EvaluateCorpus, ReportShapes) {
  EvaluationReport rep = EvaluateCorpus({{"x,1", "a b", "a b"}});
  auto j = EvaluationReportToJson(rep);
  EXPECT_EQ(j["n"], 1);
  EXPECT_TRUE(j["per_item"][0]["sentbert_cos"].is_null());
  std::string csv = EvaluationReportToCsv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,bleu4,rougeL,sentbert_cos");
  EXPECT_NE(csv.find("\"x,1\",100,100,"), std::string::npos);
}

}  // namespace
}  // namespace expsum
