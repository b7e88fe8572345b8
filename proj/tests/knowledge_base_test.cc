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

#include "expsum/knowledge_base.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "expsum/error.h"
#include "expsum/text.h"
#include "oracles/naive_tfidf.h"
#include "support/test_support.h"

namespace expsum {
namespace {

using testing_support::Fixture;
using testing_support::ScratchDir;

bool Contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<PackageDoc> ThreeDocs() {
  return {{"a", "media session media"}, {"b", "battery power"}, {"c", "media battery"}};
}

double WeightOf(const TfIdfModel& model, const SparseVector& v, const std::string& token) {
  auto it = v.find(model.vocabulary.at(token));
  return it == v.end() ? 0.0 : it->second;
}

TEST(ExtractTermsLexical, AvSessionDoc) {
  auto docs = LoadPackageDocs(Fixture("kb_docs"));
  auto it = std::find_if(docs.begin(), docs.end(), [](const PackageDoc& d) {
    return d.path_context == "@kit.AVSessionKit.avSession";
  });
  ASSERT_NE(it, docs.end());
  auto terms = ExtractTermsLexical(*it);
  EXPECT_TRUE(Contains(terms, "AVSession"));
  EXPECT_TRUE(Contains(terms, "AVMetadata"));
}

TEST(ExtractTermsLexical, UnderscoreConstant) {
  auto terms = ExtractTermsLexical({"p", "STARTUP_HIDE for hidden state"});
  EXPECT_EQ(terms, std::vector<std::string>{"STARTUP_HIDE"});
}

TEST(ExtractTermsLexical, PlainProseYieldsNothing) {
  EXPECT_TRUE(ExtractTermsLexical({"p", "the quick brown fox"}).empty());
}

TEST(ExtractTermsLexical, DottedAndDeduplicated) {
  auto terms = ExtractTermsLexical({"p", "Use ohos.battery and RDBStore. RDBStore is cached."});
  EXPECT_EQ(terms, (std::vector<std::string>{"ohos.battery", "RDBStore"}));
}

TEST(ExtractTermsSemantic, ScriptedParcelable) {
  MockClient client(LoadMockScript(Fixture("kb_mock.json")));
  auto terms = ExtractTermsSemantic({"p", "Sends parcelable data to the target UIAbility"}, client);
  EXPECT_EQ(terms, std::vector<std::string>{"parcelable"});
}

TEST(ExtractTermsSemantic, AllPreservedYieldsNothing) {
  MockClient client(MockScriptFromJson(
      nlohmann::json::parse(R"({"rules": [], "default": "JUDGMENT: PRESERVED"})")));
  EXPECT_TRUE(ExtractTermsSemantic({"p", "Sends parcelable data to the target UIAbility"}, client)
                  .empty());
}

TEST(ExtractTermsSemantic, NoCandidatesMeansNoCalls) {
  testing_support::QueueClient client({"JUDGMENT: CHANGED"});
  EXPECT_TRUE(ExtractTermsSemantic({"p", "The AVSession of the UIAbility"}, client).empty());
  EXPECT_TRUE(client.requests().empty());
}

TEST(ExtractTermsSemantic, ClientFailureNamesDocument) {
  MockClient client(MockScript{});
  try {
    ExtractTermsSemantic({"@ohos.x", "Sends parcelable data"}, client);
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_NE(std::string(e.what()).find("@ohos.x"), std::string::npos);
  }
}

TEST(FitTfidf, HandCountedCorpus) {
  TfIdfModel model = FitTfidf(ThreeDocs());
  EXPECT_EQ(model.doc_count, 3u);
  EXPECT_EQ(model.doc_frequency.at("media"), 2u);
  EXPECT_EQ(model.doc_frequency.at("battery"), 2u);
  EXPECT_EQ(model.doc_frequency.at("power"), 1u);
}

TEST(FitTfidf, EmptyCorpus) {
  try {
    FitTfidf({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyCorpus);
  }
}

TEST(FitTfidf, DuplicateDocsBothCount) {
  TfIdfModel model = FitTfidf({{"a", "media"}, {"b", "media"}});
  EXPECT_EQ(model.doc_frequency.at("media"), 2u);
}

TEST(EncodeTfidf, HandComputedWeight) {
  TfIdfModel model = FitTfidf(ThreeDocs());
  SparseVector v = EncodeTfidf(model, "media session media");
  // (2/3) * ln(3 / 2.01), worked by hand: 0.6667 * 0.40048 = 0.26698.
  EXPECT_NEAR(WeightOf(model, v, "media"), 0.26698, 1e-4);
}

TEST(EncodeTfidf, SingleDocumentGivesNegativeIdf) {
  TfIdfModel model = FitTfidf({{"a", "media"}});
  SparseVector v = EncodeTfidf(model, "media");
  EXPECT_LT(WeightOf(model, v, "media"), 0.0);
  EXPECT_NEAR(WeightOf(model, v, "media"), std::log(1.0 / 1.01), 1e-12);
}

TEST(EncodeTfidf, EmptyAndOutOfVocabulary) {
  TfIdfModel model = FitTfidf(ThreeDocs());
  EXPECT_TRUE(EncodeTfidf(model, "").empty());
  EXPECT_TRUE(EncodeTfidf(model, "zebra giraffe").empty());
}

TEST(EncodeTfidf, MatchesNaiveOracleOnRandomCorpora) {
  static const std::vector<std::string> kWords = {"media", "session", "battery", "power",
                                                  "level", "store",   "data",    "audio"};
  std::mt19937 rng(3);
  auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<oracle::Tokens> corpus_tokens;
    std::vector<PackageDoc> docs;
    size_t n_docs = 1 + pick(5);
    for (size_t d = 0; d < n_docs; ++d) {
      oracle::Tokens toks;
      size_t len = 1 + pick(20);
      for (size_t i = 0; i < len; ++i) toks.push_back(kWords[pick(kWords.size())]);
      corpus_tokens.push_back(toks);
      docs.push_back({"p" + std::to_string(d), Join(toks, " ")});
    }
    TfIdfModel model = FitTfidf(docs);
    oracle::Tokens text;
    size_t len = pick(12);
    for (size_t i = 0; i < len; ++i) text.push_back(pick(4) == 0 ? "zebra" : kWords[pick(kWords.size())]);
    auto expected = oracle::NaiveTfidf(corpus_tokens, text);
    SparseVector got = EncodeTfidf(model, Join(text, " "));
    ASSERT_EQ(got.size(), expected.size());
    for (const auto& [tok, w] : expected) EXPECT_NEAR(WeightOf(model, got, tok), w, 1e-9);
  }
}

TEST(Cosine, SelfAndOrthogonal) {
  TfIdfModel model = FitTfidf(ThreeDocs());
  SparseVector a = EncodeTfidf(model, "media session");
  SparseVector b = EncodeTfidf(model, "power");
  EXPECT_NEAR(Cosine(a, a), 1.0, 1e-12);
  EXPECT_EQ(Cosine(a, b), 0.0);
  EXPECT_EQ(Cosine(a, {}), 0.0);
}

TEST(BuildKnowledgeBase, AvSessionEntries) {
  KnowledgeBase kb = BuildKnowledgeBase(
      {{"@kit.AVSessionKit.avSession",
        "AVSession used for multi operations such as setting AVMetadata and playback status."}},
      nullptr);
  ASSERT_EQ(kb.entries.size(), 2u);
  EXPECT_EQ(kb.entries[0].term, "AVSession");
  EXPECT_EQ(kb.entries[1].term, "AVMetadata");
  for (const auto& e : kb.entries) {
    EXPECT_EQ(e.path_context, "@kit.AVSessionKit.avSession");
    EXPECT_FALSE(e.documentation.empty());
  }
}

TEST(BuildKnowledgeBase, TermlessDocStillCounted) {
  KnowledgeBase kb = BuildKnowledgeBase({{"a", "AVSession media"}, {"b", "plain words here"}}, nullptr);
  EXPECT_EQ(kb.model.doc_count, 2u);
  EXPECT_EQ(kb.entries.size(), 1u);
}

TEST(BuildKnowledgeBase, SameTermInTwoContexts) {
  KnowledgeBase kb = BuildKnowledgeBase(
      {{"ohos.data.relationalStore", "RDBStore manages a relational database."},
       {"ohos.data.rdb", "RDBStore is the deprecated store handle."}},
      nullptr);
  ASSERT_EQ(kb.entries.size(), 2u);
  EXPECT_EQ(kb.entries[0].term, "RDBStore");
  EXPECT_EQ(kb.entries[1].term, "RDBStore");
  EXPECT_NE(kb.entries[0].path_context, kb.entries[1].path_context);
}

TEST(BuildKnowledgeBase, RejectsBlankDoc) {
  try {
    BuildKnowledgeBase({{"a", ""}}, nullptr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
  }
}

TEST(BuildKnowledgeBase, FixtureCorpusWithMockIsDeterministic) {
  auto docs = LoadPackageDocs(Fixture("kb_docs"));
  MockClient client(LoadMockScript(Fixture("kb_mock.json")));
  KnowledgeBase a = BuildKnowledgeBase(docs, &client);
  KnowledgeBase b = BuildKnowledgeBase(docs, &client);
  EXPECT_EQ(KnowledgeBaseToJson(a).dump(), KnowledgeBaseToJson(b).dump());
  bool has_parcelable = std::any_of(a.entries.begin(), a.entries.end(), [](const KnowledgeEntry& e) {
    return e.term == "parcelable" && e.path_context == "@ohos.app.ability.UIAbility";
  });
  EXPECT_TRUE(has_parcelable);
  for (const auto& e : a.entries) {
    EXPECT_FALSE(e.term.empty());
    EXPECT_FALSE(e.documentation.empty());
    EXPECT_FALSE(e.path_context.empty());
    EXPECT_FALSE(e.vector.empty());
  }
}

TEST(Persistence, RoundTrip) {
  auto docs = LoadPackageDocs(Fixture("kb_docs"));
  KnowledgeBase kb = BuildKnowledgeBase(docs, nullptr);
  auto dir = ScratchDir("kb");
  SaveKnowledgeBase(kb, dir / "kb.json");
  KnowledgeBase back = LoadKnowledgeBase(dir / "kb.json");
  EXPECT_EQ(back.model.vocabulary, kb.model.vocabulary);
  EXPECT_EQ(back.model.doc_frequency, kb.model.doc_frequency);
  EXPECT_EQ(back.model.doc_count, kb.model.doc_count);
  ASSERT_EQ(back.entries.size(), kb.entries.size());
  for (size_t i = 0; i < kb.entries.size(); ++i) {
    EXPECT_EQ(back.entries[i].term, kb.entries[i].term);
    EXPECT_EQ(back.entries[i].vector, kb.entries[i].vector);
  }
  EXPECT_EQ(KnowledgeBaseToJson(back).dump(), KnowledgeBaseToJson(kb).dump());
}

TEST(LoadPackageDocs, DirectorySortedAndExtensionStripped) {
  auto docs = LoadPackageDocs(Fixture("kb_docs"));
  ASSERT_EQ(docs.size(), 5u);
  EXPECT_TRUE(std::is_sorted(docs.begin(), docs.end(), [](const auto& a, const auto& b) {
    return a.path_context < b.path_context;
  }));
  EXPECT_EQ(docs.back().path_context, "ohos.battery");
}

TEST(LoadPackageDocs, EmptyDirectoryIsEmptyCorpus) {
  auto dir = ScratchDir("emptydocs");
  try {
    BuildKnowledgeBase(LoadPackageDocs(dir), nullptr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyCorpus);
  }
}

}  // namespace
}  // namespace expsum
