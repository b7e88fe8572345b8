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

#include "expsum/summarizer.h"

#include <gtest/gtest.h>

#include "expsum/error.h"
#include "support/test_support.h"

namespace expsum {
namespace {

using testing_support::Data;
using testing_support::QueueClient;

bool Has(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

class SummarizerTest : public ::testing::Test {
 protected:
  SummarizerTest()
      : schemas_(LoadSchemas(Data("schemas"))),
        constraints_(LoadRefinerConstraints(Data("refiner_constraints.json"))) {
    meta_.function_name = "StartupVisibility";
    meta_.file_path = "contextConstant.ets";
    meta_.package_module = "ohos.app.ability.contextConstant";
    meta_.dmt["@since"] = "API version 12";
    retrieval_.terms = {"StartupVisibility"};
    retrieval_.entries = {{{"StartupVisibility", "Startup visibility of an ability. Second sentence.",
                            "@ohos.app.ability.contextConstant", {}},
                           0.5}};
  }

  SummaryResult Run(QueueClient& client, SummarizerConfig cfg = {}) {
    return Summarize(meta_, retrieval_, client, schemas_, constraints_, cfg);
  }

  SchemaSet schemas_;
  std::vector<std::string> constraints_;
  MetadataSet meta_;
  RetrievalResult retrieval_;
};

TEST_F(SummarizerTest, DraftPromptCarriesAllSections) {
  std::string p = BuildDraftPrompt(meta_, retrieval_, schemas_, {}).user_prompt;
  EXPECT_TRUE(Has(p, "<Input Metadata Set>"));
  EXPECT_TRUE(Has(p, "\"function_name\": \"StartupVisibility\""));
  EXPECT_TRUE(Has(p, "- StartupVisibility [@ohos.app.ability.contextConstant]: "
                     "Startup visibility of an ability."));
  EXPECT_FALSE(Has(p, "Second sentence"));
  EXPECT_TRUE(Has(p, "Candidate categories: field, procedural, constructor, callback, utility"));
  for (FunctionCategory c : kAllCategories) {
    EXPECT_TRUE(Has(p, schemas_.at(c).definition)) << CategoryName(c);
  }
  EXPECT_TRUE(Has(p, "Indicates whether {X}"));
  EXPECT_TRUE(Has(p, "CATEGORY: <one of:"));
}

TEST_F(SummarizerTest, ExcludedSchemaIsAbsent) {
  std::string p =
      BuildDraftPrompt(meta_, retrieval_, schemas_, {FunctionCategory::kProcedural}).user_prompt;
  EXPECT_FALSE(Has(p, "procedural"));
  EXPECT_FALSE(Has(p, schemas_.at(FunctionCategory::kProcedural).definition));
  EXPECT_TRUE(Has(p, "Candidate categories: field, constructor, callback, utility"));
}

TEST_F(SummarizerTest, NothingLeftToDraft) {
  std::set<FunctionCategory> all(kAllCategories.begin(), kAllCategories.end());
  try {
    BuildDraftPrompt(meta_, retrieval_, schemas_, all);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAllCategoriesExcluded);
  }
}

TEST_F(SummarizerTest, RefinePromptNamesDeclaredCategory) {
  DraftResult d{"Gets the visibility.", FunctionCategory::kProcedural, ""};
  std::string p = BuildRefinePrompt(meta_, d, constraints_).user_prompt;
  EXPECT_TRUE(Has(p, "Draft category: procedural"));
  EXPECT_TRUE(Has(p, "Draft summary: Gets the visibility."));
  EXPECT_TRUE(Has(p, "Error category: procedural"));
  for (const auto& c : constraints_) EXPECT_TRUE(Has(p, "- " + c));
}

TEST(ParseDraft, WellFormed) {
  DraftResult d = ParseDraft(
      {"CATEGORY: field\nSUMMARY: Enumeration type of the visibility statuses of an ability.", "", {}});
  EXPECT_EQ(d.declared_category, FunctionCategory::kField);
  EXPECT_EQ(d.summary_text, "Enumeration type of the visibility statuses of an ability.");
}

TEST(ParseDraft, CaseInsensitiveAndReordered) {
  DraftResult d = ParseDraft({"summary: Obtains the level.\ncategory: Procedural", "", {}});
  EXPECT_EQ(d.declared_category, FunctionCategory::kProcedural);
  EXPECT_EQ(d.summary_text, "Obtains the level.");
}

TEST(ParseDraft, Malformed) {
  for (const char* bad : {"SUMMARY: x", "CATEGORY: field", "CATEGORY: widget\nSUMMARY: x",
                          "CATEGORY: field\nSUMMARY:   "}) {
    try {
      ParseDraft({bad, "", {}});
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kMalformedDraft) << bad;
    }
  }
}

TEST(ParseRefinement, RejectAcceptMalformed) {
  RefinementOutcome rej = ParseRefinement({"Error category: callback", "", {}});
  EXPECT_FALSE(rej.accepted);
  EXPECT_EQ(rej.error_category, FunctionCategory::kCallback);

  RefinementOutcome ok = ParseRefinement({"FINAL: Indicates the visibility.", "", {}});
  EXPECT_TRUE(ok.accepted);
  EXPECT_EQ(ok.final_text, "Indicates the visibility.");

  EXPECT_EQ(ParseRefinement({"Indicates the visibility.", "", {}}).final_text,
            "Indicates the visibility.");
  EXPECT_THROW(ParseRefinement({"  ", "", {}}), Error);
  EXPECT_THROW(ParseRefinement({"Error category: widget", "", {}}), Error);
}

TEST_F(SummarizerTest, AcceptedOnFirstIteration) {
  QueueClient client({"CATEGORY: field\nSUMMARY: Visibility statuses.",
                      "FINAL: Enumerates the visibility statuses of an ability after it is started."});
  SummaryResult r = Run(client);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_FALSE(r.degraded);
  EXPECT_TRUE(r.excluded_categories.empty());
  EXPECT_EQ(r.category, FunctionCategory::kField);
  EXPECT_EQ(r.final_summary, "Enumerates the visibility statuses of an ability after it is started.");
  EXPECT_EQ(r.retrieved_terms, std::vector<std::string>{"StartupVisibility"});
  EXPECT_EQ(client.requests().size(), 2u);
}

TEST_F(SummarizerTest, RejectionExcludesAndRedrafts) {
  QueueClient client({"CATEGORY: procedural\nSUMMARY: Sets the startup visibility.",
                      "Error category: procedural",
                      "CATEGORY: field\nSUMMARY: Indicates the startup visibility enumeration.",
                      "FINAL: Indicates the startup visibility enumeration."});
  SummaryResult r = Run(client);
  EXPECT_EQ(r.iterations, 2);
  EXPECT_EQ(r.category, FunctionCategory::kField);
  EXPECT_EQ(r.excluded_categories, std::set<FunctionCategory>{FunctionCategory::kProcedural});
  ASSERT_EQ(client.requests().size(), 4u);
  const std::string& first = client.requests()[0].user_prompt;
  const std::string& second = client.requests()[2].user_prompt;
  const std::string& definition = schemas_.at(FunctionCategory::kProcedural).definition;
  EXPECT_TRUE(Has(first, definition));
  EXPECT_FALSE(Has(second, definition));
  EXPECT_FALSE(Has(second, "procedural"));
}

TEST_F(SummarizerTest, DegradesAtMaxIterations) {
  QueueClient client({"CATEGORY: procedural\nSUMMARY: one.", "Error category: procedural",
                      "CATEGORY: utility\nSUMMARY: two.", "Error category: utility",
                      "CATEGORY: callback\nSUMMARY: three.", "Error category: callback"});
  SummaryResult r = Run(client);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_TRUE(r.degraded);
  EXPECT_EQ(r.final_summary, "three.");
  EXPECT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(client.requests().size(), 6u);
}

TEST_F(SummarizerTest, ExcludedSetGrowsStrictly) {
  QueueClient client({"CATEGORY: procedural\nSUMMARY: one.", "Error category: procedural",
                      "CATEGORY: utility\nSUMMARY: two.", "Error category: utility",
                      "CATEGORY: callback\nSUMMARY: three.", "Error category: callback"});
  Run(client);
  // The candidate list of each draft prompt is the complement of the
  // excluded set at that point.
  std::vector<size_t> candidates;
  for (size_t i = 0; i < client.requests().size(); i += 2) {
    const std::string& p = client.requests()[i].user_prompt;
    size_t n = 0;
    for (FunctionCategory c : kAllCategories) {
      n += Has(p, "### Category: " + std::string(CategoryName(c))) ? 1 : 0;
    }
    candidates.push_back(n);
  }
  EXPECT_EQ(candidates, (std::vector<size_t>{5, 4, 3}));
}

TEST_F(SummarizerTest, AllCategoriesExcludedIsAnError) {
  QueueClient client({"CATEGORY: procedural\nSUMMARY: a.", "Error category: procedural",
                      "CATEGORY: utility\nSUMMARY: b.", "Error category: utility",
                      "CATEGORY: callback\nSUMMARY: c.", "Error category: callback",
                      "CATEGORY: constructor\nSUMMARY: d.", "Error category: constructor",
                      "CATEGORY: field\nSUMMARY: e.", "Error category: field"});
  SummarizerConfig cfg;
  cfg.max_iterations = 10;
  try {
    Run(client, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAllCategoriesExcluded);
  }
}

TEST_F(SummarizerTest, ParseRetryThenSuccess) {
  QueueClient client({"I think it is a field.", "CATEGORY: field\nSUMMARY: ok.", "FINAL: ok."});
  SummaryResult r = Run(client);
  EXPECT_EQ(r.final_summary, "ok.");
  EXPECT_EQ(client.requests().size(), 3u);
}

TEST_F(SummarizerTest, DraftInExcludedCategoryIsMalformed) {
  QueueClient client({"CATEGORY: procedural\nSUMMARY: a.", "Error category: procedural",
                      "CATEGORY: procedural\nSUMMARY: a."});
  try {
    Run(client);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMalformedDraft);
  }
}

TEST(SetGetVerbs, FlagsOnlyWholeWords) {
  EXPECT_EQ(SetGetVerbs("Sets the level and gets it"), (std::vector<std::string>{"sets", "gets"}));
  EXPECT_TRUE(SetGetVerbs("Indicates the visibility settings of the target").empty());
}

TEST(Schemas, CrossMentionIsRejected) {
  SchemaSet s = LoadSchemas(Data("schemas"));
  s[FunctionCategory::kUtility].definition += " Unlike a callback.";
  try {
    ValidateSchemas(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidConfig);
  }
}

TEST(Schemas, FieldMustForbidSetGet) {
  SchemaSet s = LoadSchemas(Data("schemas"));
  s[FunctionCategory::kField].forbidden = {"long sentences"};
  EXPECT_THROW(ValidateSchemas(s), Error);
}

}  // namespace
}  // namespace expsum
