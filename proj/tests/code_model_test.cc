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

#include "expsum/code_model.h"

#include <gtest/gtest.h>

#include "expsum/error.h"
#include "expsum/text.h"
#include "support/test_support.h"

namespace expsum {
namespace {

using testing_support::Fixture;

FunctionRecord BatteryRecord() {
  return FunctionRecordFromJson(nlohmann::json::parse(ReadFile(Fixture("battery_record.json"))));
}

// The worked getBatteryLevel example, field by field.
TEST(ModelFunction, BatteryLevelMatchesWorkedExample) {
  MetadataSet m = ModelFunction(BatteryRecord(), DmtConfig::HarmonyOs());
  EXPECT_EQ(m.function_name, "getBatteryLevel");
  EXPECT_TRUE(m.parameters.empty());
  EXPECT_EQ(m.return_type, "number");
  EXPECT_EQ(m.file_path, "foundation/power/battery/src/main/ets/battery.ts");
  EXPECT_EQ(m.package_module, "ohos.battery");
  EXPECT_EQ(m.dependency, std::vector<std::string>{"system.battery"});
  EXPECT_EQ(m.control_flow_skeleton, "return statement");
  EXPECT_FALSE(m.io_behavior.has_value());
  EXPECT_FALSE(m.variable_modification.has_value());
  EXPECT_EQ(m.dmt.at("@since"), "API version 9");
  EXPECT_EQ(m.dmt.at("@syscap"), "SystemCapability.Power.Battery");
  EXPECT_EQ(m.dmt.at("@atomicservice"),
            "Since Version 11, this function can be used in atomic service.");
  EXPECT_EQ(m.dmt.at("@officialdoc"),
            "Monitor power consumption. Note: Frequent invocation may increase system overhead; "
            "consider caching results.");
  EXPECT_EQ(m.dmt.at("@usage"), "let level = battery.getBatteryLevel();");
}

TEST(ModelFunction, DmtKeysOutsideConfigAreDropped) {
  DmtConfig only_usage;
  only_usage.enabled_keys = {"@usage"};
  MetadataSet m = ModelFunction(BatteryRecord(), only_usage);
  ASSERT_EQ(m.dmt.size(), 1u);
  EXPECT_EQ(m.dmt.begin()->first, "@usage");
}

TEST(ModelFunction, PreExtractedBypassesParsingButIsFiltered) {
  FunctionRecord r;
  r.language = Language::kJava;  // no frontend registered
  r.file_path = "a/B.java";
  MetadataSet pre;
  pre.function_name = "run";
  pre.file_path = "a/B.java";
  pre.dmt = {{"@usage", "b.run()"}, {"@since", "1"}};
  r.pre_extracted = pre;
  DmtConfig only_usage;
  only_usage.enabled_keys = {"@usage"};
  MetadataSet m = ModelFunction(r, only_usage);
  EXPECT_EQ(m.function_name, "run");
  EXPECT_EQ(m.dmt, (std::map<std::string, std::string>{{"@usage", "b.run()"}}));
}

TEST(ModelFunction, UnsupportedLanguage) {
  FunctionRecord r;
  r.source_text = "def f(): pass";
  r.language = Language::kPython;
  r.file_path = "f.py";
  try {
    ModelFunction(r, DmtConfig::HarmonyOs());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedLanguage);
  }
}

TEST(ModelFunction, MalformedSourceIsParseFailure) {
  FunctionRecord r;
  r.source_text = "export function broken(a: number {";
  r.language = Language::kTypescript;
  r.file_path = "x.ts";
  try {
    ModelFunction(r, DmtConfig::HarmonyOs());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseFailure);
  }
}

TEST(ModelFunction, EnumWithPlaceholderDoc) {
  FunctionRecord r;
  r.source_text = ReadFile(Fixture("src/startup_visibility.ets"));
  r.language = Language::kArkts;
  r.file_path = "contextConstant.ets";
  MetadataSet m = ModelFunction(r, DmtConfig::HarmonyOs());
  EXPECT_EQ(m.function_name, "StartupVisibility");
  EXPECT_EQ(m.dmt.at("@officialdoc"), "NA");
}

TEST(ControlFlowSkeleton, FirstOccurrenceOrder) {
  EXPECT_EQ(ExtractControlFlowSkeleton("if (a) { b(); } else { c(); } for (;;) { d(); }",
                                       Language::kTypescript),
            "conditional; loop");
  EXPECT_EQ(ExtractControlFlowSkeleton("for (const x of xs) { if (x) { y(); } }",
                                       Language::kTypescript),
            "loop; conditional");
}

TEST(ControlFlowSkeleton, ReturnAndEmpty) {
  EXPECT_EQ(ExtractControlFlowSkeleton("return x;", Language::kTypescript), "return statement");
  EXPECT_EQ(ExtractControlFlowSkeleton("", Language::kTypescript), "");
}

TEST(ControlFlowSkeleton, TrySwitchCallback) {
  std::string src =
      "try { switch (k) { case 1: break; } } catch (e) {} "
      "emitter.on('change', (v) => { log(v); });";
  EXPECT_EQ(ExtractControlFlowSkeleton(src, Language::kTypescript),
            "try; switch; callback registration");
}

TEST(Serialization, RoundTrip) {
  MetadataSet m = ModelFunction(BatteryRecord(), DmtConfig::HarmonyOs());
  m.parameters.push_back({"level", "?number", "0"});
  m.io_behavior = "reads sysfs";
  EXPECT_EQ(DeserializeMetadata(SerializeMetadata(m)), m);
}

TEST(Serialization, KeysInTableOrder) {
  MetadataSet m = ModelFunction(BatteryRecord(), DmtConfig::HarmonyOs());
  std::vector<std::string> keys;
  nlohmann::ordered_json j = MetadataToJson(m);
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"function_name", "parameters", "return_type",
                                            "file_path", "package_module", "dependency",
                                            "control_flow_skeleton", "io_behavior",
                                            "variable_modification", "dmt"}));
}

TEST(Serialization, ShapeErrorIsParseFailure) {
  try {
    MetadataFromJson(nlohmann::json::parse(R"({"function_name": 3})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseFailure);
  }
}

}  // namespace
}  // namespace expsum
