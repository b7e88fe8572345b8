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

#include "expsum/error.h"
#include "expsum/text.h"
#include "expsum/ts_frontend.h"

namespace expsum {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view LanguageName(Language lang) {
  switch (lang) {
    case Language::kArkts: return "arkts";
    case Language::kTypescript: return "typescript";
    case Language::kJava: return "java";
    case Language::kPython: return "python";
    case Language::kCCpp: return "c_cpp";
    case Language::kUnknown: return "unknown";
  }
  return "unknown";
}

Language ParseLanguage(std::string_view name) {
  std::string n = ToLower(Trim(name));
  if (n == "arkts" || n == "ets") return Language::kArkts;
  if (n == "typescript" || n == "ts" || n == "javascript" || n == "js") {
    return Language::kTypescript;
  }
  if (n == "java") return Language::kJava;
  if (n == "python" || n == "py") return Language::kPython;
  if (n == "c_cpp" || n == "c" || n == "cpp" || n == "c++") return Language::kCCpp;
  return Language::kUnknown;
}

Language LanguageFromPath(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".ets")) return Language::kArkts;
  for (auto ext : {".ts", ".tsx", ".js", ".mjs"}) {
    if (ends_with(ext)) return Language::kTypescript;
  }
  if (ends_with(".java")) return Language::kJava;
  if (ends_with(".py")) return Language::kPython;
  for (auto ext : {".c", ".cc", ".cpp", ".cxx", ".h", ".hh", ".hpp"}) {
    if (ends_with(ext)) return Language::kCCpp;
  }
  return Language::kUnknown;
}

DmtConfig DmtConfig::HarmonyOs() {
  return DmtConfig{{"@deprecated", "@atomicservice", "@since", "@syscap", "@officialdoc",
                    "@usage"}};
}

FrontendRegistry FrontendRegistry::Default() {
  FrontendRegistry registry;
  auto ts = std::make_shared<const TsFrontend>();
  registry.Register(Language::kArkts, ts);
  registry.Register(Language::kTypescript, ts);
  return registry;
}

void FrontendRegistry::Register(Language lang, std::shared_ptr<const Frontend> frontend) {
  frontends_[lang] = std::move(frontend);
}

const Frontend* FrontendRegistry::Find(Language lang) const {
  auto it = frontends_.find(lang);
  return it == frontends_.end() ? nullptr : it->second.get();
}

namespace {

void FilterDmt(MetadataSet& m, const DmtConfig& config) {
  for (auto it = m.dmt.begin(); it != m.dmt.end();) {
    if (config.enabled_keys.count(it->first) == 0) {
      it = m.dmt.erase(it);
    } else {
      it->second = Trim(it->second);
      ++it;
    }
  }
}

// "api/@ohos.battery.d.ts" -> "ohos.battery". Declaration files named after
// their module carry the package id in the file name.
std::optional<std::string> ModuleFromFileName(std::string_view path) {
  size_t slash = path.find_last_of("/\\");
  std::string_view base = slash == std::string_view::npos ? path : path.substr(slash + 1);
  if (base.size() < 2 || base.front() != '@') return std::nullopt;
  base.remove_prefix(1);
  for (std::string_view ext : {".d.ets", ".d.ts", ".ets", ".ts"}) {
    if (base.size() > ext.size() && base.substr(base.size() - ext.size()) == ext) {
      return std::string(base.substr(0, base.size() - ext.size()));
    }
  }
  return std::nullopt;
}

Language ResolveLanguage(const FunctionRecord& record) {
  return record.language == Language::kUnknown ? LanguageFromPath(record.file_path)
                                               : record.language;
}

}  // namespace

MetadataSet ModelFunction(const FunctionRecord& record, const DmtConfig& dmt_config,
                          const FrontendRegistry& registry) {
  if (record.file_path.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "function record has an empty file_path");
  }
  if (!record.source_text && !record.pre_extracted) {
    throw Error(ErrorKind::kInvalidArgument,
                "function record has neither source_text nor pre_extracted metadata");
  }

  MetadataSet m;
  if (record.pre_extracted) {
    m = *record.pre_extracted;
    if (m.file_path.empty()) m.file_path = record.file_path;
  } else {
    Language lang = ResolveLanguage(record);
    const Frontend* frontend = registry.Find(lang);
    if (frontend == nullptr) {
      throw Error(ErrorKind::kUnsupportedLanguage,
                  "no frontend for language '" + std::string(LanguageName(lang)) + "' (" +
                      record.file_path + ")");
    }
    m = frontend->Parse(*record.source_text);
    m.file_path = record.file_path;
    if (auto module = ModuleFromFileName(record.file_path)) m.package_module = *module;
  }
  if (m.function_name.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "metadata has an empty function_name");
  }
  FilterDmt(m, dmt_config);
  return m;
}

std::string ExtractControlFlowSkeleton(std::string_view source, Language language,
                                       const FrontendRegistry& registry) {
  const Frontend* frontend = registry.Find(language);
  if (frontend == nullptr) {
    throw Error(ErrorKind::kUnsupportedLanguage,
                "no frontend for language '" + std::string(LanguageName(language)) + "'");
  }
  return frontend->ControlFlowSkeleton(source);
}

namespace {

ordered_json OptionalString(const std::optional<std::string>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<std::string> ReadOptionalString(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorKind::kParseFailure, std::string("metadata field '") + key +
                                              "' must be a string or null");
  }
  return it->get<std::string>();
}

std::string ReadString(const json& j, const char* key) {
  return ReadOptionalString(j, key).value_or("");
}

}  // namespace

ordered_json MetadataToJson(const MetadataSet& m) {
  ordered_json params = ordered_json::array();
  for (const auto& p : m.parameters) {
    ordered_json pj;
    pj["name"] = p.name;
    pj["type"] = OptionalString(p.type_annotation);
    pj["default"] = OptionalString(p.default_value);
    params.push_back(std::move(pj));
  }
  ordered_json dmt = ordered_json::object();
  for (const auto& [k, v] : m.dmt) dmt[k] = v;

  ordered_json j;
  j["function_name"] = m.function_name;
  j["parameters"] = std::move(params);
  j["return_type"] = OptionalString(m.return_type);
  j["file_path"] = m.file_path;
  j["package_module"] = OptionalString(m.package_module);
  j["dependency"] = m.dependency;
  j["control_flow_skeleton"] = OptionalString(m.control_flow_skeleton);
  j["io_behavior"] = OptionalString(m.io_behavior);
  j["variable_modification"] = OptionalString(m.variable_modification);
  j["dmt"] = std::move(dmt);
  return j;
}

MetadataSet MetadataFromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kParseFailure, "metadata must be a JSON object");
  MetadataSet m;
  m.function_name = ReadString(j, "function_name");
  if (auto it = j.find("parameters"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw Error(ErrorKind::kParseFailure, "parameters must be an array");
    for (const auto& pj : *it) {
      if (!pj.is_object()) throw Error(ErrorKind::kParseFailure, "parameter must be an object");
      ParameterField p;
      p.name = ReadString(pj, "name");
      p.type_annotation = ReadOptionalString(pj, "type");
      p.default_value = ReadOptionalString(pj, "default");
      m.parameters.push_back(std::move(p));
    }
  }
  m.return_type = ReadOptionalString(j, "return_type");
  m.file_path = ReadString(j, "file_path");
  m.package_module = ReadOptionalString(j, "package_module");
  if (auto it = j.find("dependency"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw Error(ErrorKind::kParseFailure, "dependency must be an array");
    for (const auto& d : *it) {
      if (!d.is_string()) throw Error(ErrorKind::kParseFailure, "dependency entries must be strings");
      m.dependency.push_back(d.get<std::string>());
    }
  }
  m.control_flow_skeleton = ReadOptionalString(j, "control_flow_skeleton");
  m.io_behavior = ReadOptionalString(j, "io_behavior");
  m.variable_modification = ReadOptionalString(j, "variable_modification");
  if (auto it = j.find("dmt"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw Error(ErrorKind::kParseFailure, "dmt must be an object");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) throw Error(ErrorKind::kParseFailure, "dmt values must be strings");
      m.dmt[k] = v.get<std::string>();
    }
  }
  return m;
}

std::string SerializeMetadata(const MetadataSet& m) { return MetadataToJson(m).dump(2); }

MetadataSet DeserializeMetadata(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParseFailure, std::string("malformed metadata JSON: ") + e.what());
  }
  return MetadataFromJson(j);
}

FunctionRecord FunctionRecordFromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kParseFailure, "function record must be an object");
  FunctionRecord r;
  r.source_text = ReadOptionalString(j, "source_text");
  r.file_path = ReadString(j, "file_path");
  if (auto lang = ReadOptionalString(j, "language")) r.language = ParseLanguage(*lang);
  if (auto it = j.find("pre_extracted"); it != j.end() && !it->is_null()) {
    r.pre_extracted = MetadataFromJson(*it);
    if (r.file_path.empty()) r.file_path = r.pre_extracted->file_path;
  }
  return r;
}

}  // namespace expsum
