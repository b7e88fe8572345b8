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

#include "expsum/metadata_check.h"

#include <sstream>

#include "expsum/error.h"
#include "expsum/text.h"

namespace expsum {

UninformativeDictionary::UninformativeDictionary(const std::vector<std::string>& entries,
                                                 std::string version)
    : version_(std::move(version)) {
  for (const auto& e : entries) {
    std::string n = NormalizePhrase(e);
    if (!n.empty()) entries_.insert(std::move(n));
  }
  if (entries_.empty()) {
    throw Error(ErrorKind::kEmptyDictionary, "uninformative dictionary has no entries");
  }
}

bool UninformativeDictionary::Matches(std::string_view value) const {
  return entries_.count(NormalizePhrase(value)) > 0;
}

UninformativeDictionary LoadDictionary(const std::filesystem::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> entries;
  std::string version = path.filename().string();
  std::string line;
  while (std::getline(in, line)) {
    std::string text = Trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      std::string comment = Trim(std::string_view(text).substr(1));
      if (comment.rfind("version:", 0) == 0) version = Trim(comment.substr(8));
      continue;
    }
    entries.push_back(text);
  }
  try {
    return UninformativeDictionary(entries, version);
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(e.what()) + " (" + path.string() + ")");
  }
}

std::string_view RemovalReasonName(RemovalReason reason) {
  return reason == RemovalReason::kEmpty ? "empty" : "uninformative";
}

namespace {

bool IsBlank(const std::optional<std::string>& v) { return !v || Trim(*v).empty(); }

class Checker {
 public:
  Checker(const UninformativeDictionary& dict, std::vector<RemovedField>& removed)
      : dict_(dict), removed_(removed) {}

  void Scalar(const char* name, std::optional<std::string>& value) {
    if (IsBlank(value)) {
      removed_.push_back({name, RemovalReason::kEmpty});
      value.reset();
    } else if (dict_.Matches(*value)) {
      removed_.push_back({name, RemovalReason::kUninformative});
      value.reset();
    }
  }

  void Parameters(std::vector<ParameterField>& params) {
    if (params.empty()) {
      removed_.push_back({"parameters", RemovalReason::kEmpty});
      return;
    }
    std::vector<bool> drop(params.size());
    size_t dropped = 0;
    for (size_t i = 0; i < params.size(); ++i) {
      const ParameterField& p = params[i];
      bool name_uninformative = Trim(p.name).empty() || dict_.Matches(p.name);
      bool type_uninformative = IsBlank(p.type_annotation) || dict_.Matches(*p.type_annotation);
      drop[i] = name_uninformative && type_uninformative;
      dropped += drop[i] ? 1 : 0;
    }
    DropElements("parameters", params, drop, dropped);
  }

  void Dependencies(std::vector<std::string>& deps) {
    if (deps.empty()) {
      removed_.push_back({"dependency", RemovalReason::kEmpty});
      return;
    }
    std::vector<bool> drop(deps.size());
    size_t dropped = 0;
    for (size_t i = 0; i < deps.size(); ++i) {
      drop[i] = Trim(deps[i]).empty() || dict_.Matches(deps[i]);
      dropped += drop[i] ? 1 : 0;
    }
    DropElements("dependency", deps, drop, dropped);
  }

  void Dmt(std::map<std::string, std::string>& dmt) {
    for (auto it = dmt.begin(); it != dmt.end();) {
      std::string name = "dmt." + it->first;
      if (Trim(it->second).empty()) {
        removed_.push_back({name, RemovalReason::kEmpty});
        it = dmt.erase(it);
      } else if (dict_.Matches(it->second)) {
        removed_.push_back({name, RemovalReason::kUninformative});
        it = dmt.erase(it);
      } else {
        ++it;
      }
    }
  }

 private:
  template <typename T>
  void DropElements(const std::string& name, std::vector<T>& items, const std::vector<bool>& drop,
                    size_t dropped) {
    if (dropped == 0) return;
    if (dropped == items.size()) {
      removed_.push_back({name, RemovalReason::kUninformative});
      items.clear();
      return;
    }
    std::vector<T> kept;
    for (size_t i = 0; i < items.size(); ++i) {
      if (drop[i]) {
        removed_.push_back({name + "[" + std::to_string(i) + "]", RemovalReason::kUninformative});
      } else {
        kept.push_back(std::move(items[i]));
      }
    }
    items = std::move(kept);
  }

  const UninformativeDictionary& dict_;
  std::vector<RemovedField>& removed_;
};

}  // namespace

CheckReport CheckMetadata(const MetadataSet& m, const UninformativeDictionary& dict) {
  CheckReport report;
  report.retained = m;
  MetadataSet& r = report.retained;
  Checker checker(dict, report.removed_fields);
  checker.Parameters(r.parameters);
  checker.Scalar("return_type", r.return_type);
  checker.Scalar("package_module", r.package_module);
  checker.Dependencies(r.dependency);
  checker.Scalar("control_flow_skeleton", r.control_flow_skeleton);
  checker.Scalar("io_behavior", r.io_behavior);
  checker.Scalar("variable_modification", r.variable_modification);
  checker.Dmt(r.dmt);
  return report;
}

std::vector<std::string> PresentFields(const MetadataSet& m) {
  std::vector<std::string> fields;
  if (!m.function_name.empty()) fields.push_back("function_name");
  if (!m.parameters.empty()) fields.push_back("parameters");
  if (!IsBlank(m.return_type)) fields.push_back("return_type");
  if (!m.file_path.empty()) fields.push_back("file_path");
  if (!IsBlank(m.package_module)) fields.push_back("package_module");
  if (!m.dependency.empty()) fields.push_back("dependency");
  if (!IsBlank(m.control_flow_skeleton)) fields.push_back("control_flow_skeleton");
  if (!IsBlank(m.io_behavior)) fields.push_back("io_behavior");
  if (!IsBlank(m.variable_modification)) fields.push_back("variable_modification");
  for (const auto& [k, v] : m.dmt) {
    if (!Trim(v).empty()) fields.push_back("dmt." + k);
  }
  return fields;
}

size_t InformativeValueCount(const MetadataSet& m) {
  size_t n = 0;
  for (const auto& f : PresentFields(m)) {
    if (f == "parameters") {
      n += m.parameters.size();
    } else if (f == "dependency") {
      n += m.dependency.size();
    } else {
      ++n;
    }
  }
  return n;
}

nlohmann::ordered_json CheckReportToJson(const CheckReport& report) {
  nlohmann::ordered_json removed = nlohmann::ordered_json::array();
  for (const auto& r : report.removed_fields) {
    removed.push_back({{"field", r.field}, {"reason", RemovalReasonName(r.reason)}});
  }
  nlohmann::ordered_json j;
  j["removed_fields"] = std::move(removed);
  j["retained"] = MetadataToJson(report.retained);
  return j;
}

nlohmann::ordered_json RetainedMetadataJson(const MetadataSet& m) {
  nlohmann::ordered_json full = MetadataToJson(m);
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [key, value] : full.items()) {
    if (value.is_null()) continue;
    if ((value.is_array() || value.is_object()) && value.empty()) continue;
    if (value.is_string() && Trim(value.get<std::string>()).empty()) continue;
    out[key] = value;
  }
  return out;
}

}  // namespace expsum
