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

#include <algorithm>
#include <cctype>
#include <sstream>

#include "expsum/error.h"
#include "expsum/metadata_check.h"
#include "expsum/text.h"

namespace expsum {

using nlohmann::json;

std::string_view CategoryName(FunctionCategory c) {
  switch (c) {
    case FunctionCategory::kField: return "field";
    case FunctionCategory::kProcedural: return "procedural";
    case FunctionCategory::kConstructor: return "constructor";
    case FunctionCategory::kCallback: return "callback";
    case FunctionCategory::kUtility: return "utility";
  }
  return "field";
}

std::optional<FunctionCategory> ParseCategory(std::string_view name) {
  std::string n = ToLower(Trim(name));
  for (FunctionCategory c : kAllCategories) {
    if (n == CategoryName(c)) return c;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> StringList(const json& j, const char* key) {
  std::vector<std::string> out;
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return out;
  for (const auto& v : *it) out.push_back(v.get<std::string>());
  return out;
}

std::string SchemaText(const CategorySchema& s) {
  std::string text = s.definition;
  for (const auto& v : s.classification_criteria) text += "\n" + v;
  for (const auto& [k, v] : s.datatype_templates) text += "\n" + k + "\n" + v;
  for (const auto& v : s.forbidden) text += "\n" + v;
  for (const auto& v : s.example_names) text += "\n" + v;
  return ToLower(text);
}

void RenderSchema(const CategorySchema& s, std::ostringstream& out) {
  out << "### Category: " << CategoryName(s.category) << "\n";
  out << "Definition: " << s.definition << "\n";
  if (!s.classification_criteria.empty()) {
    out << "Classification criteria:\n";
    for (const auto& c : s.classification_criteria) out << "- " << c << "\n";
  }
  if (!s.datatype_templates.empty()) {
    out << "Summary templates by datatype:\n";
    for (const auto& [k, v] : s.datatype_templates) out << "- " << k << ": " << v << "\n";
  }
  if (!s.forbidden.empty()) {
    out << "Forbidden: " << Join(s.forbidden, "; ") << "\n";
  }
  if (!s.example_names.empty()) {
    out << "Example function names: " << Join(s.example_names, ", ") << "\n";
  }
  out << "\n";
}

std::string FirstSentence(const std::string& text, size_t limit) {
  std::string t = Trim(text);
  size_t end = std::string::npos;
  for (size_t i = 0; i + 1 < t.size(); ++i) {
    if ((t[i] == '.' || t[i] == '!' || t[i] == '?') && std::isspace(static_cast<unsigned char>(t[i + 1]))) {
      end = i + 1;
      break;
    }
  }
  if (end != std::string::npos) t = t.substr(0, end);
  std::replace(t.begin(), t.end(), '\n', ' ');
  if (t.size() > limit) t = t.substr(0, limit) + "...";
  return t;
}

// Position just past `marker` (case-insensitive), or npos.
size_t FindMarker(const std::string& text, std::string_view marker) {
  std::string lower = ToLower(text);
  size_t pos = lower.find(ToLower(marker));
  return pos == std::string::npos ? pos : pos + marker.size();
}

std::string FirstWord(const std::string& text, size_t from) {
  size_t i = from;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '*' || text[i] == '<')) ++i;
  size_t start = i;
  while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
  return text.substr(start, i - start);
}

const char kDraftSystem[] =
    "You are an expert software engineer who writes concise, accurate code summaries "
    "that follow the project's documentation conventions.";
const char kRefineSystem[] =
    "You are a meticulous reviewer of code summaries. You validate the declared function "
    "category and then polish the summary text.";

}  // namespace

CategorySchema CategorySchemaFromJson(const json& j) {
  CategorySchema s;
  try {
    auto cat = ParseCategory(j.at("category").get<std::string>());
    if (!cat) throw Error(ErrorKind::kInvalidConfig, "unknown schema category");
    s.category = *cat;
    s.definition = j.at("definition").get<std::string>();
    s.classification_criteria = StringList(j, "classification_criteria");
    if (auto it = j.find("datatype_templates"); it != j.end() && !it->is_null()) {
      for (const auto& [k, v] : it->items()) s.datatype_templates[k] = v.get<std::string>();
    }
    s.forbidden = StringList(j, "forbidden");
    s.example_names = StringList(j, "example_names");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidConfig, std::string("malformed category schema: ") + e.what());
  }
  if (Trim(s.definition).empty()) {
    throw Error(ErrorKind::kInvalidConfig,
                "schema for " + std::string(CategoryName(s.category)) + " has no definition");
  }
  return s;
}

void ValidateSchemas(const SchemaSet& schemas) {
  for (FunctionCategory c : kAllCategories) {
    auto it = schemas.find(c);
    if (it == schemas.end()) {
      throw Error(ErrorKind::kInvalidConfig, "missing schema for " + std::string(CategoryName(c)));
    }
    std::string text = SchemaText(it->second);
    for (FunctionCategory other : kAllCategories) {
      if (other != c && text.find(CategoryName(other)) != std::string::npos) {
        throw Error(ErrorKind::kInvalidConfig,
                    "schema for " + std::string(CategoryName(c)) + " mentions category '" +
                        std::string(CategoryName(other)) + "'");
      }
    }
  }
  const CategorySchema& field = schemas.at(FunctionCategory::kField);
  for (const char* dt : {"Boolean", "Integer", "String", "Object", "Enumeration"}) {
    if (!field.datatype_templates.count(dt)) {
      throw Error(ErrorKind::kInvalidConfig, std::string("field schema lacks a template for ") + dt);
    }
  }
  std::string forbidden = ToLower(Join(field.forbidden, " "));
  if (SetGetVerbs(forbidden).empty()) {
    throw Error(ErrorKind::kInvalidConfig, "field schema must forbid set/get verbs");
  }
}

SchemaSet LoadSchemas(const std::filesystem::path& dir) {
  SchemaSet schemas;
  for (FunctionCategory c : kAllCategories) {
    auto path = dir / (std::string(CategoryName(c)) + ".json");
    json j;
    try {
      j = json::parse(ReadFile(path));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kInvalidConfig, "malformed schema " + path.string() + ": " + e.what());
    }
    CategorySchema s = CategorySchemaFromJson(j);
    if (s.category != c) {
      throw Error(ErrorKind::kInvalidConfig, path.string() + " declares the wrong category");
    }
    schemas[c] = std::move(s);
  }
  ValidateSchemas(schemas);
  return schemas;
}

std::vector<std::string> LoadRefinerConstraints(const std::filesystem::path& path) {
  std::vector<std::string> out;
  try {
    json j = json::parse(ReadFile(path));
    out = j.get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidConfig,
                "malformed refiner constraints " + path.string() + ": " + e.what());
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const std::string& s) { return Trim(s).empty(); }),
            out.end());
  if (out.empty()) {
    throw Error(ErrorKind::kInvalidConfig, "refiner constraints list is empty: " + path.string());
  }
  return out;
}

void SummarizerConfig::Validate() const {
  if (max_iterations < 1) throw Error(ErrorKind::kInvalidConfig, "max_iterations must be >= 1");
  if (max_parse_retries < 0) throw Error(ErrorKind::kInvalidConfig, "max_parse_retries must be >= 0");
  if (!(temperature >= 0.0)) throw Error(ErrorKind::kInvalidConfig, "temperature must be >= 0");
  if (max_tokens < 1) throw Error(ErrorKind::kInvalidConfig, "max_tokens must be >= 1");
}

LlmRequest BuildDraftPrompt(const MetadataSet& meta, const RetrievalResult& retrieval,
                            const SchemaSet& schemas, const std::set<FunctionCategory>& excluded,
                            const SummarizerConfig& cfg) {
  std::vector<FunctionCategory> remaining;
  for (FunctionCategory c : kAllCategories) {
    if (!excluded.count(c)) remaining.push_back(c);
  }
  if (remaining.empty()) {
    throw Error(ErrorKind::kAllCategoriesExcluded, "every function category has been excluded");
  }
  std::vector<std::string> names;
  for (FunctionCategory c : remaining) names.emplace_back(CategoryName(c));

  std::ostringstream out;
  out << "Draft Generator\n"
      << "Write a one-sentence summary of the function described by the input metadata set. "
         "Use the knowledge entries for the correct domain terms and do not restate "
         "low-level details such as parameter types.\n\n";
  out << "<Input Metadata Set>\n" << RetainedMetadataJson(meta).dump(2) << "\n</Input Metadata Set>\n\n";

  out << "Knowledge Entries:\n";
  if (retrieval.terms.empty()) out << "- (none)\n";
  for (const auto& term : retrieval.terms) {
    auto it = std::find_if(retrieval.entries.begin(), retrieval.entries.end(),
                           [&](const ScoredEntry& s) { return s.entry.term == term; });
    out << "- " << term;
    if (it != retrieval.entries.end()) {
      out << " [" << it->entry.path_context << "]: " << FirstSentence(it->entry.documentation, 240);
    }
    out << "\n";
  }
  out << "\n";

  out << "Function Category Constraints:\n"
      << "Infer the category of the function from the candidates below, then write the "
         "summary in the style its schema prescribes.\n"
      << "Candidate categories: " << Join(names, ", ") << "\n\n";
  for (FunctionCategory c : remaining) RenderSchema(schemas.at(c), out);

  out << "Output Format:\n"
      << "CATEGORY: <one of: " << Join(names, ", ") << ">\n"
      << "SUMMARY: <summary sentence>\n";

  LlmRequest req;
  req.system_prompt = kDraftSystem;
  req.user_prompt = out.str();
  req.temperature = cfg.temperature;
  req.max_tokens = cfg.max_tokens;
  return req;
}

LlmRequest BuildRefinePrompt(const MetadataSet& meta, const DraftResult& draft,
                             const std::vector<std::string>& refiner_constraints,
                             const SummarizerConfig& cfg) {
  std::string declared(CategoryName(draft.declared_category));
  std::ostringstream out;
  out << "Summary Refiner\n\n";
  out << "<Input Metadata Set>\n" << RetainedMetadataJson(meta).dump(2) << "\n</Input Metadata Set>\n\n";
  out << "Draft category: " << declared << "\n";
  out << "Draft summary: " << draft.summary_text << "\n\n";
  out << "Step 1. Check whether the draft category is consistent with the input metadata set. "
         "If it is not, reply with exactly one line \"Error category: "
      << declared << "\" and nothing else.\n";
  out << "Step 2. Otherwise revise the draft summary following the constraints for refiner:\n";
  for (const auto& c : refiner_constraints) out << "- " << c << "\n";
  out << "\nReply with exactly one line \"FINAL: <revised summary>\".\n";

  LlmRequest req;
  req.system_prompt = kRefineSystem;
  req.user_prompt = out.str();
  req.temperature = cfg.temperature;
  req.max_tokens = cfg.max_tokens;
  return req;
}

DraftResult ParseDraft(const LlmResponse& response) {
  const std::string& text = response.text;
  size_t cat_pos = FindMarker(text, "CATEGORY:");
  if (cat_pos == std::string::npos) {
    throw Error(ErrorKind::kMalformedDraft, "draft lacks a CATEGORY: marker");
  }
  std::string word = FirstWord(text, cat_pos);
  auto category = ParseCategory(word);
  if (!category) {
    throw Error(ErrorKind::kMalformedDraft, "draft declares unknown category '" + word + "'");
  }
  size_t sum_pos = FindMarker(text, "SUMMARY:");
  if (sum_pos == std::string::npos) {
    throw Error(ErrorKind::kMalformedDraft, "draft lacks a SUMMARY: marker");
  }
  std::string_view rest = std::string_view(text).substr(sum_pos);
  if (cat_pos > sum_pos) rest = rest.substr(0, cat_pos - sum_pos - std::string_view("CATEGORY:").size());
  std::string body = Trim(rest);
  if (body.empty()) throw Error(ErrorKind::kMalformedDraft, "draft summary is empty");
  return DraftResult{body, *category, text};
}

RefinementOutcome ParseRefinement(const LlmResponse& response) {
  const std::string& text = response.text;
  RefinementOutcome outcome;
  size_t err_pos = FindMarker(text, "Error category:");
  if (err_pos != std::string::npos) {
    std::string word = FirstWord(text, err_pos);
    auto category = ParseCategory(word);
    if (!category) {
      throw Error(ErrorKind::kMalformedRefinement,
                  "refiner rejected with unknown category '" + word + "'");
    }
    outcome.error_category = *category;
    return outcome;
  }
  size_t final_pos = FindMarker(text, "FINAL:");
  std::string body = Trim(final_pos == std::string::npos ? std::string_view(text)
                                                          : std::string_view(text).substr(final_pos));
  if (body.empty()) throw Error(ErrorKind::kMalformedRefinement, "refiner returned an empty summary");
  outcome.accepted = true;
  outcome.final_text = std::move(body);
  return outcome;
}

SummaryResult Summarize(const MetadataSet& meta, const RetrievalResult& retrieval,
                        const LlmClient& client, const SchemaSet& schemas,
                        const std::vector<std::string>& refiner_constraints,
                        const SummarizerConfig& cfg) {
  cfg.Validate();
  if (refiner_constraints.empty()) {
    throw Error(ErrorKind::kInvalidConfig, "refiner constraints must be non-empty");
  }
  SummaryResult result;
  result.retrieved_terms = retrieval.terms;

  for (int iteration = 1; iteration <= cfg.max_iterations; ++iteration) {
    LlmRequest draft_req = BuildDraftPrompt(meta, retrieval, schemas, result.excluded_categories, cfg);
    DraftResult draft;
    for (int attempt = 0;; ++attempt) {
      try {
        draft = ParseDraft(client.Complete(draft_req));
        if (result.excluded_categories.count(draft.declared_category)) {
          throw Error(ErrorKind::kMalformedDraft,
                      "draft declares excluded category '" +
                          std::string(CategoryName(draft.declared_category)) + "'");
        }
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kMalformedDraft || attempt >= cfg.max_parse_retries) throw;
      }
    }

    LlmRequest refine_req = BuildRefinePrompt(meta, draft, refiner_constraints, cfg);
    RefinementOutcome outcome;
    for (int attempt = 0;; ++attempt) {
      try {
        outcome = ParseRefinement(client.Complete(refine_req));
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kMalformedRefinement || attempt >= cfg.max_parse_retries) throw;
      }
    }

    result.trace.push_back({draft, outcome});
    result.iterations = iteration;
    result.category = draft.declared_category;
    if (outcome.accepted) {
      result.final_summary = outcome.final_text;
      return result;
    }
    if (iteration == cfg.max_iterations) break;
    // The refiner is asked to name the declared category; excluding that one
    // keeps the candidate set shrinking even if it names another.
    if (result.excluded_categories.size() + 1 == kAllCategories.size()) {
      throw Error(ErrorKind::kAllCategoriesExcluded,
                  "refiner rejected every function category");
    }
    result.excluded_categories.insert(draft.declared_category);
  }
  result.final_summary = result.trace.back().draft.summary_text;
  result.degraded = true;
  return result;
}

std::vector<std::string> SetGetVerbs(std::string_view text) {
  static const std::set<std::string> kForms = {"set",     "sets",    "setting", "get",
                                               "gets",    "getting", "got",     "setter",
                                               "getter"};
  std::vector<std::string> found;
  std::string word;
  auto flush = [&] {
    if (!word.empty() && kForms.count(word)) found.push_back(word);
    word.clear();
  };
  for (char c : text) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      flush();
    }
  }
  flush();
  return found;
}

nlohmann::ordered_json SummaryTraceToJson(const SummaryResult& result) {
  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const auto& step : result.trace) {
    nlohmann::ordered_json outcome;
    if (step.outcome.accepted) {
      outcome = {{"accepted", step.outcome.final_text}};
    } else {
      outcome = {{"rejected", CategoryName(step.outcome.error_category)}};
    }
    trace.push_back({{"draft_category", CategoryName(step.draft.declared_category)},
                     {"draft", step.draft.summary_text},
                     {"outcome", std::move(outcome)}});
  }
  nlohmann::ordered_json excluded = nlohmann::ordered_json::array();
  for (FunctionCategory c : result.excluded_categories) excluded.push_back(CategoryName(c));
  return {{"excluded_categories", std::move(excluded)}, {"trace", std::move(trace)}};
}

}  // namespace expsum
