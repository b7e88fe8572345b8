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

#include "expsum/pipeline.h"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "expsum/error.h"
#include "expsum/metrics.h"
#include "expsum/text.h"

#ifndef EXPSUM_DEFAULT_DATA_DIR
#define EXPSUM_DEFAULT_DATA_DIR "data"
#endif

namespace expsum {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

fs::path DefaultDataDir() {
  if (const char* env = std::getenv("EXPSUM_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return EXPSUM_DEFAULT_DATA_DIR;
}

namespace {

fs::path Resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

json ParseJsonFile(const fs::path& path, ErrorKind kind) {
  std::string content = ReadFile(path);
  try {
    return json::parse(content);
  } catch (const json::exception& e) {
    throw Error(kind, "malformed JSON in " + path.string() + ": " + e.what());
  }
}

// Calls `fn(line_number, json)` for every non-blank JSON line.
template <typename Fn>
void ForEachJsonLine(const fs::path& path, Fn fn) {
  std::istringstream in(ReadFile(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParseFailure,
                  path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    fn(lineno, j);
  }
}

PipelineConfig Validated(PipelineConfig c) {
  ValidatePipelineConfig(c);
  return c;
}

ordered_json ErrorLine(const std::string& id, std::string_view kind, const std::string& detail) {
  ordered_json j;
  j["id"] = id;
  j["error"] = kind;
  j["detail"] = detail;
  return j;
}

}  // namespace

PipelineConfig PipelineConfigFromJson(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorKind::kInvalidConfig, "config must be a JSON object");
  PipelineConfig c;
  fs::path data = DefaultDataDir();
  c.dictionary_path = data / "uninformative.txt";
  c.schema_dir = data / "schemas";
  c.refiner_constraints_path = data / "refiner_constraints.json";
  try {
    if (j.contains("kb_path")) c.kb_path = Resolve(base_dir, j["kb_path"].get<std::string>());
    if (j.contains("dictionary_path")) {
      c.dictionary_path = Resolve(base_dir, j["dictionary_path"].get<std::string>());
    }
    if (j.contains("schema_dir")) c.schema_dir = Resolve(base_dir, j["schema_dir"].get<std::string>());
    if (j.contains("refiner_constraints_path")) {
      c.refiner_constraints_path = Resolve(base_dir, j["refiner_constraints_path"].get<std::string>());
    }
    if (j.contains("dmt_keys")) {
      c.dmt.enabled_keys.clear();
      for (const auto& k : j["dmt_keys"]) c.dmt.enabled_keys.insert(k.get<std::string>());
    }
    if (auto it = j.find("retrieval"); it != j.end()) {
      c.retrieval.path_overlap_threshold =
          it->value("path_overlap_threshold", c.retrieval.path_overlap_threshold);
      c.retrieval.top_n = it->value("top_n", c.retrieval.top_n);
      c.retrieval.token_overlap_threshold =
          it->value("token_overlap_threshold", c.retrieval.token_overlap_threshold);
    }
    if (auto it = j.find("summarizer"); it != j.end()) {
      c.summarizer.max_iterations = it->value("max_iterations", c.summarizer.max_iterations);
      c.summarizer.max_parse_retries = it->value("max_parse_retries", c.summarizer.max_parse_retries);
      c.summarizer.temperature = it->value("temperature", c.summarizer.temperature);
      c.summarizer.max_tokens = it->value("max_tokens", c.summarizer.max_tokens);
    }
    if (auto it = j.find("llm"); it != j.end()) {
      c.llm.backend = it->value("backend", c.llm.backend);
      if (it->contains("mock_script")) {
        c.llm.mock_script = Resolve(base_dir, (*it)["mock_script"].get<std::string>());
      }
      c.llm.http.api_base = it->value("api_base", c.llm.http.api_base);
      c.llm.http.model = it->value("model", c.llm.http.model);
      c.llm.http.api_key = it->value("api_key", c.llm.http.api_key);
      c.llm.http.timeout = std::chrono::seconds(it->value("timeout_s", 120));
      c.llm.http.retries = it->value("retries", c.llm.http.retries);
      c.llm.http.max_in_flight = it->value("max_in_flight", c.llm.http.max_in_flight);
    }
    c.workers = j.value("workers", c.workers);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidConfig, std::string("bad config value: ") + e.what());
  }
  return c;
}

PipelineConfig LoadPipelineConfig(const fs::path& path) {
  return PipelineConfigFromJson(ParseJsonFile(path, ErrorKind::kInvalidConfig),
                                path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

EnvLookup ProcessEnv() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  };
}

void ApplyOverrides(PipelineConfig& config, const ConfigOverrides& flags, const EnvLookup& env) {
  auto pick = [&](std::string& target, const std::optional<std::string>& flag, const char* var) {
    if (flag) {
      target = *flag;
    } else if (auto v = env(var)) {
      target = *v;
    }
  };
  pick(config.llm.http.api_base, flags.api_base, "EXPSUM_API_BASE");
  pick(config.llm.http.model, flags.model, "EXPSUM_MODEL");
  pick(config.llm.http.api_key, flags.api_key, "EXPSUM_API_KEY");
  if (flags.kb_path) config.kb_path = *flags.kb_path;
  if (flags.backend) config.llm.backend = *flags.backend;
  if (flags.mock_script) config.llm.mock_script = *flags.mock_script;
  if (flags.workers) config.workers = *flags.workers;
}

void ValidatePipelineConfig(const PipelineConfig& c) {
  auto require = [](const fs::path& p, const char* what) {
    std::error_code ec;
    if (p.empty() || !fs::exists(p, ec)) {
      throw Error(ErrorKind::kInvalidConfig, std::string(what) + " not found: '" + p.string() + "'");
    }
  };
  require(c.kb_path, "knowledge base");
  require(c.dictionary_path, "uninformative dictionary");
  require(c.schema_dir, "schema directory");
  require(c.refiner_constraints_path, "refiner constraints");
  if (c.workers < 1) throw Error(ErrorKind::kInvalidConfig, "workers must be >= 1");
  if (c.llm.backend == "mock") {
    require(c.llm.mock_script, "mock script");
  } else if (c.llm.backend == "http") {
    if (c.llm.http.api_base.empty()) {
      throw Error(ErrorKind::kInvalidConfig, "http backend needs api_base or EXPSUM_API_BASE");
    }
  } else {
    throw Error(ErrorKind::kInvalidConfig, "unknown llm backend '" + c.llm.backend + "'");
  }
  c.retrieval.Validate();
  c.summarizer.Validate();
}

std::shared_ptr<const LlmClient> MakeClient(const LlmSettings& settings) {
  if (settings.backend == "mock") {
    return std::make_shared<MockClient>(LoadMockScript(settings.mock_script));
  }
  if (settings.backend == "http") return std::make_shared<HttpClient>(settings.http);
  throw Error(ErrorKind::kInvalidConfig, "unknown llm backend '" + settings.backend + "'");
}

std::vector<CorpusRecord> LoadCorpus(const fs::path& path) {
  std::vector<CorpusRecord> records;
  std::set<std::string> ids;
  ForEachJsonLine(path, [&](int lineno, const json& j) {
    std::string where = path.string() + ":" + std::to_string(lineno);
    CorpusRecord r;
    try {
      r.id = j.at("id").get<std::string>();
      r.function = FunctionRecordFromJson(j.at("function"));
      if (auto it = j.find("reference_summary"); it != j.end() && !it->is_null()) {
        r.reference_summary = it->get<std::string>();
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParseFailure, where + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.kind(), where + ": " + e.what());
    }
    if (!ids.insert(r.id).second) {
      throw Error(ErrorKind::kParseFailure, where + ": duplicate id '" + r.id + "'");
    }
    records.push_back(std::move(r));
  });
  return records;
}

Pipeline::Pipeline(PipelineConfig config, std::shared_ptr<const LlmClient> client)
    : config_(Validated(std::move(config))),
      kb_(LoadKnowledgeBase(config_.kb_path)),
      dictionary_(LoadDictionary(config_.dictionary_path)),
      schemas_(LoadSchemas(config_.schema_dir)),
      refiner_constraints_(LoadRefinerConstraints(config_.refiner_constraints_path)),
      registry_(FrontendRegistry::Default()),
      client_(client ? std::move(client) : MakeClient(config_.llm)) {}

ordered_json Pipeline::SummarizeRecord(const CorpusRecord& record) const {
  try {
    MetadataSet meta = ModelFunction(record.function, config_.dmt, registry_);
    CheckReport report = CheckMetadata(meta, dictionary_);
    RetrievalResult retrieval = Retrieve(BuildQuery(report.retained), kb_, config_.retrieval);
    SummaryResult s = Summarize(report.retained, retrieval, *client_, schemas_,
                                refiner_constraints_, config_.summarizer);
    ordered_json j;
    j["id"] = record.id;
    j["final_summary"] = s.final_summary;
    j["category"] = CategoryName(s.category);
    j["retrieved_terms"] = s.retrieved_terms;
    j["iterations"] = s.iterations;
    j["degraded"] = s.degraded;
    return j;
  } catch (const Error& e) {
    return ErrorLine(record.id, ErrorKindName(e.kind()), e.what());
  } catch (const std::exception& e) {
    return ErrorLine(record.id, "Internal", e.what());
  }
}

std::vector<ordered_json> Pipeline::SummarizeCorpus(const std::vector<CorpusRecord>& records,
                                                    int workers) const {
  std::vector<ordered_json> results(records.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < records.size(); i = next++) results[i] = SummarizeRecord(records[i]);
  };
  size_t n = std::min<size_t>(std::max(workers, 1), std::max<size_t>(records.size(), 1));
  std::vector<std::thread> pool;
  for (size_t t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return results;
}

// ---------------------------------------------------------------------------
// Commands.

int CmdKbBuild(const KbBuildOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    std::vector<PackageDoc> docs = LoadPackageDocs(opts.corpus);
    if (docs.empty()) {
      throw Error(ErrorKind::kEmptyCorpus, "empty corpus: no documents in " + opts.corpus.string());
    }
    std::shared_ptr<const LlmClient> client;
    if (!opts.lexical_only) {
      LlmSettings settings;
      if (opts.mock_script) {
        settings.mock_script = *opts.mock_script;
      } else {
        PipelineConfig c;
        ApplyOverrides(c, {}, ProcessEnv());
        if (c.llm.http.api_base.empty()) {
          throw Error(ErrorKind::kInvalidConfig,
                      "semantic term extraction needs --mock-script or EXPSUM_API_BASE "
                      "(or pass --lexical-only)");
        }
        settings.backend = "http";
        settings.http = c.llm.http;
      }
      client = MakeClient(settings);
    }
    KnowledgeBase kb = BuildKnowledgeBase(docs, client.get());
    SaveKnowledgeBase(kb, opts.out);
    std::set<std::string> terms;
    for (const auto& e : kb.entries) terms.insert(e.term);
    out << "documents: " << docs.size() << "\nentries: " << kb.entries.size()
        << "\ndistinct terms: " << terms.size() << "\n";
    return 0;
  } catch (const Error& e) {
    err << "expsum kb-build: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
}

int CmdExtract(const fs::path& record_path, const DmtConfig& dmt, std::ostream& out,
               std::ostream& err) {
  try {
    json j = ParseJsonFile(record_path, ErrorKind::kParseFailure);
    FunctionRecord record;
    try {
      record = FunctionRecordFromJson(j.contains("function") ? j["function"] : j);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kParseFailure, std::string("bad function record: ") + e.what());
    }
    out << SerializeMetadata(ModelFunction(record, dmt)) << "\n";
    return 0;
  } catch (const Error& e) {
    err << "expsum extract: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
}

int CmdCheck(const fs::path& metadata_path, const fs::path& dictionary_path, std::ostream& out,
             std::ostream& err) {
  try {
    MetadataSet m = MetadataFromJson(ParseJsonFile(metadata_path, ErrorKind::kParseFailure));
    UninformativeDictionary dict = LoadDictionary(dictionary_path);
    out << CheckReportToJson(CheckMetadata(m, dict)).dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    err << "expsum check: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
}

int CmdRetrieve(const fs::path& metadata_path, const fs::path& kb_path, const RetrievalConfig& cfg,
                std::ostream& out, std::ostream& err) {
  try {
    MetadataSet m = MetadataFromJson(ParseJsonFile(metadata_path, ErrorKind::kParseFailure));
    KnowledgeBase kb = LoadKnowledgeBase(kb_path);
    out << RetrievalResultToJson(Retrieve(BuildQuery(m), kb, cfg)).dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    err << "expsum retrieve: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
}

int CmdSummarize(const SummarizeOptions& opts, const EnvLookup& env, std::ostream& out,
                 std::ostream& err) {
  std::vector<ordered_json> results;
  try {
    PipelineConfig config = LoadPipelineConfig(opts.config);
    ApplyOverrides(config, opts.overrides, env);
    Pipeline pipeline(std::move(config));
    std::vector<CorpusRecord> records = LoadCorpus(opts.corpus);
    results = pipeline.SummarizeCorpus(records, pipeline.config().workers);
  } catch (const Error& e) {
    err << "expsum summarize: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
  std::string text;
  size_t failures = 0;
  for (const auto& r : results) {
    if (r.contains("error")) {
      ++failures;
      err << "expsum summarize: record '" << r["id"].get<std::string>()
          << "' failed: " << r["error"].get<std::string>() << ": " << r["detail"].get<std::string>()
          << "\n";
    }
    text += r.dump() + "\n";
  }
  try {
    if (opts.out == "-") {
      out << text;
    } else {
      WriteFile(opts.out, text);
    }
  } catch (const Error& e) {
    err << "expsum summarize: " << e.what() << "\n";
    return 1;
  }
  err << "expsum summarize: " << results.size() << " records, " << failures << " warnings\n";
  return 0;
}

int CmdEvaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    std::map<std::string, std::string> references;
    ForEachJsonLine(opts.references, [&](int, const json& j) {
      if (!j.contains("id")) return;
      for (const char* key : {"reference", "reference_summary"}) {
        if (auto it = j.find(key); it != j.end() && it->is_string()) {
          references[j["id"].get<std::string>()] = it->get<std::string>();
          return;
        }
      }
    });
    std::vector<ScoredPair> pairs;
    size_t unmatched = 0;
    ForEachJsonLine(opts.generated, [&](int, const json& j) {
      if (!j.contains("id")) return;
      std::string id = j["id"].get<std::string>();
      const json* cand = nullptr;
      for (const char* key : {"final_summary", "candidate"}) {
        if (auto it = j.find(key); it != j.end() && it->is_string()) {
          cand = &*it;
          break;
        }
      }
      auto ref = references.find(id);
      if (cand == nullptr || ref == references.end()) {
        ++unmatched;
        return;
      }
      pairs.push_back({id, cand->get<std::string>(), ref->second});
    });
    if (pairs.empty()) {
      throw Error(ErrorKind::kEmptyCorpus, "no joinable ids between generated and reference files");
    }
    if (unmatched > 0) err << "expsum evaluate: skipped " << unmatched << " unjoinable records\n";
    EvaluationReport report = EvaluateCorpus(pairs);
    WriteFile(opts.report, EvaluationReportToJson(report).dump(2) + "\n");
    if (opts.csv) WriteFile(*opts.csv, EvaluationReportToCsv(report));
    out << "n: " << report.n << "\nBLEU-4: " << report.mean_bleu4
        << "\nROUGE-L: " << report.mean_rouge_l << "\n";
    return 0;
  } catch (const Error& e) {
    err << "expsum evaluate: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace expsum
