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

// End-to-end wiring: configuration, batch summarization, and the command
// implementations behind the expsum binary. Commands write data to `out`
// (or files) and diagnostics to `err`, and return a process exit status.

#ifndef EXPSUM_PIPELINE_H_
#define EXPSUM_PIPELINE_H_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "expsum/code_model.h"
#include "expsum/knowledge_base.h"
#include "expsum/llm_client.h"
#include "expsum/metadata_check.h"
#include "expsum/retrieval.h"
#include "expsum/summarizer.h"
#include "json.hpp"

namespace expsum {

// Directory holding the bundled dictionary, schemas and refiner
// constraints.
std::filesystem::path DefaultDataDir();

struct LlmSettings {
  std::string backend = "mock";  // "mock" or "http"
  std::filesystem::path mock_script;
  HttpSettings http;
};

struct PipelineConfig {
  std::filesystem::path kb_path;
  std::filesystem::path dictionary_path;
  std::filesystem::path schema_dir;
  std::filesystem::path refiner_constraints_path;
  DmtConfig dmt = DmtConfig::HarmonyOs();
  RetrievalConfig retrieval;
  SummarizerConfig summarizer;
  LlmSettings llm;
  int workers = 1;
};

// Relative paths resolve against `base_dir`. Missing resource paths fall
// back to DefaultDataDir(). Throws Error(kInvalidConfig).
PipelineConfig PipelineConfigFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir);
PipelineConfig LoadPipelineConfig(const std::filesystem::path& path);

// Settings given on the command line.
struct ConfigOverrides {
  std::optional<std::string> kb_path;
  std::optional<std::string> backend;
  std::optional<std::string> mock_script;
  std::optional<std::string> api_base;
  std::optional<std::string> model;
  std::optional<std::string> api_key;
  std::optional<int> workers;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Reads the process environment.
EnvLookup ProcessEnv();

// Precedence per setting: command-line flag, then EXPSUM_API_BASE /
// EXPSUM_MODEL / EXPSUM_API_KEY, then the config file.
void ApplyOverrides(PipelineConfig& config, const ConfigOverrides& flags, const EnvLookup& env);

// Referenced paths must exist and workers must be >= 1. Throws
// Error(kInvalidConfig).
void ValidatePipelineConfig(const PipelineConfig& config);

std::shared_ptr<const LlmClient> MakeClient(const LlmSettings& settings);

struct CorpusRecord {
  std::string id;
  FunctionRecord function;
  std::optional<std::string> reference_summary;
};

// JSON lines of {id, function: {...}, reference_summary}. Ids must be
// unique. Throws Error(kParseFailure).
std::vector<CorpusRecord> LoadCorpus(const std::filesystem::path& path);

// Loaded, read-only resources shared by all workers.
class Pipeline {
 public:
  // `client` overrides the configured backend when non-null.
  explicit Pipeline(PipelineConfig config, std::shared_ptr<const LlmClient> client = nullptr);

  // model -> check -> retrieve -> summarize. Never throws for per-record
  // failures; those become {id, error, detail}.
  nlohmann::ordered_json SummarizeRecord(const CorpusRecord& record) const;

  // Results in input order, computed by `workers` threads.
  std::vector<nlohmann::ordered_json> SummarizeCorpus(const std::vector<CorpusRecord>& records,
                                                      int workers) const;

  const PipelineConfig& config() const { return config_; }
  const KnowledgeBase& kb() const { return kb_; }

 private:
  PipelineConfig config_;
  KnowledgeBase kb_;
  UninformativeDictionary dictionary_;
  SchemaSet schemas_;
  std::vector<std::string> refiner_constraints_;
  FrontendRegistry registry_;
  std::shared_ptr<const LlmClient> client_;
};

// ---------------------------------------------------------------------------
// Commands.

struct KbBuildOptions {
  std::filesystem::path corpus;
  std::filesystem::path out;
  bool lexical_only = false;
  std::optional<std::filesystem::path> mock_script;  // else the http backend from env
};
int CmdKbBuild(const KbBuildOptions& opts, std::ostream& out, std::ostream& err);

// Reads a FunctionRecord (or a corpus record with a "function" member) and
// prints its MetadataSet.
int CmdExtract(const std::filesystem::path& record_path, const DmtConfig& dmt, std::ostream& out,
               std::ostream& err);

int CmdCheck(const std::filesystem::path& metadata_path,
             const std::filesystem::path& dictionary_path, std::ostream& out, std::ostream& err);

int CmdRetrieve(const std::filesystem::path& metadata_path, const std::filesystem::path& kb_path,
                const RetrievalConfig& cfg, std::ostream& out, std::ostream& err);

struct SummarizeOptions {
  std::filesystem::path corpus;
  std::filesystem::path config;
  std::filesystem::path out;  // "-" for standard output
  ConfigOverrides overrides;
};
int CmdSummarize(const SummarizeOptions& opts, const EnvLookup& env, std::ostream& out,
                 std::ostream& err);

struct EvaluateOptions {
  std::filesystem::path generated;
  std::filesystem::path references;
  std::filesystem::path report;
  std::optional<std::filesystem::path> csv;
};
int CmdEvaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace expsum

#endif  // EXPSUM_PIPELINE_H_
