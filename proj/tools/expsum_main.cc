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

// expsum command-line entry point.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "expsum/error.h"
#include "expsum/pipeline.h"

namespace {

template <typename T>
void OptionalFlag(CLI::App* app, const std::string& name, std::optional<T>& target,
                  const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"expsum: metadata-driven code summarization"};
  app.require_subcommand(1);
  int status = 0;

  // kb-build
  expsum::KbBuildOptions kb_opts;
  std::string kb_mock;
  auto* kb = app.add_subcommand("kb-build", "Build a knowledge base from package documentation");
  kb->add_option("--corpus", kb_opts.corpus, "Directory of text files or JSON manifest")->required();
  kb->add_option("--out", kb_opts.out, "Knowledge base JSON to write")->required();
  kb->add_flag("--lexical-only", kb_opts.lexical_only, "Skip LLM-judged term extraction");
  kb->add_option("--mock-script", kb_mock, "Use the scripted mock for term extraction");
  kb->callback([&] {
    if (!kb_mock.empty()) kb_opts.mock_script = kb_mock;
    status = expsum::CmdKbBuild(kb_opts, std::cout, std::cerr);
  });

  // extract
  std::string record_path;
  std::vector<std::string> dmt_keys;
  auto* extract = app.add_subcommand("extract", "Model one function record as a metadata set");
  extract->add_option("--record", record_path, "FunctionRecord JSON")->required();
  extract->add_option("--dmt-keys", dmt_keys, "Domain annotations to keep")->delimiter(',');
  extract->callback([&] {
    expsum::DmtConfig dmt = expsum::DmtConfig::HarmonyOs();
    if (!dmt_keys.empty()) dmt.enabled_keys = {dmt_keys.begin(), dmt_keys.end()};
    status = expsum::CmdExtract(record_path, dmt, std::cout, std::cerr);
  });

  // check
  std::string check_meta;
  std::string dictionary = (expsum::DefaultDataDir() / "uninformative.txt").string();
  auto* check = app.add_subcommand("check", "Drop empty and uninformative metadata");
  check->add_option("--metadata", check_meta, "MetadataSet JSON")->required();
  check->add_option("--dictionary", dictionary, "Uninformative-value dictionary")->capture_default_str();
  check->callback([&] { status = expsum::CmdCheck(check_meta, dictionary, std::cout, std::cerr); });

  // retrieve
  std::string retrieve_meta, retrieve_kb;
  expsum::RetrievalConfig rcfg;
  auto* retrieve = app.add_subcommand("retrieve", "Run cascaded retrieval for one metadata set");
  retrieve->add_option("--metadata", retrieve_meta, "MetadataSet JSON")->required();
  retrieve->add_option("--kb", retrieve_kb, "Knowledge base JSON")->required();
  retrieve->add_option("--path-threshold", rcfg.path_overlap_threshold, "Stage-1 path overlap")->capture_default_str();
  retrieve->add_option("--top-n", rcfg.top_n, "Stage-2 entries kept")->capture_default_str();
  retrieve->add_option("--token-threshold", rcfg.token_overlap_threshold, "Stage-3 token overlap")->capture_default_str();
  retrieve->callback([&] {
    status = expsum::CmdRetrieve(retrieve_meta, retrieve_kb, rcfg, std::cout, std::cerr);
  });

  // summarize
  expsum::SummarizeOptions sum_opts;
  std::string sum_out = "-";
  auto* summarize = app.add_subcommand("summarize", "Summarize every record of a corpus");
  summarize->add_option("--corpus", sum_opts.corpus, "Corpus JSON lines")->required();
  summarize->add_option("--config", sum_opts.config, "Pipeline config JSON")->required();
  summarize->add_option("--out", sum_out, "Output JSON lines ('-' for stdout)")->capture_default_str();
  OptionalFlag(summarize, "--kb", sum_opts.overrides.kb_path, "Knowledge base JSON");
  OptionalFlag(summarize, "--backend", sum_opts.overrides.backend, "mock or http");
  OptionalFlag(summarize, "--mock-script", sum_opts.overrides.mock_script, "Mock script JSON");
  OptionalFlag(summarize, "--api-base", sum_opts.overrides.api_base, "Chat-completions base URL");
  OptionalFlag(summarize, "--model", sum_opts.overrides.model, "Model name");
  OptionalFlag(summarize, "--api-key", sum_opts.overrides.api_key, "API key");
  OptionalFlag(summarize, "--workers", sum_opts.overrides.workers, "Worker threads");
  summarize->callback([&] {
    sum_opts.out = sum_out;
    status = expsum::CmdSummarize(sum_opts, expsum::ProcessEnv(), std::cout, std::cerr);
  });

  // evaluate
  expsum::EvaluateOptions eval_opts;
  std::string eval_csv;
  auto* evaluate = app.add_subcommand("evaluate", "Score generated summaries against references");
  evaluate->add_option("--generated", eval_opts.generated, "Generated JSON lines")->required();
  evaluate->add_option("--references", eval_opts.references, "Reference JSON lines")->required();
  evaluate->add_option("--report", eval_opts.report, "Report JSON to write")->required();
  evaluate->add_option("--csv", eval_csv, "Also write per-item CSV");
  evaluate->callback([&] {
    if (!eval_csv.empty()) eval_opts.csv = eval_csv;
    status = expsum::CmdEvaluate(eval_opts, std::cout, std::cerr);
  });

  CLI11_PARSE(app, argc, argv);
  return status;
}
