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

// Chat-completion clients. Two backends ship: a scripted mock whose output
// is a pure function of the request, and an HTTP backend speaking the
// common chat-completions JSON shape.

#ifndef EXPSUM_LLM_CLIENT_H_
#define EXPSUM_LLM_CLIENT_H_

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <regex>
#include <semaphore>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace expsum {

struct LlmRequest {
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 0.0;
  int max_tokens = 1024;

  // Throws Error(kInvalidArgument) for empty prompts or negative
  // temperature.
  void Validate() const;
};

struct LlmResponse {
  std::string text;
  std::string backend_id;
  std::chrono::milliseconds latency{0};
};

class LlmClient {
 public:
  virtual ~LlmClient() = default;

  // Thread-safe. Throws ClientError.
  virtual LlmResponse Complete(const LlmRequest& request) const = 0;
};

// ---------------------------------------------------------------------------
// Scripted mock.

struct MockRule {
  std::string match;  // substring of the user prompt, or a regex when is_regex
  bool is_regex = false;
  std::string response;
};

struct MockScript {
  std::vector<MockRule> rules;
  std::optional<std::string> default_response;
};

// Accepts either a JSON list of {match, response[, regex]} objects or an
// object {"rules": [...], "default": "..."}. Throws Error(kInvalidConfig).
MockScript MockScriptFromJson(const nlohmann::json& j);
MockScript LoadMockScript(const std::filesystem::path& path);

class MockClient : public LlmClient {
 public:
  explicit MockClient(MockScript script);

  // First matching rule wins; then the default; otherwise
  // ClientError(kNoMockRule).
  LlmResponse Complete(const LlmRequest& request) const override;

 private:
  MockScript script_;
  std::vector<std::optional<std::regex>> patterns_;
};

// ---------------------------------------------------------------------------
// HTTP backend.

struct HttpReply {
  int status = 0;
  std::string body;
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

// Moves bytes. Throws ClientError(kNetwork) when no reply was received.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpReply Post(const std::string& url, const HttpHeaders& headers,
                         const std::string& body, std::chrono::seconds timeout) = 0;
};

std::shared_ptr<HttpTransport> MakeHttplibTransport();

struct HttpSettings {
  std::string api_base;  // e.g. "http://localhost:8000/v1"
  std::string model;
  std::string api_key;
  std::chrono::seconds timeout{120};
  int retries = 2;  // extra attempts after a network failure
  std::chrono::milliseconds backoff{500};  // doubled per retry
  int max_in_flight = 4;
};

// {"model", "messages": [{"role","content"}...], "temperature", "max_tokens"}
nlohmann::ordered_json BuildChatPayload(const std::string& model, const LlmRequest& request);

// Text of choices[0].message.content. Throws ClientError(kMalformedPayload).
std::string ParseChatCompletion(const std::string& body);

class HttpClient : public LlmClient {
 public:
  explicit HttpClient(HttpSettings settings,
                      std::shared_ptr<HttpTransport> transport = MakeHttplibTransport());

  LlmResponse Complete(const LlmRequest& request) const override;

 private:
  HttpSettings settings_;
  std::shared_ptr<HttpTransport> transport_;
  std::unique_ptr<std::counting_semaphore<1024>> in_flight_;
};

}  // namespace expsum

#endif  // EXPSUM_LLM_CLIENT_H_
