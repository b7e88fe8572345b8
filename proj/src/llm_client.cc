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

#include "expsum/llm_client.h"

#include <algorithm>
#include <thread>

#include "expsum/error.h"
#include "expsum/text.h"

namespace expsum {

using nlohmann::json;

void LlmRequest::Validate() const {
  if (Trim(system_prompt).empty() || Trim(user_prompt).empty()) {
    throw Error(ErrorKind::kInvalidArgument, "LLM request prompts must be non-empty");
  }
  if (!(temperature >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "LLM request temperature must be >= 0");
  }
}

MockScript MockScriptFromJson(const json& j) {
  MockScript script;
  const json* rules = &j;
  if (j.is_object()) {
    auto it = j.find("rules");
    if (it == j.end()) throw Error(ErrorKind::kInvalidConfig, "mock script object lacks 'rules'");
    rules = &*it;
    if (auto d = j.find("default"); d != j.end() && !d->is_null()) {
      if (!d->is_string()) throw Error(ErrorKind::kInvalidConfig, "mock 'default' must be a string");
      script.default_response = d->get<std::string>();
    }
  }
  if (!rules->is_array()) throw Error(ErrorKind::kInvalidConfig, "mock rules must be a list");
  for (const auto& r : *rules) {
    if (!r.is_object() || !r.contains("match") || !r.contains("response") ||
        !r["match"].is_string() || !r["response"].is_string()) {
      throw Error(ErrorKind::kInvalidConfig, "mock rule needs string 'match' and 'response'");
    }
    MockRule rule;
    rule.match = r["match"].get<std::string>();
    rule.response = r["response"].get<std::string>();
    rule.is_regex = r.value("regex", false);
    script.rules.push_back(std::move(rule));
  }
  return script;
}

MockScript LoadMockScript(const std::filesystem::path& path) {
  try {
    return MockScriptFromJson(json::parse(ReadFile(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidConfig,
                "malformed mock script " + path.string() + ": " + e.what());
  }
}

MockClient::MockClient(MockScript script) : script_(std::move(script)) {
  for (const auto& rule : script_.rules) {
    if (!rule.is_regex) {
      patterns_.emplace_back(std::nullopt);
      continue;
    }
    try {
      patterns_.emplace_back(std::regex(rule.match, std::regex::ECMAScript));
    } catch (const std::regex_error& e) {
      throw Error(ErrorKind::kInvalidConfig, "bad mock rule regex '" + rule.match + "': " + e.what());
    }
  }
}

LlmResponse MockClient::Complete(const LlmRequest& request) const {
  request.Validate();
  for (size_t i = 0; i < script_.rules.size(); ++i) {
    const MockRule& rule = script_.rules[i];
    bool hit = patterns_[i] ? std::regex_search(request.user_prompt, *patterns_[i])
                            : request.user_prompt.find(rule.match) != std::string::npos;
    if (hit) return LlmResponse{rule.response, "mock", std::chrono::milliseconds(0)};
  }
  if (script_.default_response) {
    return LlmResponse{*script_.default_response, "mock", std::chrono::milliseconds(0)};
  }
  std::string head = request.user_prompt.substr(0, 80);
  std::replace(head.begin(), head.end(), '\n', ' ');
  throw ClientError(ClientFailureCause::kNoMockRule, "no mock rule matched prompt: " + head);
}

nlohmann::ordered_json BuildChatPayload(const std::string& model, const LlmRequest& request) {
  nlohmann::ordered_json payload;
  payload["model"] = model;
  payload["messages"] = nlohmann::ordered_json::array(
      {{{"role", "system"}, {"content", request.system_prompt}},
       {{"role", "user"}, {"content", request.user_prompt}}});
  payload["temperature"] = request.temperature;
  payload["max_tokens"] = request.max_tokens;
  return payload;
}

std::string ParseChatCompletion(const std::string& body) {
  try {
    json j = json::parse(body);
    const json& content = j.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) {
      throw ClientError(ClientFailureCause::kMalformedPayload, "message content is not a string");
    }
    return content.get<std::string>();
  } catch (const json::exception& e) {
    throw ClientError(ClientFailureCause::kMalformedPayload,
                      std::string("malformed chat completion payload: ") + e.what());
  }
}

HttpClient::HttpClient(HttpSettings settings, std::shared_ptr<HttpTransport> transport)
    : settings_(std::move(settings)), transport_(std::move(transport)) {
  if (settings_.api_base.empty()) {
    throw Error(ErrorKind::kInvalidConfig, "HTTP backend needs an API base URL");
  }
  if (settings_.max_in_flight < 1 || settings_.max_in_flight > 1024 || settings_.retries < 0) {
    throw Error(ErrorKind::kInvalidConfig, "HTTP backend limits out of range");
  }
  while (!settings_.api_base.empty() && settings_.api_base.back() == '/') {
    settings_.api_base.pop_back();
  }
  in_flight_ = std::make_unique<std::counting_semaphore<1024>>(settings_.max_in_flight);
}

LlmResponse HttpClient::Complete(const LlmRequest& request) const {
  request.Validate();
  const std::string url = settings_.api_base + "/chat/completions";
  const std::string body = BuildChatPayload(settings_.model, request).dump();
  HttpHeaders headers = {{"Content-Type", "application/json"}};
  if (!settings_.api_key.empty()) headers.emplace_back("Authorization", "Bearer " + settings_.api_key);

  auto start = std::chrono::steady_clock::now();
  auto backoff = settings_.backoff;
  for (int attempt = 0;; ++attempt) {
    HttpReply reply;
    try {
      in_flight_->acquire();
      struct Release {
        std::counting_semaphore<1024>* s;
        ~Release() { s->release(); }
      } release{in_flight_.get()};
      reply = transport_->Post(url, headers, body, settings_.timeout);
    } catch (const ClientError& e) {
      if (e.cause() != ClientFailureCause::kNetwork || attempt >= settings_.retries) throw;
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
      continue;
    }
    if (reply.status < 200 || reply.status >= 300) {
      throw ClientError(ClientFailureCause::kHttpStatus,
                        "HTTP " + std::to_string(reply.status) + " from " + url + ": " +
                            reply.body.substr(0, 200));
    }
    auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    return LlmResponse{ParseChatCompletion(reply.body), "http:" + settings_.model, latency};
  }
}

}  // namespace expsum
