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

// cpp-httplib is confined to this file; it is heavy to compile.

#include "httplib.h"

#include "expsum/error.h"
#include "expsum/llm_client.h"

namespace expsum {

namespace {

class HttplibTransport : public HttpTransport {
 public:
  HttpReply Post(const std::string& url, const HttpHeaders& headers, const std::string& body,
                 std::chrono::seconds timeout) override {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
      throw ClientError(ClientFailureCause::kNetwork, "URL lacks a scheme: " + url);
    }
    size_t path_start = url.find('/', scheme_end + 3);
    std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers hdrs;
    std::string content_type = "application/json";
    for (const auto& [k, v] : headers) {
      if (k == "Content-Type") {
        content_type = v;
      } else {
        hdrs.emplace(k, v);
      }
    }
    auto result = client.Post(path, hdrs, body, content_type);
    if (!result) {
      throw ClientError(ClientFailureCause::kNetwork,
                        "request to " + url + " failed: " + httplib::to_string(result.error()));
    }
    return HttpReply{result->status, result->body};
  }
};

}  // namespace

std::shared_ptr<HttpTransport> MakeHttplibTransport() {
  return std::make_shared<HttplibTransport>();
}

}  // namespace expsum
