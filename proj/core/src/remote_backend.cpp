// Copyright 2026 The simplext Authors.
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

#include "simplext/llm/remote_backend.hpp"

#include <httplib.h>

#include <charconv>
#include <cstdlib>

#include "url.hpp"

namespace simplext::llm {
namespace {

std::optional<std::chrono::milliseconds> retry_after(const httplib::Response& res) {
  if (!res.has_header("Retry-After")) return std::nullopt;
  const std::string value = res.get_header_value("Retry-After");
  double seconds = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seconds);
  if (ec != std::errc{} || seconds < 0) return std::nullopt;
  return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0));
}

}  // namespace

RemoteConfig RemoteConfig::from_environment() {
  RemoteConfig config;
  if (const char* base = std::getenv(std::string(kApiBaseEnv).c_str()); base && *base) {
    config.base_url = base;
  }
  const char* key = std::getenv(std::string(kApiKeyEnv).c_str());
  if (!key || !*key) {
    throw Error(ErrorCode::kAuthFailure,
                "set " + std::string(kApiKeyEnv) + " to use the remote backend");
  }
  config.api_key = key;
  return config;
}

RemoteBackend::RemoteBackend(RemoteConfig config) : config_(std::move(config)) {
  (void)detail::parse_url(config_.base_url);
}

ChatResponse parse_completion_body(std::string_view body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedProviderReply, std::string("reply is not JSON: ") + e.what(),
                std::string(body));
  }
  try {
    const auto& choice = j.at("choices").at(0);
    ChatResponse r;
    const auto& content = choice.at("message").at("content");
    r.text = content.is_null() ? std::string() : content.get<std::string>();
    const auto& reason = choice.value("finish_reason", nlohmann::json("stop"));
    r.finish_reason = reason.is_string() ? parse_finish_reason(reason.get<std::string>())
                                         : FinishReason::kStop;
    if (j.contains("usage") && j.at("usage").is_object()) {
      r.usage.prompt_tokens = j.at("usage").value("prompt_tokens", std::int64_t{0});
      r.usage.completion_tokens = j.at("usage").value("completion_tokens", std::int64_t{0});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedProviderReply,
                std::string("unexpected reply shape: ") + e.what(), std::string(body));
  }
}

ChatResponse RemoteBackend::send(const ChatRequest& request) {
  ++calls_;
  const detail::Url url = detail::parse_url(config_.base_url);
  httplib::Client client(url.origin());
  const auto timeout = static_cast<time_t>(config_.timeout.count());
  client.set_connection_timeout(timeout, 0);
  client.set_read_timeout(timeout, 0);
  client.set_write_timeout(timeout, 0);

  const httplib::Headers headers = {{"Authorization", "Bearer " + config_.api_key}};
  const auto started = std::chrono::steady_clock::now();
  auto res = client.Post(url.path + "/chat/completions", headers, request.to_json().dump(),
                         "application/json");
  const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);

  if (!res) {
    throw TransientError("request failed: " + httplib::to_string(res.error()));
  }
  const int status = res->status;
  if (status == 401 || status == 403) {
    throw Error(ErrorCode::kAuthFailure, "provider rejected credentials (HTTP " +
                                             std::to_string(status) + ")");
  }
  if (status == 408 || status == 409 || status == 429 || status >= 500) {
    throw TransientError("provider returned HTTP " + std::to_string(status), retry_after(*res));
  }
  if (status != 200) {
    throw Error(ErrorCode::kMalformedProviderReply,
                "provider returned HTTP " + std::to_string(status), res->body);
  }
  ChatResponse response = parse_completion_body(res->body);
  response.latency_ms = latency.count();
  return response;
}

}  // namespace simplext::llm
