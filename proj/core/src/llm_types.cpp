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

#include <algorithm>
#include <cctype>
#include <sstream>

#include "digest.hpp"
#include "simplext/llm/chat.hpp"

namespace simplext::llm {

using nlohmann::json;

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

Role parse_role(std::string_view text) {
  if (text == "system") return Role::kSystem;
  if (text == "user") return Role::kUser;
  if (text == "assistant") return Role::kAssistant;
  throw Error(ErrorCode::kMalformedProviderReply, "unknown role '" + std::string(text) + "'");
}

std::string_view to_string(FinishReason reason) {
  switch (reason) {
    case FinishReason::kStop: return "stop";
    case FinishReason::kLength: return "length";
    case FinishReason::kError: return "error";
  }
  return "error";
}

FinishReason parse_finish_reason(std::string_view text) {
  if (text == "stop") return FinishReason::kStop;
  if (text == "length") return FinishReason::kLength;
  return FinishReason::kError;
}

json ChatRequest::to_json() const {
  json msgs = json::array();
  for (const auto& m : messages) {
    msgs.push_back({{"role", std::string(llm::to_string(m.role))}, {"content", m.content}});
  }
  return {{"model", model},
          {"messages", std::move(msgs)},
          {"temperature", temperature},
          {"max_tokens", max_tokens}};
}

ChatRequest ChatRequest::from_json(const json& j) {
  ChatRequest r;
  r.model = j.at("model").get<std::string>();
  r.messages.clear();
  for (const auto& m : j.at("messages")) {
    r.messages.push_back({parse_role(m.at("role").get<std::string>()), m.at("content").get<std::string>()});
  }
  r.temperature = j.at("temperature").get<double>();
  r.max_tokens = j.at("max_tokens").get<int>();
  return r;
}

std::string ChatRequest::request_hash() const { return detail::sha256_hex(to_json().dump()); }

std::string ChatRequest::prompt_text() const {
  std::string out;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (i) out += "\n\n";
    out += messages[i].content;
  }
  return out;
}

void ChatRequest::validate() const {
  if (messages.empty()) throw Error(ErrorCode::kConfigInvalid, "chat request has no messages");
  if (!(temperature >= 0)) throw Error(ErrorCode::kConfigInvalid, "temperature must be >= 0");
  if (max_tokens <= 0) throw Error(ErrorCode::kConfigInvalid, "max_tokens must be positive");
}

ChatRequest make_request(std::string prompt, std::string model, double temperature, int max_tokens) {
  ChatRequest r;
  r.model = std::move(model);
  r.messages.push_back({Role::kUser, std::move(prompt)});
  r.temperature = temperature;
  r.max_tokens = max_tokens;
  return r;
}

json ChatResponse::to_json() const {
  return {{"text", text},
          {"finish_reason", std::string(llm::to_string(finish_reason))},
          {"usage",
           {{"prompt_tokens", usage.prompt_tokens}, {"completion_tokens", usage.completion_tokens}}},
          {"latency_ms", latency_ms}};
}

ChatResponse ChatResponse::from_json(const json& j) {
  ChatResponse r;
  r.text = j.at("text").get<std::string>();
  r.finish_reason = parse_finish_reason(j.at("finish_reason").get<std::string>());
  r.usage.prompt_tokens = j.at("usage").at("prompt_tokens").get<std::int64_t>();
  r.usage.completion_tokens = j.at("usage").at("completion_tokens").get<std::int64_t>();
  r.latency_ms = j.at("latency_ms").get<std::int64_t>();
  return r;
}

}  // namespace simplext::llm
