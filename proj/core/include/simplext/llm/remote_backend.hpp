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

#ifndef SIMPLEXT_LLM_REMOTE_BACKEND_HPP_
#define SIMPLEXT_LLM_REMOTE_BACKEND_HPP_

#include <atomic>
#include <chrono>
#include <string>

#include "simplext/llm/chat.hpp"

namespace simplext::llm {

inline constexpr std::string_view kApiKeyEnv = "SIMPLEXT_API_KEY";
inline constexpr std::string_view kApiBaseEnv = "SIMPLEXT_API_BASE";
inline constexpr std::string_view kDefaultApiBase = "https://api.groq.com/openai/v1";

struct RemoteConfig {
  // Base of an OpenAI-compatible API; requests go to <base_url>/chat/completions.
  std::string base_url{kDefaultApiBase};
  std::string api_key;
  std::chrono::seconds timeout{120};

  // Reads SIMPLEXT_API_BASE (optional) and SIMPLEXT_API_KEY. Throws
  // kAuthFailure when no key is set.
  static RemoteConfig from_environment();
};

// OpenAI-style chat-completions client.
//
// HTTP 401/403 map to kAuthFailure, 408/409/429 and 5xx to TransientError
// (honouring Retry-After), connection failures to TransientError, and any
// other status or an unparseable body to kMalformedProviderReply.
class RemoteBackend : public ChatBackend {
 public:
  explicit RemoteBackend(RemoteConfig config);

  ChatResponse send(const ChatRequest& request) override;
  std::string name() const override { return "remote"; }

  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  RemoteConfig config_;
  std::atomic<std::size_t> calls_{0};
};

// Parses a chat-completions response body. Throws kMalformedProviderReply.
ChatResponse parse_completion_body(std::string_view body);

}  // namespace simplext::llm

#endif  // SIMPLEXT_LLM_REMOTE_BACKEND_HPP_
