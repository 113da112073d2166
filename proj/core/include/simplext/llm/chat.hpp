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

#ifndef SIMPLEXT_LLM_CHAT_HPP_
#define SIMPLEXT_LLM_CHAT_HPP_

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simplext/error.hpp"

namespace simplext::llm {

inline constexpr std::string_view kDefaultModel = "llama-3.3-70b-versatile";

enum class Role { kSystem, kUser, kAssistant };

std::string_view to_string(Role role);
Role parse_role(std::string_view text);

struct Message {
  Role role = Role::kUser;
  std::string content;

  bool operator==(const Message&) const = default;
};

struct ChatRequest {
  std::string model{kDefaultModel};
  std::vector<Message> messages;
  double temperature = 0.0;
  int max_tokens = 1024;

  // Body of an OpenAI-style chat-completions call.
  nlohmann::json to_json() const;
  static ChatRequest from_json(const nlohmann::json& j);

  // SHA-256 over the canonical (sorted-key) serialization of every field.
  std::string request_hash() const;

  // Message contents joined by blank lines, used for prompt matching.
  std::string prompt_text() const;

  // Throws kConfigInvalid when messages are empty, temperature is negative
  // or max_tokens is not positive.
  void validate() const;

  bool operator==(const ChatRequest&) const = default;
};

// Single-user-message request.
ChatRequest make_request(std::string prompt, std::string model = std::string(kDefaultModel),
                         double temperature = 0.0, int max_tokens = 1024);

enum class FinishReason { kStop, kLength, kError };

std::string_view to_string(FinishReason reason);
FinishReason parse_finish_reason(std::string_view text);

struct Usage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;

  Usage& operator+=(const Usage& other) {
    prompt_tokens += other.prompt_tokens;
    completion_tokens += other.completion_tokens;
    return *this;
  }
  bool operator==(const Usage&) const = default;
};

struct ChatResponse {
  std::string text;
  FinishReason finish_reason = FinishReason::kStop;
  Usage usage;
  std::int64_t latency_ms = 0;

  nlohmann::json to_json() const;
  static ChatResponse from_json(const nlohmann::json& j);

  bool operator==(const ChatResponse&) const = default;
};

// Retryable failure (timeout, rate limit, 5xx). Carries the provider's
// retry-after hint when one was sent.
class TransientError : public Error {
 public:
  explicit TransientError(const std::string& message,
                          std::optional<std::chrono::milliseconds> retry_after = std::nullopt)
      : Error(ErrorCode::kTransient, message), retry_after_(retry_after) {}

  std::optional<std::chrono::milliseconds> retry_after() const noexcept { return retry_after_; }

 private:
  std::optional<std::chrono::milliseconds> retry_after_;
};

// A chat-completion provider. send() performs exactly one attempt and throws
// TransientError for retryable failures, Error(kAuthFailure) and
// Error(kMalformedProviderReply) otherwise. Implementations must be safe to
// call from several threads.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResponse send(const ChatRequest& request) = 0;
  virtual std::string name() const = 0;
  // True when send() never leaves the process.
  virtual bool offline() const { return false; }
};

}  // namespace simplext::llm

#endif  // SIMPLEXT_LLM_CHAT_HPP_
