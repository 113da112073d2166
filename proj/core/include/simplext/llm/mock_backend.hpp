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

#ifndef SIMPLEXT_LLM_MOCK_BACKEND_HPP_
#define SIMPLEXT_LLM_MOCK_BACKEND_HPP_

#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "simplext/llm/chat.hpp"

namespace simplext::llm {

enum class MockFailure { kTransient, kAuth, kMalformed };

// One scripted behaviour. The first rule whose `match` occurs in the prompt
// answers it.
struct MockRule {
  std::string match;
  // Canned reply. Ignored when `echo_after` is set.
  std::string response;
  // Reply with the rest of the line that follows the last occurrence of this
  // marker in the prompt (e.g. "\nSentence: " echoes the target sentence).
  std::optional<std::string> echo_after;
  FinishReason finish_reason = FinishReason::kStop;
  // The first `fail_first` hits on this rule fail with `failure`.
  int fail_first = 0;
  MockFailure failure = MockFailure::kTransient;
  std::optional<int> retry_after_ms;
};

// Deterministic offline backend driven by an ordered rule script.
//
// Script file (JSON): {"rules": [{"match": "...", "response": "..."}, ...]}
// or a bare array of rules. Optional rule keys: "echo_after",
// "finish_reason", "fail_first", "failure" ("transient" | "auth" |
// "malformed"), "retry_after_ms".
class MockBackend : public ChatBackend {
 public:
  // Throws kConfigInvalid on an empty script.
  explicit MockBackend(std::vector<MockRule> script);

  static std::shared_ptr<MockBackend> from_file(const std::filesystem::path& path);
  static std::vector<MockRule> parse_script(const nlohmann::json& j);

  // Throws Error(kUnmatchedPrompt) with the prompt as detail when no rule
  // matches.
  ChatResponse send(const ChatRequest& request) override;
  std::string name() const override { return "mock"; }
  bool offline() const override { return true; }

  std::size_t calls() const noexcept { return calls_.load(); }

 private:
  std::vector<MockRule> script_;
  std::vector<int> hits_;
  std::mutex mu_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace simplext::llm

#endif  // SIMPLEXT_LLM_MOCK_BACKEND_HPP_
