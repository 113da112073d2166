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

#include "simplext/llm/mock_backend.hpp"

#include <fstream>
#include <sstream>

namespace simplext::llm {
namespace {

std::int64_t word_count(std::string_view s) {
  std::int64_t n = 0;
  bool in_word = false;
  for (unsigned char c : s) {
    const bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

MockFailure parse_failure(const std::string& s) {
  if (s == "transient") return MockFailure::kTransient;
  if (s == "auth") return MockFailure::kAuth;
  if (s == "malformed") return MockFailure::kMalformed;
  throw Error(ErrorCode::kConfigInvalid, "unknown mock failure kind '" + s + "'");
}

}  // namespace

MockBackend::MockBackend(std::vector<MockRule> script)
    : script_(std::move(script)), hits_(script_.size(), 0) {
  if (script_.empty()) {
    throw Error(ErrorCode::kConfigInvalid, "mock backend script is empty");
  }
}

std::vector<MockRule> MockBackend::parse_script(const nlohmann::json& j) {
  const nlohmann::json& rules = j.is_array() ? j : j.at("rules");
  std::vector<MockRule> script;
  try {
    for (const auto& r : rules) {
      MockRule rule;
      rule.match = r.at("match").get<std::string>();
      rule.response = r.value("response", "");
      if (r.contains("echo_after")) rule.echo_after = r.at("echo_after").get<std::string>();
      rule.finish_reason = parse_finish_reason(r.value("finish_reason", "stop"));
      rule.fail_first = r.value("fail_first", 0);
      rule.failure = parse_failure(r.value("failure", "transient"));
      if (r.contains("retry_after_ms")) rule.retry_after_ms = r.at("retry_after_ms").get<int>();
      script.push_back(std::move(rule));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigInvalid, std::string("bad mock script: ") + e.what());
  }
  return script;
}

std::shared_ptr<MockBackend> MockBackend::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfigInvalid, "cannot open mock script " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigInvalid, "mock script " + path.string() + ": " + e.what());
  }
  return std::make_shared<MockBackend>(parse_script(j));
}

ChatResponse MockBackend::send(const ChatRequest& request) {
  ++calls_;
  const std::string prompt = request.prompt_text();

  std::size_t index = script_.size();
  for (std::size_t i = 0; i < script_.size(); ++i) {
    if (prompt.find(script_[i].match) != std::string::npos) {
      index = i;
      break;
    }
  }
  if (index == script_.size()) {
    throw Error(ErrorCode::kUnmatchedPrompt, "no mock rule matches the prompt", prompt);
  }
  const MockRule& rule = script_[index];

  int hit = 0;
  {
    std::lock_guard lock(mu_);
    hit = hits_[index]++;
  }
  if (hit < rule.fail_first) {
    switch (rule.failure) {
      case MockFailure::kTransient: {
        std::optional<std::chrono::milliseconds> hint;
        if (rule.retry_after_ms) hint = std::chrono::milliseconds(*rule.retry_after_ms);
        throw TransientError("scripted transient failure", hint);
      }
      case MockFailure::kAuth:
        throw Error(ErrorCode::kAuthFailure, "scripted authentication failure");
      case MockFailure::kMalformed:
        throw Error(ErrorCode::kMalformedProviderReply, "scripted malformed reply");
    }
  }

  ChatResponse response;
  if (rule.echo_after) {
    const std::size_t at = prompt.rfind(*rule.echo_after);
    if (at != std::string::npos) {
      const std::size_t begin = at + rule.echo_after->size();
      const std::size_t end = prompt.find('\n', begin);
      response.text = prompt.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
    }
  } else {
    response.text = rule.response;
  }
  response.finish_reason = rule.finish_reason;
  response.usage.prompt_tokens = word_count(prompt);
  response.usage.completion_tokens = word_count(response.text);
  return response;
}

}  // namespace simplext::llm
