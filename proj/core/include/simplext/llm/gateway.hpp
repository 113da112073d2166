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

#ifndef SIMPLEXT_LLM_GATEWAY_HPP_
#define SIMPLEXT_LLM_GATEWAY_HPP_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <random>

#include "simplext/llm/chat.hpp"
#include "simplext/llm/response_cache.hpp"

namespace simplext::llm {

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds base_delay{500};
  std::chrono::milliseconds max_delay{60'000};
  // Delay before retry k (k >= 1) is base * 2^(k-1) * (1 + jitter * u) with
  // u uniform in [0,1). jitter < 1 keeps the sequence strictly increasing
  // until max_delay caps it.
  double jitter = 0.25;
  std::uint64_t seed = 0x5eed;

  std::chrono::milliseconds delay_before_retry(int retry, double unit_random) const;
};

struct GatewayStats {
  std::size_t backend_calls = 0;
  std::size_t cache_hits = 0;
  std::size_t retries = 0;
  Usage usage;
};

// Retries, in-flight limiting and caching in front of a ChatBackend.
class Gateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;
  using AuditSink = std::function<void(const nlohmann::json&)>;

  explicit Gateway(std::shared_ptr<ChatBackend> backend, RetryPolicy policy = {},
                   std::shared_ptr<ResponseCache> cache = nullptr, std::size_t max_in_flight = 10);

  // Returns the cached response when present; otherwise calls the backend,
  // retrying transient failures with exponential backoff, and stores the
  // first successful response. Throws kExhaustedRetries (last cause in
  // detail()), kAuthFailure, kMalformedProviderReply, kUnmatchedPrompt.
  ChatResponse complete(const ChatRequest& request);

  // Replaces std::this_thread::sleep_for; tests record delays instead.
  void set_sleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }
  // Receives one structured record per request outcome.
  void set_audit_sink(AuditSink sink) { audit_ = std::move(sink); }

  GatewayStats stats() const;
  const ChatBackend& backend() const noexcept { return *backend_; }
  ResponseCache* cache() const noexcept { return cache_.get(); }

 private:
  ChatResponse call_with_retries(const ChatRequest& request);
  void audit(const nlohmann::json& record);

  std::shared_ptr<ChatBackend> backend_;
  RetryPolicy policy_;
  std::shared_ptr<ResponseCache> cache_;
  std::size_t max_in_flight_;
  Sleeper sleeper_;
  AuditSink audit_;

  mutable std::mutex mu_;
  std::condition_variable slot_free_;
  std::size_t in_flight_ = 0;
  std::mt19937_64 rng_;
  GatewayStats stats_;
};

}  // namespace simplext::llm

#endif  // SIMPLEXT_LLM_GATEWAY_HPP_
