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

#include "simplext/llm/gateway.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace simplext::llm {

std::chrono::milliseconds RetryPolicy::delay_before_retry(int retry, double unit_random) const {
  const double scale = std::ldexp(1.0, std::max(retry, 1) - 1);
  const double ms = static_cast<double>(base_delay.count()) * scale * (1.0 + jitter * unit_random);
  const double capped = std::min(ms, static_cast<double>(max_delay.count()));
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(capped)));
}

Gateway::Gateway(std::shared_ptr<ChatBackend> backend, RetryPolicy policy,
                 std::shared_ptr<ResponseCache> cache, std::size_t max_in_flight)
    : backend_(std::move(backend)),
      policy_(policy),
      cache_(std::move(cache)),
      max_in_flight_(std::max<std::size_t>(max_in_flight, 1)),
      sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }),
      rng_(policy.seed) {
  if (!backend_) throw Error(ErrorCode::kConfigInvalid, "gateway needs a backend");
  if (policy_.max_attempts < 1) throw Error(ErrorCode::kConfigInvalid, "max_attempts must be >= 1");
}

GatewayStats Gateway::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

void Gateway::audit(const nlohmann::json& record) {
  if (audit_) {
    std::lock_guard lock(mu_);
    audit_(record);
  }
}

ChatResponse Gateway::complete(const ChatRequest& request) {
  request.validate();
  const std::string hash = request.request_hash();

  if (cache_) {
    if (auto hit = cache_->lookup(hash)) {
      {
        std::lock_guard lock(mu_);
        ++stats_.cache_hits;
        stats_.usage += hit->usage;
      }
      audit({{"event", "cache_hit"}, {"hash", hash}});
      return *hit;
    }
  }

  {
    std::unique_lock lock(mu_);
    slot_free_.wait(lock, [&] { return in_flight_ < max_in_flight_; });
    ++in_flight_;
  }
  struct SlotRelease {
    Gateway* g;
    ~SlotRelease() {
      {
        std::lock_guard lock(g->mu_);
        --g->in_flight_;
      }
      g->slot_free_.notify_one();
    }
  } release{this};

  ChatResponse response;
  try {
    response = call_with_retries(request);
  } catch (const Error& e) {
    audit({{"event", "failure"}, {"hash", hash}, {"error", std::string(to_string(e.code()))},
           {"message", e.what()}});
    throw;
  }

  if (cache_) cache_->store(request, response);
  {
    std::lock_guard lock(mu_);
    stats_.usage += response.usage;
  }
  audit({{"event", "response"}, {"hash", hash}, {"request", request.to_json()},
         {"response", response.to_json()}});
  return response;
}

ChatResponse Gateway::call_with_retries(const ChatRequest& request) {
  std::string last_cause;
  for (int attempt = 1; attempt <= policy_.max_attempts; ++attempt) {
    try {
      {
        std::lock_guard lock(mu_);
        ++stats_.backend_calls;
      }
      ChatResponse response = backend_->send(request);
      if (response.finish_reason == FinishReason::kStop && response.text.empty()) {
        throw Error(ErrorCode::kMalformedProviderReply, "empty completion with finish_reason=stop");
      }
      return response;
    } catch (const TransientError& e) {
      last_cause = e.what();
      if (attempt == policy_.max_attempts) break;
      double u = 0;
      {
        std::lock_guard lock(mu_);
        u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
        ++stats_.retries;
      }
      auto delay = policy_.delay_before_retry(attempt, u);
      if (auto hint = e.retry_after(); hint && *hint > delay) delay = *hint;
      sleeper_(delay);
    }
  }
  throw Error(ErrorCode::kExhaustedRetries,
              "gave up after " + std::to_string(policy_.max_attempts) + " attempts: " + last_cause,
              last_cause);
}

}  // namespace simplext::llm
