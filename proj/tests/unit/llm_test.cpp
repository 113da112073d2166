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

#include <doctest.h>
#include <httplib.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include "simplext/error.hpp"
#include "simplext/llm/chat.hpp"
#include "simplext/llm/gateway.hpp"
#include "simplext/llm/mock_backend.hpp"
#include "simplext/llm/remote_backend.hpp"
#include "simplext/llm/response_cache.hpp"

using namespace simplext;
using namespace simplext::llm;
namespace fs = std::filesystem;
using namespace std::chrono_literals;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("simplext_llm_test_" + name);
  fs::remove_all(p);
  return p;
}

// Fails `failures` times with `kind`, then answers "ok".
class ScriptedBackend : public ChatBackend {
 public:
  enum class Kind { kTransient, kAuth, kEmpty };
  ScriptedBackend(int failures, Kind kind, std::optional<std::chrono::milliseconds> hint = {})
      : failures_(failures), kind_(kind), hint_(hint) {}

  ChatResponse send(const ChatRequest&) override {
    const int n = calls++;
    if (n < failures_) {
      switch (kind_) {
        case Kind::kTransient: throw TransientError("busy", hint_);
        case Kind::kAuth: throw Error(ErrorCode::kAuthFailure, "denied");
        case Kind::kEmpty: return ChatResponse{};
      }
    }
    ChatResponse r;
    r.text = "ok";
    r.usage = {3, 1};
    return r;
  }
  std::string name() const override { return "scripted"; }

  std::atomic<int> calls{0};

 private:
  int failures_;
  Kind kind_;
  std::optional<std::chrono::milliseconds> hint_;
};

class SlowBackend : public ChatBackend {
 public:
  ChatResponse send(const ChatRequest&) override {
    const int now = ++active;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(15ms);
    --active;
    return ChatResponse{"ok", FinishReason::kStop, {}, 0};
  }
  std::string name() const override { return "slow"; }
  std::atomic<int> active{0};
  std::atomic<int> peak{0};
};

}  // namespace

TEST_CASE("request hash is stable and sensitive to every field") {
  const auto a = make_request("hello");
  CHECK(a.request_hash() == make_request("hello").request_hash());
  CHECK(a.request_hash().size() == 64);
  CHECK(a.request_hash() != make_request("hello!").request_hash());
  CHECK(a.request_hash() != make_request("hello", "other-model").request_hash());
  CHECK(a.request_hash() != make_request("hello", std::string(kDefaultModel), 0.5).request_hash());
  CHECK(a.request_hash() != make_request("hello", std::string(kDefaultModel), 0.0, 10).request_hash());
  CHECK(ChatRequest::from_json(a.to_json()) == a);
}

TEST_CASE("request validation") {
  ChatRequest r;
  CHECK_THROWS_AS(r.validate(), Error);
  r = make_request("x");
  r.temperature = -1;
  CHECK_THROWS_AS(r.validate(), Error);
  r = make_request("x");
  r.max_tokens = 0;
  CHECK_THROWS_AS(r.validate(), Error);
}

TEST_CASE("response JSON round trip and finish reasons") {
  ChatResponse r{"text", FinishReason::kLength, {10, 2}, 5};
  CHECK(ChatResponse::from_json(r.to_json()) == r);
  CHECK(parse_finish_reason("stop") == FinishReason::kStop);
  CHECK(parse_finish_reason("length") == FinishReason::kLength);
}

TEST_CASE("retry delays grow exponentially and are capped") {
  RetryPolicy p;
  p.base_delay = 100ms;
  p.max_delay = 1000ms;
  p.jitter = 0.25;
  CHECK(p.delay_before_retry(1, 0.0) == 100ms);
  CHECK(p.delay_before_retry(2, 0.0) == 200ms);
  CHECK(p.delay_before_retry(3, 0.5) == 450ms);
  CHECK(p.delay_before_retry(10, 0.9) == 1000ms);
  for (int k = 1; k < 4; ++k) CHECK(p.delay_before_retry(k, 0.99) < p.delay_before_retry(k + 1, 0.0));
}

TEST_CASE("gateway retries transient failures with increasing delays") {
  auto backend = std::make_shared<ScriptedBackend>(3, ScriptedBackend::Kind::kTransient);
  Gateway gw(backend);
  std::vector<std::chrono::milliseconds> delays;
  gw.set_sleeper([&](auto d) { delays.push_back(d); });
  CHECK(gw.complete(make_request("p")).text == "ok");
  CHECK(backend->calls == 4);
  REQUIRE(delays.size() == 3);
  CHECK(delays[0] < delays[1]);
  CHECK(delays[1] < delays[2]);
  CHECK(gw.stats().retries == 3);
  CHECK(gw.stats().usage == Usage{3, 1});
}

TEST_CASE("gateway honours retry-after hints") {
  auto backend = std::make_shared<ScriptedBackend>(1, ScriptedBackend::Kind::kTransient, 5000ms);
  Gateway gw(backend);
  std::vector<std::chrono::milliseconds> delays;
  gw.set_sleeper([&](auto d) { delays.push_back(d); });
  gw.complete(make_request("p"));
  REQUIRE(delays.size() == 1);
  CHECK(delays[0] == 5000ms);
}

TEST_CASE("gateway gives up after max attempts") {
  auto backend = std::make_shared<ScriptedBackend>(100, ScriptedBackend::Kind::kTransient);
  RetryPolicy p;
  p.max_attempts = 3;
  Gateway gw(backend, p);
  gw.set_sleeper([](auto) {});
  try {
    gw.complete(make_request("p"));
    FAIL("expected ExhaustedRetries");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kExhaustedRetries);
    CHECK(e.detail().find("busy") != std::string::npos);
  }
  CHECK(backend->calls == 3);
}

TEST_CASE("gateway does not retry auth failures or empty replies") {
  auto auth = std::make_shared<ScriptedBackend>(1, ScriptedBackend::Kind::kAuth);
  Gateway gw(auth);
  gw.set_sleeper([](auto) {});
  CHECK_THROWS_AS(gw.complete(make_request("p")), Error);
  CHECK(auth->calls == 1);

  auto empty = std::make_shared<ScriptedBackend>(1, ScriptedBackend::Kind::kEmpty);
  Gateway gw2(empty);
  try {
    gw2.complete(make_request("p"));
    FAIL("expected MalformedProviderReply");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedProviderReply);
  }
}

TEST_CASE("gateway caches responses and consults the cache first") {
  const auto dir = fresh_dir("gw_cache");
  auto cache = std::make_shared<ResponseCache>(dir);
  auto backend = std::make_shared<ScriptedBackend>(0, ScriptedBackend::Kind::kTransient);
  Gateway gw(backend, {}, cache);
  std::vector<std::string> events;
  gw.set_audit_sink([&](const nlohmann::json& j) { events.push_back(j.at("event")); });
  gw.complete(make_request("p"));
  gw.complete(make_request("p"));
  CHECK(backend->calls == 1);
  CHECK(gw.stats().cache_hits == 1);
  CHECK(events == std::vector<std::string>{"response", "cache_hit"});

  // A fresh gateway over the same directory replays without the backend.
  auto unused = std::make_shared<ScriptedBackend>(100, ScriptedBackend::Kind::kAuth);
  Gateway replay(unused, {}, std::make_shared<ResponseCache>(dir));
  CHECK(replay.complete(make_request("p")).text == "ok");
  CHECK(unused->calls == 0);
  fs::remove_all(dir);
}

TEST_CASE("gateway bounds requests in flight") {
  auto backend = std::make_shared<SlowBackend>();
  Gateway gw(backend, {}, nullptr, 3);
  std::vector<std::jthread> threads;
  for (int i = 0; i < 24; ++i) {
    threads.emplace_back([&, i] { gw.complete(make_request("p" + std::to_string(i))); });
  }
  threads.clear();
  CHECK(backend->peak <= 3);
  CHECK(backend->peak >= 2);
  CHECK(gw.stats().backend_calls == 24);
}

TEST_CASE("response cache layout, corruption and maintenance") {
  const auto dir = fresh_dir("cache");
  ResponseCache cache(dir);
  const auto req = make_request("prompt");
  const auto hash = req.request_hash();
  CHECK_FALSE(cache.lookup(hash).has_value());
  cache.store(req, ChatResponse{"answer", FinishReason::kStop, {1, 1}, 0});
  CHECK(cache.path_for(hash) == dir / hash.substr(0, 2) / (hash + ".json"));
  CHECK(fs::exists(cache.path_for(hash)));
  CHECK(cache.lookup(hash)->text == "answer");

  auto s = cache.inspect();
  CHECK(s.entries == 1);
  CHECK(s.bytes > 0);
  CHECK(s.corrupt.empty());

  {
    std::ofstream(cache.path_for(hash), std::ios::trunc) << "{truncated";
  }
  try {
    cache.lookup(hash);
    FAIL("expected CacheCorrupt");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCacheCorrupt);
    CHECK(std::string(e.what()).find(cache.path_for(hash).string()) != std::string::npos);
  }
  CHECK(cache.inspect().corrupt.size() == 1);
  CHECK(cache.clear() == 1);
  CHECK(cache.inspect().entries == 0);
  fs::remove_all(dir);
}

TEST_CASE("mock backend rules") {
  MockBackend mock(MockBackend::parse_script(nlohmann::json::parse(R"([
    {"match": "Sentence:", "echo_after": "\nSentence: "},
    {"match": "hello", "response": "world", "fail_first": 1, "failure": "transient"}
  ])")));
  CHECK(mock.offline());
  CHECK(mock.send(make_request("Doc\nSentence: first\nSentence: last one\nNext")).text == "last one");
  CHECK_THROWS_AS(mock.send(make_request("hello")), TransientError);
  CHECK(mock.send(make_request("hello")).text == "world");
  try {
    mock.send(make_request("nothing matches"));
    FAIL("expected UnmatchedPrompt");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnmatchedPrompt);
    CHECK(e.detail() == "nothing matches");
  }
  CHECK_THROWS_AS(MockBackend(std::vector<MockRule>{}), Error);
  CHECK_NOTHROW(MockBackend::from_file(std::string(SIMPLEXT_FIXTURE_DIR) + "/mock_flaky.json"));
}

TEST_CASE("completion body parsing") {
  const auto r = parse_completion_body(R"({"choices":[{"message":{"role":"assistant","content":"Hi"},
      "finish_reason":"stop"}],"usage":{"prompt_tokens":7,"completion_tokens":1}})");
  CHECK(r.text == "Hi");
  CHECK(r.usage == Usage{7, 1});
  CHECK_THROWS_AS(parse_completion_body("{}"), Error);
  CHECK_THROWS_AS(parse_completion_body("not json"), Error);
}

TEST_CASE("remote backend speaks the chat-completions wire format") {
  httplib::Server server;
  std::atomic<int> status{200};
  nlohmann::json last_body;
  std::string last_auth;
  std::mutex mu;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    {
      std::lock_guard lk(mu);
      last_body = nlohmann::json::parse(req.body);
      last_auth = req.get_header_value("Authorization");
    }
    res.status = status.load();
    if (res.status == 429) res.set_header("Retry-After", "2");
    res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"Simple."},
        "finish_reason":"stop"}],"usage":{"prompt_tokens":4,"completion_tokens":1}})",
                    "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::jthread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  RemoteConfig cfg;
  cfg.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1";
  cfg.api_key = "secret";
  cfg.timeout = std::chrono::seconds(5);
  RemoteBackend backend(cfg);

  const auto resp = backend.send(make_request("Simplify this."));
  CHECK(resp.text == "Simple.");
  CHECK(resp.usage == Usage{4, 1});
  {
    std::lock_guard lk(mu);
    CHECK(last_auth == "Bearer secret");
    CHECK(last_body.at("model") == std::string(kDefaultModel));
    CHECK(last_body.at("messages").at(0).at("content") == "Simplify this.");
    CHECK(last_body.at("temperature") == 0.0);
  }

  status = 429;
  try {
    backend.send(make_request("x"));
    FAIL("expected TransientError");
  } catch (const TransientError& e) {
    CHECK(e.retry_after() == std::optional<std::chrono::milliseconds>(2000ms));
  }
  status = 503;
  CHECK_THROWS_AS(backend.send(make_request("x")), TransientError);
  status = 401;
  try {
    backend.send(make_request("x"));
    FAIL("expected AuthFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAuthFailure);
  }
  status = 400;
  try {
    backend.send(make_request("x"));
    FAIL("expected MalformedProviderReply");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedProviderReply);
  }
  server.stop();
}

TEST_CASE("remote backend reports unreachable hosts as transient") {
  RemoteConfig cfg;
  cfg.base_url = "http://127.0.0.1:1/v1";
  cfg.api_key = "k";
  cfg.timeout = std::chrono::seconds(2);
  RemoteBackend backend(cfg);
  CHECK_THROWS_AS(backend.send(make_request("x")), TransientError);
}

TEST_CASE("remote config requires an API key") {
  ::unsetenv(kApiKeyEnv.data());
  CHECK_THROWS_AS(RemoteConfig::from_environment(), Error);
  ::setenv(kApiKeyEnv.data(), "abc", 1);
  CHECK(RemoteConfig::from_environment().api_key == "abc");
  ::unsetenv(kApiKeyEnv.data());
}
