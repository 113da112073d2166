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

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "simplext/error.hpp"
#include "simplext/metrics.hpp"
#include "url.hpp"

namespace simplext::metrics {

HttpSimilarityProvider::HttpSimilarityProvider(std::string url, int timeout_seconds)
    : url_(std::move(url)), timeout_seconds_(timeout_seconds) {}

double HttpSimilarityProvider::f1(std::string_view candidate, std::string_view reference) {
  const detail::Url url = detail::parse_url(url_);
  httplib::Client client(url.origin());
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);

  nlohmann::json body;
  body["candidate"] = candidate;
  body["reference"] = reference;
  auto res = client.Post(url.path.empty() ? "/" : url.path, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::kProviderUnavailable,
                "similarity provider unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kProviderUnavailable,
                "similarity provider returned HTTP " + std::to_string(res->status));
  }
  try {
    return nlohmann::json::parse(res->body).at("f1").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProviderUnavailable, std::string("bad provider reply: ") + e.what());
  }
}

}  // namespace simplext::metrics
