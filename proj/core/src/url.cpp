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

#include "url.hpp"

#include <charconv>
#include <stdexcept>

namespace simplext::detail {

Url parse_url(std::string_view text) {
  Url url;
  const std::size_t sep = text.find("://");
  if (sep == std::string_view::npos) throw std::invalid_argument("URL lacks scheme: " + std::string(text));
  url.scheme = std::string(text.substr(0, sep));
  if (url.scheme != "http" && url.scheme != "https") {
    throw std::invalid_argument("unsupported URL scheme: " + url.scheme);
  }
  std::string_view rest = text.substr(sep + 3);
  const std::size_t slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  url.path = slash == std::string_view::npos ? std::string() : std::string(rest.substr(slash));
  while (!url.path.empty() && url.path.back() == '/') url.path.pop_back();

  const std::size_t colon = authority.rfind(':');
  if (colon != std::string_view::npos) {
    const std::string_view port = authority.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), url.port);
    if (ec != std::errc{} || ptr != port.data() + port.size()) {
      throw std::invalid_argument("bad port in URL: " + std::string(text));
    }
    authority = authority.substr(0, colon);
  } else {
    url.port = url.scheme == "https" ? 443 : 80;
  }
  if (authority.empty()) throw std::invalid_argument("URL lacks host: " + std::string(text));
  url.host = std::string(authority);
  return url;
}

}  // namespace simplext::detail
