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

#ifndef SIMPLEXT_SRC_URL_HPP_
#define SIMPLEXT_SRC_URL_HPP_

#include <string>
#include <string_view>

namespace simplext::detail {

struct Url {
  std::string scheme;  // "http" or "https"
  std::string host;
  int port = 0;
  std::string path;  // without trailing slash, may be empty

  std::string origin() const { return scheme + "://" + host + ":" + std::to_string(port); }
};

// Throws std::invalid_argument for anything but http(s)://host[:port][/path].
Url parse_url(std::string_view text);

}  // namespace simplext::detail

#endif  // SIMPLEXT_SRC_URL_HPP_
