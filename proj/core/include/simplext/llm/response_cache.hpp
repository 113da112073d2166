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

#ifndef SIMPLEXT_LLM_RESPONSE_CACHE_HPP_
#define SIMPLEXT_LLM_RESPONSE_CACHE_HPP_

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "simplext/llm/chat.hpp"

namespace simplext::llm {

// Persistent request_hash -> ChatResponse map. Each entry is one JSON file at
// <root>/<hash[0:2]>/<hash>.json holding the request and the response.
// Writes go through a temporary file and a rename, serialized by a mutex.
class ResponseCache {
 public:
  // Creates the directory if needed. Throws kIoError if it is not writable.
  explicit ResponseCache(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path path_for(const std::string& hash) const;

  // Throws kCacheCorrupt (naming the file to delete) for unreadable entries
  // or entries whose stored hash disagrees with their name.
  std::optional<ChatResponse> lookup(const std::string& hash) const;
  bool contains(const std::string& hash) const;

  void store(const ChatRequest& request, const ChatResponse& response);

  struct Summary {
    std::size_t entries = 0;
    std::uintmax_t bytes = 0;
    std::vector<std::filesystem::path> corrupt;
  };
  Summary inspect() const;

  // Removes every entry; returns how many were removed.
  std::size_t clear();

 private:
  std::filesystem::path root_;
  mutable std::mutex write_mu_;
};

}  // namespace simplext::llm

#endif  // SIMPLEXT_LLM_RESPONSE_CACHE_HPP_
