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

#include "simplext/llm/response_cache.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace simplext::llm {
namespace fs = std::filesystem;
namespace {

bool is_entry(const fs::directory_entry& e) {
  return e.is_regular_file() && e.path().extension() == ".json";
}

[[noreturn]] void corrupt(const fs::path& path, const std::string& why) {
  throw Error(ErrorCode::kCacheCorrupt,
              "cache entry " + path.string() + " is unreadable (" + why +
                  "); delete it or run `simplext cache clear`",
              path.string());
}

// Parses and checks one entry file.
ChatResponse read_entry(const fs::path& path, const std::string& expected_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) corrupt(path, "cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(buf.str());
    if (j.at("hash").get<std::string>() != expected_hash) corrupt(path, "hash mismatch");
    const ChatRequest request = ChatRequest::from_json(j.at("request"));
    if (request.request_hash() != expected_hash) corrupt(path, "request does not hash to its key");
    return ChatResponse::from_json(j.at("response"));
  } catch (const nlohmann::json::exception& e) {
    corrupt(path, e.what());
  }
}

}  // namespace

ResponseCache::ResponseCache(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec || !fs::is_directory(root_)) {
    throw Error(ErrorCode::kIoError, "cannot create cache directory " + root_.string());
  }
}

fs::path ResponseCache::path_for(const std::string& hash) const {
  return root_ / hash.substr(0, 2) / (hash + ".json");
}

bool ResponseCache::contains(const std::string& hash) const { return fs::exists(path_for(hash)); }

std::optional<ChatResponse> ResponseCache::lookup(const std::string& hash) const {
  const fs::path path = path_for(hash);
  if (!fs::exists(path)) return std::nullopt;
  return read_entry(path, hash);
}

void ResponseCache::store(const ChatRequest& request, const ChatResponse& response) {
  static std::atomic<std::uint64_t> counter{0};
  const std::string hash = request.request_hash();
  const nlohmann::json entry = {
      {"hash", hash}, {"request", request.to_json()}, {"response", response.to_json()}};
  const fs::path path = path_for(hash);

  std::lock_guard lock(write_mu_);
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write cache entry " + tmp.string());
    out << entry.dump() << '\n';
    if (!out.flush()) throw Error(ErrorCode::kIoError, "cannot write cache entry " + tmp.string());
  }
  fs::rename(tmp, path);
}

ResponseCache::Summary ResponseCache::inspect() const {
  Summary s;
  for (const auto& e : fs::recursive_directory_iterator(root_)) {
    if (!is_entry(e)) continue;
    ++s.entries;
    s.bytes += e.file_size();
    try {
      (void)read_entry(e.path(), e.path().stem().string());
    } catch (const Error&) {
      s.corrupt.push_back(e.path());
    }
  }
  return s;
}

std::size_t ResponseCache::clear() {
  std::lock_guard lock(write_mu_);
  std::vector<fs::path> doomed;
  for (const auto& e : fs::recursive_directory_iterator(root_)) {
    if (is_entry(e)) doomed.push_back(e.path());
  }
  for (const auto& p : doomed) fs::remove(p);
  for (const auto& e : fs::directory_iterator(root_)) {
    if (e.is_directory() && fs::is_empty(e.path())) fs::remove(e.path());
  }
  return doomed.size();
}

}  // namespace simplext::llm
