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

#include "simplext/error.hpp"

namespace simplext {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kDanglingDocId: return "DanglingDocId";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kEmptyLexicon: return "EmptyLexicon";
    case ErrorCode::kMalformedLexicon: return "MalformedLexicon";
    case ErrorCode::kEmptyReferences: return "EmptyReferences";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kEmptySource: return "EmptySource";
    case ErrorCode::kProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::kTransient: return "Transient";
    case ErrorCode::kExhaustedRetries: return "ExhaustedRetries";
    case ErrorCode::kAuthFailure: return "AuthFailure";
    case ErrorCode::kMalformedProviderReply: return "MalformedProviderReply";
    case ErrorCode::kUnmatchedPrompt: return "UnmatchedPrompt";
    case ErrorCode::kCacheCorrupt: return "CacheCorrupt";
    case ErrorCode::kWrongLevel: return "WrongLevel";
    case ErrorCode::kUnparseableOutput: return "UnparseableOutput";
    case ErrorCode::kEmptySummary: return "EmptySummary";
    case ErrorCode::kEmptyOutput: return "EmptyOutput";
    case ErrorCode::kPrecondition: return "Precondition";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kCorpusLoadError: return "CorpusLoadError";
    case ErrorCode::kAllPairsFailed: return "AllPairsFailed";
    case ErrorCode::kEmptyReport: return "EmptyReport";
    case ErrorCode::kCorpusMismatch: return "CorpusMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace simplext
