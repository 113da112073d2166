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

#ifndef SIMPLEXT_ERROR_HPP_
#define SIMPLEXT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace simplext {

enum class ErrorCode {
  // corpus
  kMalformedRecord,
  kEmptyCorpus,
  kDanglingDocId,
  kIndexOutOfRange,
  kIoError,
  // textproc
  kEmptyLexicon,
  kMalformedLexicon,
  // metrics
  kEmptyReferences,
  kLengthMismatch,
  kEmptyText,
  kEmptySource,
  kProviderUnavailable,
  // llm gateway
  kTransient,
  kExhaustedRetries,
  kAuthFailure,
  kMalformedProviderReply,
  kUnmatchedPrompt,
  kCacheCorrupt,
  // pipelines
  kWrongLevel,
  kUnparseableOutput,
  kEmptySummary,
  kEmptyOutput,
  kPrecondition,
  // harness
  kConfigInvalid,
  kCorpusLoadError,
  kAllPairsFailed,
  kEmptyReport,
  kCorpusMismatch,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `detail` carries the payload a caller
// may need for diagnostics: the unmatched prompt, the raw unparseable
// response, or the last cause of an exhausted retry loop.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace simplext

#endif  // SIMPLEXT_ERROR_HPP_
