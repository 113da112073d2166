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

#ifndef SIMPLEXT_SIMPLEXT_HPP_
#define SIMPLEXT_SIMPLEXT_HPP_

#include "simplext/corpus.hpp"
#include "simplext/error.hpp"
#include "simplext/experiment.hpp"
#include "simplext/llm/chat.hpp"
#include "simplext/llm/gateway.hpp"
#include "simplext/llm/mock_backend.hpp"
#include "simplext/llm/remote_backend.hpp"
#include "simplext/llm/response_cache.hpp"
#include "simplext/metrics.hpp"
#include "simplext/pipelines.hpp"
#include "simplext/prompts.hpp"
#include "simplext/report.hpp"
#include "simplext/textproc.hpp"

#endif  // SIMPLEXT_SIMPLEXT_HPP_
