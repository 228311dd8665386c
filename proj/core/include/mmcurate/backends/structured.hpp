// Copyright 2026 The mmcurate Authors
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

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "mmcurate/backends/protocols.hpp"

namespace mmcurate::backends {

struct GenerationConfig {
  double temperature = 0.0;
  int max_tokens = 2048;
};

/// Malformed-output policy: the first retry repeats the request unchanged;
/// later retries raise the temperature so deterministic backends can escape
/// a repeated bad answer.
struct RetryPolicy {
  int max_retries = 2;
  double retry_temperature = 0.2;

  /// Temperature for attempt `attempt` (0 = original request).
  double temperature_for(int attempt, double base) const;
};

/// Sends `req`, parsing the content with `parse`. A ParseError from the
/// parser (or the response decoding) consumes one retry; once retries are
/// exhausted a QuarantineError carrying the last parse error is thrown.
/// BackendError is converted to QuarantineError immediately. Transport
/// failures propagate unchanged.
template <typename T>
T call_structured(ChatBackend& backend, ChatRequest req, const RetryPolicy& policy,
                  const std::function<T(const std::string&)>& parse, int* attempts_out = nullptr);

/// Untemplated implementation; returns after the first successful parse.
void call_structured_impl(ChatBackend& backend, ChatRequest req, const RetryPolicy& policy,
                          const std::function<void(const std::string&)>& consume, int* attempts_out);

template <typename T>
T call_structured(ChatBackend& backend, ChatRequest req, const RetryPolicy& policy,
                  const std::function<T(const std::string&)>& parse, int* attempts_out) {
  std::optional<T> result;
  call_structured_impl(
      backend, std::move(req), policy, [&](const std::string& content) { result.emplace(parse(content)); },
      attempts_out);
  return std::move(*result);
}

}  // namespace mmcurate::backends
