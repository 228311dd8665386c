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

#include "mmcurate/backends/structured.hpp"

#include <algorithm>

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/log.hpp"

namespace mmcurate::backends {

double RetryPolicy::temperature_for(int attempt, double base) const {
  if (attempt < 2) return base;
  // Raised to retry_temperature from a greedy base, otherwise bumped by it.
  double raised = base < retry_temperature ? retry_temperature : base + retry_temperature * (attempt - 1);
  return std::min(raised, 2.0);
}

void call_structured_impl(ChatBackend& backend, ChatRequest req, const RetryPolicy& policy,
                          const std::function<void(const std::string&)>& consume, int* attempts_out) {
  const double base = req.temperature;
  std::string last_error;
  for (int attempt = 0; attempt <= policy.max_retries; ++attempt) {
    if (attempts_out) *attempts_out = attempt + 1;
    req.temperature = policy.temperature_for(attempt, base);
    ChatResponse resp;
    try {
      resp = backend.chat(req);
    } catch (const BackendError& e) {
      throw QuarantineError(std::string(req.tag) + ": backend error: " + e.what(), attempt + 1);
    } catch (const ParseError& e) {
      last_error = e.what();
      continue;
    }
    try {
      consume(resp.content);
      return;
    } catch (const ParseError& e) {
      last_error = e.what();
      log::event(log::Level::kDebug, "malformed model output",
                 {{"tag", req.tag}, {"attempt", attempt}, {"error", last_error}});
    }
  }
  throw QuarantineError(std::string(req.tag) + ": malformed output after " + std::to_string(policy.max_retries) +
                            " retries: " + last_error,
                        policy.max_retries + 1);
}

}  // namespace mmcurate::backends
