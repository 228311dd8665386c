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

#include <stdexcept>
#include <string>

namespace mmcurate {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or missing required setting; raised before side effects.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (metadata, manifests, decision files).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Model output that does not satisfy the expected schema. Feeds the
/// malformed-output retry policy; never retried at the transport level.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Connection-level failure talking to a backend. Retryable.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Backend answered but cannot serve the request (capability missing,
/// fixture absent, HTTP 4xx). Not retryable.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// A backend stayed unreachable after transport retries; the run aborts.
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

class ResumeError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmcurate

namespace mmcurate {

/// An item cannot proceed (malformed output after retries, backend refused).
/// The pipeline records it as Quarantined with `what()` as the reason.
class QuarantineError : public Error {
 public:
  QuarantineError(std::string reason, int attempts = 0) : Error(std::move(reason)), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

}  // namespace mmcurate
