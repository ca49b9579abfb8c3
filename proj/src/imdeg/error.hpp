// Copyright 2026 the imdeg authors. All rights reserved.
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

#ifndef IMDEG_ERROR_HPP_
#define IMDEG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace imdeg {

// Machine-readable failure categories.  These map one-to-one onto the status
// codes of the public C API; everything inside the core throws imdeg::Error
// and the C boundary translates.
enum class ErrorCode {
  kIo = 1,               // file could not be read or written
  kFormat,               // file exists but its contents are malformed
  kArgument,             // caller passed an invalid value
  kNotFound,             // unknown backend/term/metric/key
  kUnavailableFeature,   // operator exists but cannot run in this build/env
  kShape,                // image dimensions violate a precondition
  kDegenerateAxis,       // severity axis unusable for extrapolation/mapping
  kMetricMismatch,       // metric of a document does not match the request
  kInternal,             // invariant violation; indicates a bug
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kArgument: return "argument";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kUnavailableFeature: return "unavailable_feature";
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kDegenerateAxis: return "degenerate_axis";
    case ErrorCode::kMetricMismatch: return "metric_mismatch";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace imdeg

#endif  // IMDEG_ERROR_HPP_
