// Copyright 2026 The nccr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace nccr {

enum class ErrorCode {
  kOverflow,
  kInvalidPolygon,
  kCollinearInput,
  kNotPrimitiveEdge,
  kCollinearCorner,
  kBadArguments,
  kOutOfRange,
  kIndexMismatch,
  kDomainMismatch,
  kBadOrdering,
  kChainMismatch,
  kNotInduced,
  kCutFailure,
  kStuckSequence,
  kNonTriangleRegion,
  kNotConvex,
  kKeyMissing,
  kExplosionGuard,
  kParse,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code),
        message_(what) {}
  ErrorCode code() const { return code_; }
  // Text without the code prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace nccr
