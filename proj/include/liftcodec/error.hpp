// Copyright (c) the liftcodec authors
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

#ifndef LIFTCODEC_ERROR_HPP_
#define LIFTCODEC_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace liftcodec {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kOddLengthSequence,
  kFrameTooSmall,
  kBadHeader,
  kIo,
  kTruncatedStream,
  kVersionMismatch,
  kPayloadLengthMismatch,
  kCorruptStream,
  kValueOverCap,
  kNoOverlap,
  kConfigConflict,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure in the library surfaces as a CodecError. Stream parsing
// errors carry the byte offset at which the problem was detected.
class CodecError : public std::runtime_error {
 public:
  CodecError(ErrorCode code, const std::string& message,
             std::optional<std::size_t> offset = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace liftcodec

#endif  // LIFTCODEC_ERROR_HPP_
