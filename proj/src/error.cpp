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

#include "liftcodec/error.hpp"

namespace liftcodec {
namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           std::optional<std::size_t> offset) {
  std::string out = error_code_name(code);
  out += ": ";
  out += message;
  if (offset) {
    out += " (at byte offset " + std::to_string(*offset) + ")";
  }
  return out;
}

}  // namespace

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kOddLengthSequence: return "OddLengthSequence";
    case ErrorCode::kFrameTooSmall: return "FrameTooSmall";
    case ErrorCode::kBadHeader: return "BadHeader";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kTruncatedStream: return "TruncatedStream";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kPayloadLengthMismatch: return "PayloadLengthMismatch";
    case ErrorCode::kCorruptStream: return "CorruptStream";
    case ErrorCode::kValueOverCap: return "ValueOverCap";
    case ErrorCode::kNoOverlap: return "NoOverlap";
    case ErrorCode::kConfigConflict: return "ConfigConflict";
  }
  return "Unknown";
}

CodecError::CodecError(ErrorCode code, const std::string& message,
                       std::optional<std::size_t> offset)
    : std::runtime_error(format_message(code, message, offset)),
      code_(code),
      offset_(offset) {}

}  // namespace liftcodec
