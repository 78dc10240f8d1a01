// Copyright 2026 The kgalign Authors
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
#include <string_view>

namespace kgalign {

// Every failure surfaced by the library carries one of these codes. The CLI
// maps them onto exit codes (see IsValidationError).
enum class ErrorCode {
  kMalformedTriple,
  kUnknownRelation,
  kEmptyField,
  kInvalidSchema,
  kInvalidArgument,
  kDocMismatch,
  kUnknownDocId,
  kFingerprintMismatch,
  kFormat,
  kEmbeddingFailure,
  kExtractionFailure,
  kGenerationFailure,
  kTimeout,
  kTransport,
  kProtocol,
  kRemote,
  kIo,
};

std::string_view ErrorName(ErrorCode code);

// True for errors caused by bad input data or arguments; false for errors
// raised by external services or the filesystem.
bool IsValidationError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorName(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace kgalign
