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
#include "kgalign/error.h"

namespace kgalign {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedTriple: return "MalformedTriple";
    case ErrorCode::kUnknownRelation: return "UnknownRelation";
    case ErrorCode::kEmptyField: return "EmptyField";
    case ErrorCode::kInvalidSchema: return "InvalidSchema";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDocMismatch: return "DocMismatch";
    case ErrorCode::kUnknownDocId: return "UnknownDocId";
    case ErrorCode::kFingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::kFormat: return "Format";
    case ErrorCode::kEmbeddingFailure: return "EmbeddingFailure";
    case ErrorCode::kExtractionFailure: return "ExtractionFailure";
    case ErrorCode::kGenerationFailure: return "GenerationFailure";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kTransport: return "Transport";
    case ErrorCode::kProtocol: return "Protocol";
    case ErrorCode::kRemote: return "Remote";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

bool IsValidationError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmbeddingFailure:
    case ErrorCode::kExtractionFailure:
    case ErrorCode::kGenerationFailure:
    case ErrorCode::kTimeout:
    case ErrorCode::kTransport:
    case ErrorCode::kProtocol:
    case ErrorCode::kRemote:
    case ErrorCode::kIo:
      return false;
    default:
      return true;
  }
}

}  // namespace kgalign
