// Copyright 2026 The Problist Authors
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

#include "problist/error.h"

namespace problist {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNoSectionsFound: return "NoSectionsFound";
    case ErrorCode::kMissingAssessment: return "MissingAssessment";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kInvalidCui: return "InvalidCui";
    case ErrorCode::kConflictingPreferred: return "ConflictingPreferred";
    case ErrorCode::kEmptyAfterNormalization: return "EmptyAfterNormalization";
    case ErrorCode::kEmptyLexicon: return "EmptyLexicon";
    case ErrorCode::kEmptyFeatureSet: return "EmptyFeatureSet";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kNoVariantsPossible: return "NoVariantsPossible";
    case ErrorCode::kMissingVector: return "MissingVector";
    case ErrorCode::kOverlappingSpans: return "OverlappingSpans";
    case ErrorCode::kSentinelMismatch: return "SentinelMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
  }
  return "Unknown";
}

}  // namespace problist
