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

#ifndef PROBLIST_ERROR_H_
#define PROBLIST_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace problist {

enum class ErrorCode {
  kInvalidArgument,
  kIoError,
  // corpus
  kNoSectionsFound,
  kMissingAssessment,
  kSchemaViolation,
  // lexicon
  kMalformedLine,
  kInvalidCui,
  kConflictingPreferred,
  kEmptyAfterNormalization,
  // matcher
  kEmptyLexicon,
  kEmptyFeatureSet,
  kConfigMismatch,
  // augmentation
  kNoVariantsPossible,
  kMissingVector,
  // masking
  kOverlappingSpans,
  kSentinelMismatch,
  // metrics
  kDimensionMismatch,
  kZeroVector,
};

// Stable class name used in CLI error lines, e.g. "SchemaViolation".
std::string_view ErrorCodeName(ErrorCode code);

// All fallible operations throw this. The code identifies the error class;
// the message carries context such as line numbers or ids.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace problist

#endif  // PROBLIST_ERROR_H_
