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

#ifndef PROBLIST_FEATURES_H_
#define PROBLIST_FEATURES_H_

#include <string>
#include <string_view>
#include <vector>

#include "problist/text.h"

namespace problist {

enum class FeatureKind { kCharacterNgram, kToken };

struct FeatureConfig {
  FeatureKind kind = FeatureKind::kToken;
  // N-gram width in code points; character mode only.
  int n = 3;
  Normalization normalization;
  char32_t pad = U'#';

  void Validate() const;

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

// Sorted, duplicate-free features of one normalized string.
struct FeatureSet {
  std::vector<std::string> features;
  std::string source_term;
  FeatureConfig config;

  std::size_t size() const { return features.size(); }
  bool empty() const { return features.empty(); }
};

// Character mode pads the normalized term with n-1 pad characters on each
// side when pad_boundaries is set; a term shorter than n without padding
// yields itself as its only feature. Token mode yields the word tokens.
// Throws kEmptyAfterNormalization.
FeatureSet MakeFeatureSet(std::string_view term, const FeatureConfig& config);

}  // namespace problist

#endif  // PROBLIST_FEATURES_H_
