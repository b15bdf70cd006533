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

#include "problist/features.h"

#include <algorithm>

#include "problist/error.h"

namespace problist {

void FeatureConfig::Validate() const {
  if (kind == FeatureKind::kCharacterNgram && n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram width must be >= 1");
  }
}

FeatureSet MakeFeatureSet(std::string_view term, const FeatureConfig& config) {
  config.Validate();
  FeatureSet result;
  result.source_term = std::string(term);
  result.config = config;

  const std::vector<Token> tokens = Tokenize(term, config.normalization);
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptyAfterNormalization,
                "term '" + std::string(term) + "' is empty after normalization");
  }

  if (config.kind == FeatureKind::kToken) {
    for (const Token& token : tokens) result.features.push_back(token.text);
  } else {
    std::vector<char32_t> chars;
    const std::size_t pad =
        config.normalization.pad_boundaries ? config.n - 1 : 0;
    chars.insert(chars.end(), pad, config.pad);
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (t > 0) chars.push_back(U' ');
      const std::string& text = tokens[t].text;
      for (std::size_t pos = 0; pos < text.size();) {
        const Utf8Char ch = DecodeUtf8(text, pos);
        chars.push_back(ch.codepoint);
        pos += ch.length;
      }
    }
    chars.insert(chars.end(), pad, config.pad);

    const std::size_t width = std::min<std::size_t>(config.n, chars.size());
    for (std::size_t i = 0; i + width <= chars.size(); ++i) {
      std::string gram;
      for (std::size_t k = 0; k < width; ++k) AppendUtf8(chars[i + k], gram);
      result.features.push_back(std::move(gram));
    }
  }
  std::sort(result.features.begin(), result.features.end());
  result.features.erase(
      std::unique(result.features.begin(), result.features.end()),
      result.features.end());
  return result;
}

}  // namespace problist
