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

#include "problist/baseline.h"

#include <algorithm>
#include <vector>

#include "problist/corpus.h"
#include "problist/text.h"

namespace problist {
namespace {

bool HasSemanticType(const MatchSpan& span, const ConceptLexicon& lexicon,
                     const std::set<std::string>& types) {
  for (const std::string& cui : span.cuis) {
    const Concept* item = lexicon.Find(cui);
    if (item == nullptr) continue;
    for (const std::string& t : item->semantic_types) {
      if (types.count(t) > 0) return true;
    }
  }
  return false;
}

}  // namespace

std::string RuleBasedSummarize(std::string_view assessment,
                               const ConceptMatcher& matcher,
                               const ConceptLexicon& lexicon,
                               const BaselineOptions& options) {
  std::set<std::vector<std::string>> seen;
  std::vector<std::string> parts;
  for (const MatchSpan& span : matcher.Extract(assessment)) {
    if (!options.semantic_types.empty() &&
        !HasSemanticType(span, lexicon, options.semantic_types)) {
      continue;
    }
    std::vector<std::string> key = span.cuis;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;
    const Concept* item = options.preferred_terms && !key.empty()
                              ? lexicon.Find(key.front())
                              : nullptr;
    parts.push_back(item != nullptr ? item->preferred_term : span.surface);
  }
  return Join(parts, kProblemSeparator);
}

}  // namespace problist
