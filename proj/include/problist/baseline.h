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

// Extraction-only summarizer: lists the concepts found in an assessment.

#ifndef PROBLIST_BASELINE_H_
#define PROBLIST_BASELINE_H_

#include <set>
#include <string>
#include <string_view>

#include "problist/lexicon.h"
#include "problist/matcher.h"

namespace problist {

struct BaselineOptions {
  // Emit each concept's preferred term instead of the matched surface.
  bool preferred_terms = false;
  // When non-empty, keep only spans with a cui of one of these types.
  std::set<std::string> semantic_types;
};

// Matched concepts in note order joined by "; ". A span is dropped when an
// earlier span carried the same cui set.
std::string RuleBasedSummarize(std::string_view assessment,
                               const ConceptMatcher& matcher,
                               const ConceptLexicon& lexicon,
                               const BaselineOptions& options = {});

}  // namespace problist

#endif  // PROBLIST_BASELINE_H_
