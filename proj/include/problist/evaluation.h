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

// Subgroup-aware scoring of predicted summaries.

#ifndef PROBLIST_EVALUATION_H_
#define PROBLIST_EVALUATION_H_

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "problist/corpus.h"
#include "problist/matcher.h"
#include "problist/metrics.h"

namespace problist {

enum class Subgroup { kExplicit, kDirect, kIndirect, kAll };

inline constexpr Subgroup kAllSubgroups[] = {
    Subgroup::kExplicit, Subgroup::kDirect, Subgroup::kIndirect,
    Subgroup::kAll};

std::string_view SubgroupName(Subgroup subgroup);
std::optional<Subgroup> SubgroupFromName(std::string_view name);

// Union of the cuis extracted from each "; "-separated segment.
std::set<std::string> ExtractCuiSet(std::string_view text,
                                    const ConceptMatcher& matcher);

struct SubgroupViews {
  // Reference problems, in reference order, that share a cui with the input.
  std::vector<std::string> explicit_problems;
  std::array<std::string, 4> text;

  const std::string& operator[](Subgroup s) const {
    return text[static_cast<std::size_t>(s)];
  }
};

SubgroupViews PartitionSubgroups(const TaskExample& example,
                                 const ConceptMatcher& matcher);

struct Prediction {
  std::optional<std::string> summary;
  // Subgroup-specific predictions take precedence over `summary`.
  std::map<Subgroup, std::string> per_subgroup;

  std::optional<std::string> For(Subgroup s) const;
};

using PredictionTable = std::unordered_map<std::string, Prediction>;

// Lines are {note_id, summary} with an optional "subgroup" field.
PredictionTable ReadPredictions(std::istream& in);

struct SubgroupScore {
  PrfScore rouge_l;
  PrfScore cui;
  std::optional<double> sent_cosine;
  std::size_t n_examples = 0;
};

struct EvalReport {
  std::array<SubgroupScore, 4> subgroups;
  SimilarityMetric metric = SimilarityMetric::kJaccard;
  double threshold = 0.0;
  int max_window = 0;
  std::size_t examples = 0;
  std::size_t missing_predictions = 0;

  const SubgroupScore& operator[](Subgroup s) const {
    return subgroups[static_cast<std::size_t>(s)];
  }
  nlohmann::json ToJson() const;
  std::string ToCsv() const;
};

// Vector ids: "<note_id>:<subgroup>:ref" and "<note_id>:<subgroup>:pred".
std::string EvalVectorId(std::string_view note_id, Subgroup subgroup,
                         bool reference);

// Macro-averages per-example scores over examples whose reference view is
// non-empty. Missing predictions score as empty summaries.
EvalReport EvaluateCorpus(std::span<const TaskExample> references,
                          const PredictionTable& predictions,
                          const ConceptMatcher& matcher,
                          const VectorTable* vectors = nullptr,
                          unsigned threads = 1);

}  // namespace problist

#endif  // PROBLIST_EVALUATION_H_
