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

// Set similarity between feature sets and the pruning bounds used by the
// matcher. For a query of q features, a term of y features can reach
// similarity tau only when y lies in FeasibleSizes(q) and the two share at
// least MinOverlap(q, y) features.

#ifndef PROBLIST_SIMILARITY_H_
#define PROBLIST_SIMILARITY_H_

#include <cstddef>
#include <optional>
#include <string_view>

#include "problist/features.h"

namespace problist {

enum class SimilarityMetric { kJaccard, kCosine, kOverlap };

std::string_view MetricName(SimilarityMetric metric);
std::optional<SimilarityMetric> MetricFromName(std::string_view name);

// Score from set sizes and the intersection size. Sizes must be positive.
double SimilarityFromCounts(std::size_t overlap, std::size_t q_size,
                            std::size_t y_size, SimilarityMetric metric);

// Throws kEmptyFeatureSet when either set is empty.
double Similarity(const FeatureSet& q, const FeatureSet& y,
                  SimilarityMetric metric);

struct SizeRange {
  std::size_t min = 0;
  std::size_t max = 0;  // inclusive; SIZE_MAX when unbounded
};

SizeRange FeasibleSizes(SimilarityMetric metric, std::size_t q_size,
                        double tau);

std::size_t MinOverlap(SimilarityMetric metric, std::size_t q_size,
                       std::size_t y_size, double tau);

}  // namespace problist

#endif  // PROBLIST_SIMILARITY_H_
