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

#include "problist/similarity.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "problist/error.h"

namespace problist {
namespace {

// Slack on the bounds so floating-point rounding can only widen them.
constexpr double kBoundSlack = 1e-9;

std::size_t CeilCount(double x) {
  const double c = std::ceil(x - kBoundSlack);
  return c <= 0 ? 0 : static_cast<std::size_t>(c);
}

std::size_t FloorCount(double x) {
  const double f = std::floor(x + kBoundSlack);
  return f <= 0 ? 0 : static_cast<std::size_t>(f);
}

}  // namespace

std::string_view MetricName(SimilarityMetric metric) {
  switch (metric) {
    case SimilarityMetric::kJaccard: return "jaccard";
    case SimilarityMetric::kCosine: return "cosine";
    case SimilarityMetric::kOverlap: return "overlap";
  }
  return "unknown";
}

std::optional<SimilarityMetric> MetricFromName(std::string_view name) {
  if (name == "jaccard") return SimilarityMetric::kJaccard;
  if (name == "cosine") return SimilarityMetric::kCosine;
  if (name == "overlap") return SimilarityMetric::kOverlap;
  return std::nullopt;
}

double SimilarityFromCounts(std::size_t overlap, std::size_t q_size,
                            std::size_t y_size, SimilarityMetric metric) {
  const double inter = static_cast<double>(overlap);
  const double q = static_cast<double>(q_size);
  const double y = static_cast<double>(y_size);
  switch (metric) {
    case SimilarityMetric::kJaccard: return inter / (q + y - inter);
    case SimilarityMetric::kCosine: return inter / std::sqrt(q * y);
    case SimilarityMetric::kOverlap: return inter / std::min(q, y);
  }
  return 0.0;
}

double Similarity(const FeatureSet& q, const FeatureSet& y,
                  SimilarityMetric metric) {
  if (q.empty() || y.empty()) {
    throw Error(ErrorCode::kEmptyFeatureSet, "similarity of an empty set");
  }
  std::size_t overlap = 0;
  auto a = q.features.begin();
  auto b = y.features.begin();
  while (a != q.features.end() && b != y.features.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++overlap, ++a, ++b;
    }
  }
  return SimilarityFromCounts(overlap, q.size(), y.size(), metric);
}

SizeRange FeasibleSizes(SimilarityMetric metric, std::size_t q_size,
                        double tau) {
  const double q = static_cast<double>(q_size);
  switch (metric) {
    case SimilarityMetric::kJaccard:
      return {std::max<std::size_t>(1, CeilCount(tau * q)),
              FloorCount(q / tau)};
    case SimilarityMetric::kCosine:
      return {std::max<std::size_t>(1, CeilCount(tau * tau * q)),
              FloorCount(q / (tau * tau))};
    case SimilarityMetric::kOverlap:
      return {1, SIZE_MAX};
  }
  return {1, SIZE_MAX};
}

std::size_t MinOverlap(SimilarityMetric metric, std::size_t q_size,
                       std::size_t y_size, double tau) {
  const double q = static_cast<double>(q_size);
  const double y = static_cast<double>(y_size);
  std::size_t alpha = 0;
  switch (metric) {
    case SimilarityMetric::kJaccard:
      alpha = CeilCount(tau * (q + y) / (1.0 + tau));
      break;
    case SimilarityMetric::kCosine:
      alpha = CeilCount(tau * std::sqrt(q * y));
      break;
    case SimilarityMetric::kOverlap:
      alpha = CeilCount(tau * std::min(q, y));
      break;
  }
  return std::max<std::size_t>(1, alpha);
}

}  // namespace problist
