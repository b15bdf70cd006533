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

// Summary scoring primitives: evaluation tokenization, ROUGE-L, CUI F-score
// and embedding cosine.

#ifndef PROBLIST_METRICS_H_
#define PROBLIST_METRICS_H_

#include <cstddef>
#include <istream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace problist {

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // f1 = 2PR / (P + R), or 0 when P + R is 0.
  static PrfScore FromPrecisionRecall(double precision, double recall);
};

// Lowercases and splits on every run of non-alphanumeric characters, so
// semicolons and punctuation never survive.
std::vector<std::string> EvalTokenize(std::string_view text);

std::size_t LcsLength(std::span<const std::string> a,
                      std::span<const std::string> b);

// Empty reference or prediction scores all zeros.
PrfScore RougeL(std::span<const std::string> reference,
                std::span<const std::string> prediction);

// P = |ref ∩ pred| / |pred|, R = |ref ∩ pred| / |ref|. Empty prediction gives
// P = 0, empty reference gives R = 0, and two empty sets score 1.
PrfScore CuiF(const std::set<std::string>& reference,
              const std::set<std::string>& prediction);

// Throws kDimensionMismatch or kZeroVector.
double SentCosine(std::span<const double> u, std::span<const double> v);

using VectorTable = std::unordered_map<std::string, std::vector<double>>;

// id<TAB>values, values separated by spaces or commas.
VectorTable LoadVectors(std::istream& in);

}  // namespace problist

#endif  // PROBLIST_METRICS_H_
