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

#include "problist/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "problist/error.h"
#include "problist/text.h"

namespace problist {

PrfScore PrfScore::FromPrecisionRecall(double precision, double recall) {
  PrfScore score{precision, recall, 0.0};
  if (precision + recall > 0.0) {
    score.f1 = 2.0 * precision * recall / (precision + recall);
  }
  return score;
}

std::vector<std::string> EvalTokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (Token& token : Tokenize(text, Normalization{true, true, false})) {
    tokens.push_back(std::move(token.text));
  }
  return tokens;
}

std::size_t LcsLength(std::span<const std::string> a,
                      std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> previous(b.size() + 1, 0);
  std::vector<std::size_t> current(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      current[j] = a[i - 1] == b[j - 1]
                       ? previous[j - 1] + 1
                       : std::max(previous[j], current[j - 1]);
    }
    std::swap(previous, current);
  }
  return previous[b.size()];
}

PrfScore RougeL(std::span<const std::string> reference,
                std::span<const std::string> prediction) {
  if (reference.empty() || prediction.empty()) return {};
  const double lcs = static_cast<double>(LcsLength(reference, prediction));
  return PrfScore::FromPrecisionRecall(lcs / prediction.size(),
                                       lcs / reference.size());
}

PrfScore CuiF(const std::set<std::string>& reference,
              const std::set<std::string>& prediction) {
  if (reference.empty() && prediction.empty()) return {1.0, 1.0, 1.0};
  std::size_t common = 0;
  for (const std::string& cui : prediction) common += reference.count(cui);
  const double precision =
      prediction.empty() ? 0.0 : static_cast<double>(common) / prediction.size();
  const double recall =
      reference.empty() ? 0.0 : static_cast<double>(common) / reference.size();
  return PrfScore::FromPrecisionRecall(precision, recall);
}

double SentCosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector dimensions " + std::to_string(u.size()) + " and " +
                    std::to_string(v.size()) + " differ");
  }
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) {
    throw Error(ErrorCode::kZeroVector, "cosine of a zero vector");
  }
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

VectorTable LoadVectors(std::istream& in) {
  VectorTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kMalformedLine,
                  "vectors line " + std::to_string(line_no) + ": missing tab");
    }
    std::vector<double> values;
    std::string_view rest = std::string_view(line).substr(tab + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      while (pos < rest.size() &&
             (rest[pos] == ' ' || rest[pos] == ',' || rest[pos] == '\t' ||
              rest[pos] == '\r')) {
        ++pos;
      }
      if (pos >= rest.size()) break;
      double value = 0.0;
      auto [next, ec] =
          std::from_chars(rest.data() + pos, rest.data() + rest.size(), value);
      if (ec != std::errc()) {
        throw Error(ErrorCode::kMalformedLine,
                    "vectors line " + std::to_string(line_no) +
                        ": bad number");
      }
      values.push_back(value);
      pos = static_cast<std::size_t>(next - rest.data());
    }
    table[std::string(Trim(std::string_view(line).substr(0, tab)))] =
        std::move(values);
  }
  return table;
}

}  // namespace problist
