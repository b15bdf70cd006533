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

// Approximate dictionary matching of lexicon terms in free text.
//
// Every contiguous token window of up to max_window tokens is turned into a
// feature set and looked up in an inverted index. Postings are ordered by
// (term feature count, term id) so each feasible term size is a contiguous
// slice; within a slice, candidates must share at least MinOverlap features
// with the window before they are scored exactly.

#ifndef PROBLIST_MATCHER_H_
#define PROBLIST_MATCHER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "problist/features.h"
#include "problist/lexicon.h"
#include "problist/similarity.h"

namespace problist {

enum class OverlapPolicy { kBestScore, kLongestSpan };

std::string_view OverlapPolicyName(OverlapPolicy policy);
std::optional<OverlapPolicy> OverlapPolicyFromName(std::string_view name);

struct MatcherConfig {
  SimilarityMetric metric = SimilarityMetric::kJaccard;
  double threshold = 0.7;
  int max_window = 7;
  FeatureConfig features;
  OverlapPolicy overlap_policy = OverlapPolicy::kBestScore;
  // Windows never cross a sentence end ([.!?] followed by whitespace, or a
  // line break) when set.
  bool split_sentences = false;

  // Token Jaccard at 0.7.
  static MatcherConfig Extraction();
  // Token Jaccard at 1.0, i.e. exact token-set matches.
  static MatcherConfig Augmentation();

  void Validate() const;
};

struct IndexedTerm {
  std::string term;  // normalized surface
  std::vector<std::string> cuis;
  std::vector<std::uint32_t> feature_ids;  // sorted
};

class MatchIndex {
 public:
  // Throws kEmptyLexicon.
  static MatchIndex Build(const ConceptLexicon& lexicon,
                          const FeatureConfig& config);

  const FeatureConfig& feature_config() const { return config_; }
  std::size_t size() const { return terms_.size(); }
  const IndexedTerm& term(std::uint32_t id) const { return terms_[id]; }
  const std::vector<IndexedTerm>& terms() const { return terms_; }
  std::size_t feature_count(std::uint32_t id) const {
    return terms_[id].feature_ids.size();
  }

  // Feature count -> term ids having that many features.
  const std::map<std::size_t, std::vector<std::uint32_t>>& size_buckets()
      const {
    return buckets_;
  }

  std::optional<std::uint32_t> FeatureId(std::string_view feature) const;
  const std::string& FeatureString(std::uint32_t id) const {
    return feature_strings_[id];
  }

  // All term ids containing the feature, ordered by (size, id).
  std::span<const std::uint32_t> Postings(std::uint32_t feature_id) const {
    return postings_[feature_id];
  }
  // The sub-slice of Postings() holding terms with exactly `size` features.
  std::span<const std::uint32_t> Postings(std::uint32_t feature_id,
                                          std::size_t size) const;

  struct Hit {
    std::uint32_t term_id;
    double score;
  };
  // Terms whose similarity to `query` reaches tau, ordered by term id.
  std::vector<Hit> Search(const FeatureSet& query, SimilarityMetric metric,
                          double tau) const;

  friend bool operator==(const MatchIndex& a, const MatchIndex& b);

 private:
  void SearchSize(std::span<const std::uint32_t> query_ids,
                  std::size_t query_size, std::size_t term_size,
                  std::size_t min_overlap, SimilarityMetric metric,
                  double tau, std::vector<Hit>& out) const;

  FeatureConfig config_;
  std::vector<IndexedTerm> terms_;
  std::vector<std::string> feature_strings_;
  std::unordered_map<std::string, std::uint32_t> feature_ids_;
  std::vector<std::vector<std::uint32_t>> postings_;
  std::map<std::size_t, std::vector<std::uint32_t>> buckets_;
};

struct MatchSpan {
  std::size_t start = 0;  // byte offsets into the source text
  std::size_t end = 0;
  std::string surface;
  std::vector<std::string> cuis;
  std::string matched_term;
  double score = 0.0;

  std::size_t length() const { return end - start; }
  friend bool operator==(const MatchSpan&, const MatchSpan&) = default;
};

struct Window {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string ngram;  // normalized tokens joined by single spaces
  std::size_t first_token = 0;
  std::size_t token_count = 0;
};

// Windows ordered by length, then start.
std::vector<Window> CandidateWindows(std::string_view text, int max_window,
                                     const Normalization& norm,
                                     bool split_sentences = false);

// Every (window, term) pair scoring at least the threshold, before overlap
// resolution, ordered by (start, end, matched_term). Throws kConfigMismatch
// when the index was built with different features.
std::vector<MatchSpan> FindMatches(std::string_view text,
                                   const MatchIndex& index,
                                   const MatcherConfig& config);

// Greedy selection in policy order. Input order is irrelevant; output is
// pairwise non-overlapping and ordered by start.
std::vector<MatchSpan> ResolveOverlaps(std::vector<MatchSpan> spans,
                                       OverlapPolicy policy);

std::vector<MatchSpan> ExtractConcepts(std::string_view text,
                                       const MatchIndex& index,
                                       const MatcherConfig& config);

// A shared index with the configuration it is queried under.
class ConceptMatcher {
 public:
  ConceptMatcher(std::shared_ptr<const MatchIndex> index,
                 MatcherConfig config);

  static ConceptMatcher Build(const ConceptLexicon& lexicon,
                              MatcherConfig config);

  const MatchIndex& index() const { return *index_; }
  const MatcherConfig& config() const { return config_; }

  ConceptMatcher WithThreshold(double threshold) const;

  std::vector<MatchSpan> Extract(std::string_view text) const {
    return ExtractConcepts(text, *index_, config_);
  }

 private:
  std::shared_ptr<const MatchIndex> index_;
  MatcherConfig config_;
};

}  // namespace problist

#endif  // PROBLIST_MATCHER_H_
