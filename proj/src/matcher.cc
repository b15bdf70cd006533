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

#include "problist/matcher.h"

#include <algorithm>
#include <tuple>

#include "problist/error.h"

namespace problist {

std::string_view OverlapPolicyName(OverlapPolicy policy) {
  return policy == OverlapPolicy::kBestScore ? "best_score" : "longest_span";
}

std::optional<OverlapPolicy> OverlapPolicyFromName(std::string_view name) {
  if (name == "best_score") return OverlapPolicy::kBestScore;
  if (name == "longest_span") return OverlapPolicy::kLongestSpan;
  return std::nullopt;
}

MatcherConfig MatcherConfig::Extraction() { return MatcherConfig{}; }

MatcherConfig MatcherConfig::Augmentation() {
  MatcherConfig config;
  config.threshold = 1.0;
  return config;
}

void MatcherConfig::Validate() const {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "matcher threshold must lie in (0, 1]");
  }
  if (max_window < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_window must be >= 1");
  }
  features.Validate();
}

MatchIndex MatchIndex::Build(const ConceptLexicon& lexicon,
                             const FeatureConfig& config) {
  if (lexicon.empty()) {
    throw Error(ErrorCode::kEmptyLexicon, "cannot index an empty lexicon");
  }
  config.Validate();

  std::map<std::string, std::set<std::string>> surfaces;
  for (const auto& [cui, item] : lexicon.concepts()) {
    for (const std::string& synonym : item.synonyms) {
      std::string normalized = NormalizeText(synonym, config.normalization);
      if (!normalized.empty()) surfaces[std::move(normalized)].insert(cui);
    }
  }

  MatchIndex index;
  index.config_ = config;
  for (auto& [surface, cuis] : surfaces) {
    const FeatureSet features = MakeFeatureSet(surface, config);
    IndexedTerm term;
    term.term = surface;
    term.cuis.assign(cuis.begin(), cuis.end());
    for (const std::string& feature : features.features) {
      auto [it, inserted] = index.feature_ids_.emplace(
          feature, static_cast<std::uint32_t>(index.feature_strings_.size()));
      if (inserted) {
        index.feature_strings_.push_back(feature);
        index.postings_.emplace_back();
      }
      term.feature_ids.push_back(it->second);
    }
    std::sort(term.feature_ids.begin(), term.feature_ids.end());
    index.terms_.push_back(std::move(term));
  }

  for (std::uint32_t id = 0; id < index.terms_.size(); ++id) {
    const IndexedTerm& term = index.terms_[id];
    index.buckets_[term.feature_ids.size()].push_back(id);
    for (std::uint32_t feature : term.feature_ids) {
      index.postings_[feature].push_back(id);
    }
  }
  for (auto& posting : index.postings_) {
    std::sort(posting.begin(), posting.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                return std::make_pair(index.feature_count(a), a) <
                       std::make_pair(index.feature_count(b), b);
              });
  }
  return index;
}

bool operator==(const MatchIndex& a, const MatchIndex& b) {
  if (!(a.config_ == b.config_) || a.feature_strings_ != b.feature_strings_ ||
      a.postings_ != b.postings_ || a.buckets_ != b.buckets_ ||
      a.terms_.size() != b.terms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const IndexedTerm& x = a.terms_[i];
    const IndexedTerm& y = b.terms_[i];
    if (x.term != y.term || x.cuis != y.cuis ||
        x.feature_ids != y.feature_ids) {
      return false;
    }
  }
  return true;
}

std::optional<std::uint32_t> MatchIndex::FeatureId(
    std::string_view feature) const {
  auto it = feature_ids_.find(std::string(feature));
  if (it == feature_ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::uint32_t> MatchIndex::Postings(std::uint32_t feature_id,
                                                    std::size_t size) const {
  const std::vector<std::uint32_t>& posting = postings_[feature_id];
  auto first = std::lower_bound(
      posting.begin(), posting.end(), size,
      [&](std::uint32_t id, std::size_t s) { return feature_count(id) < s; });
  auto last = std::upper_bound(
      first, posting.end(), size,
      [&](std::size_t s, std::uint32_t id) { return s < feature_count(id); });
  return {std::to_address(first), static_cast<std::size_t>(last - first)};
}

std::vector<MatchIndex::Hit> MatchIndex::Search(const FeatureSet& query,
                                                SimilarityMetric metric,
                                                double tau) const {
  std::vector<Hit> hits;
  if (query.empty()) return hits;
  std::vector<std::uint32_t> query_ids;
  for (const std::string& feature : query.features) {
    if (auto id = FeatureId(feature)) query_ids.push_back(*id);
  }
  if (query_ids.empty()) return hits;

  const std::size_t q = query.size();
  const SizeRange range = FeasibleSizes(metric, q, tau);
  for (auto it = buckets_.lower_bound(range.min);
       it != buckets_.end() && it->first <= range.max; ++it) {
    const std::size_t size = it->first;
    const std::size_t alpha = MinOverlap(metric, q, size, tau);
    if (alpha > std::min(query_ids.size(), size)) continue;
    SearchSize(query_ids, q, size, alpha, metric, tau, hits);
  }
  std::sort(hits.begin(), hits.end(),
            [](const Hit& a, const Hit& b) { return a.term_id < b.term_id; });
  return hits;
}

void MatchIndex::SearchSize(std::span<const std::uint32_t> query_ids,
                            std::size_t query_size, std::size_t term_size,
                            std::size_t min_overlap, SimilarityMetric metric,
                            double tau, std::vector<Hit>& out) const {
  std::vector<std::span<const std::uint32_t>> lists;
  for (std::uint32_t feature : query_ids) {
    auto slice = Postings(feature, term_size);
    if (!slice.empty()) lists.push_back(slice);
  }
  const std::size_t k = lists.size();
  if (k < min_overlap) return;
  std::sort(lists.begin(), lists.end(),
            [](auto a, auto b) { return a.size() < b.size(); });

  // A term absent from the k - alpha + 1 shortest lists can appear in at
  // most alpha - 1 lists, so those lists generate every viable candidate.
  const std::size_t signature = k - min_overlap + 1;
  std::vector<std::uint32_t> pooled;
  for (std::size_t i = 0; i < signature; ++i) {
    pooled.insert(pooled.end(), lists[i].begin(), lists[i].end());
  }
  std::sort(pooled.begin(), pooled.end());
  std::vector<std::pair<std::uint32_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    candidates.emplace_back(pooled[i], j - i);
    i = j;
  }

  for (std::size_t i = signature; i < k && !candidates.empty(); ++i) {
    const std::size_t remaining = k - i - 1;
    std::size_t kept = 0;
    for (auto& [id, count] : candidates) {
      if (std::binary_search(lists[i].begin(), lists[i].end(), id)) ++count;
      if (count + remaining >= min_overlap) candidates[kept++] = {id, count};
    }
    candidates.resize(kept);
  }

  for (const auto& [id, count] : candidates) {
    if (count < min_overlap) continue;
    const double score =
        SimilarityFromCounts(count, query_size, term_size, metric);
    if (score >= tau) out.push_back({id, score});
  }
}

std::vector<Window> CandidateWindows(std::string_view text, int max_window,
                                     const Normalization& norm,
                                     bool split_sentences) {
  const std::vector<Token> tokens = Tokenize(text, norm);
  std::vector<std::size_t> sentence(tokens.size(), 0);
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    bool boundary = false;
    if (split_sentences) {
      std::string_view gap =
          text.substr(tokens[i - 1].end, tokens[i].begin - tokens[i - 1].end);
      for (std::size_t j = 0; j < gap.size() && !boundary; ++j) {
        const char c = gap[j];
        const bool next_space =
            j + 1 < gap.size() && (gap[j + 1] == ' ' || gap[j + 1] == '\t' ||
                                   gap[j + 1] == '\n' || gap[j + 1] == '\r');
        boundary = c == '\n' ||
                   ((c == '.' || c == '!' || c == '?') && next_space);
      }
    }
    sentence[i] = sentence[i - 1] + (boundary ? 1 : 0);
  }

  std::vector<Window> windows;
  const std::size_t limit = max_window < 1 ? 0 : max_window;
  for (std::size_t len = 1; len <= limit && len <= tokens.size(); ++len) {
    for (std::size_t first = 0; first + len <= tokens.size(); ++first) {
      const std::size_t last = first + len - 1;
      if (sentence[first] != sentence[last]) continue;
      Window window;
      window.start = tokens[first].begin;
      window.end = tokens[last].end;
      window.first_token = first;
      window.token_count = len;
      for (std::size_t t = first; t <= last; ++t) {
        if (t > first) window.ngram.push_back(' ');
        window.ngram += tokens[t].text;
      }
      windows.push_back(std::move(window));
    }
  }
  return windows;
}

std::vector<MatchSpan> FindMatches(std::string_view text,
                                   const MatchIndex& index,
                                   const MatcherConfig& config) {
  config.Validate();
  if (!(config.features == index.feature_config())) {
    throw Error(ErrorCode::kConfigMismatch,
                "matcher features differ from the index features");
  }
  std::vector<MatchSpan> spans;
  for (const Window& window :
       CandidateWindows(text, config.max_window,
                        config.features.normalization,
                        config.split_sentences)) {
    const FeatureSet query = MakeFeatureSet(window.ngram, config.features);
    for (const MatchIndex::Hit& hit :
         index.Search(query, config.metric, config.threshold)) {
      const IndexedTerm& term = index.term(hit.term_id);
      spans.push_back(MatchSpan{
          window.start, window.end,
          std::string(text.substr(window.start, window.end - window.start)),
          term.cuis, term.term, hit.score});
    }
  }
  std::sort(spans.begin(), spans.end(),
            [](const MatchSpan& a, const MatchSpan& b) {
              return std::tie(a.start, a.end, a.matched_term) <
                     std::tie(b.start, b.end, b.matched_term);
            });
  return spans;
}

std::vector<MatchSpan> ResolveOverlaps(std::vector<MatchSpan> spans,
                                       OverlapPolicy policy) {
  std::vector<std::size_t> order(spans.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const MatchSpan& a = spans[x];
    const MatchSpan& b = spans[y];
    if (policy == OverlapPolicy::kBestScore) {
      if (a.score != b.score) return a.score > b.score;
      if (a.length() != b.length()) return a.length() > b.length();
    } else {
      if (a.length() != b.length()) return a.length() > b.length();
      if (a.score != b.score) return a.score > b.score;
    }
    return std::tie(a.start, a.end, a.matched_term) <
           std::tie(b.start, b.end, b.matched_term);
  });

  std::map<std::size_t, std::size_t> taken;  // start -> end
  std::vector<std::size_t> selected;
  for (std::size_t i : order) {
    const MatchSpan& span = spans[i];
    auto next = taken.lower_bound(span.start);
    if (next != taken.end() && next->first < span.end) continue;
    if (next != taken.begin() && std::prev(next)->second > span.start) {
      continue;
    }
    taken.emplace(span.start, span.end);
    selected.push_back(i);
  }

  std::sort(selected.begin(), selected.end(),
            [&](std::size_t x, std::size_t y) {
              return spans[x].start < spans[y].start;
            });
  std::vector<MatchSpan> out;
  out.reserve(selected.size());
  for (std::size_t i : selected) out.push_back(std::move(spans[i]));
  return out;
}

std::vector<MatchSpan> ExtractConcepts(std::string_view text,
                                       const MatchIndex& index,
                                       const MatcherConfig& config) {
  return ResolveOverlaps(FindMatches(text, index, config),
                         config.overlap_policy);
}

ConceptMatcher::ConceptMatcher(std::shared_ptr<const MatchIndex> index,
                               MatcherConfig config)
    : index_(std::move(index)), config_(std::move(config)) {
  config_.Validate();
  if (!(config_.features == index_->feature_config())) {
    throw Error(ErrorCode::kConfigMismatch,
                "matcher features differ from the index features");
  }
}

ConceptMatcher ConceptMatcher::Build(const ConceptLexicon& lexicon,
                                     MatcherConfig config) {
  auto index = std::make_shared<const MatchIndex>(
      MatchIndex::Build(lexicon, config.features));
  return ConceptMatcher(std::move(index), std::move(config));
}

ConceptMatcher ConceptMatcher::WithThreshold(double threshold) const {
  MatcherConfig config = config_;
  config.threshold = threshold;
  return ConceptMatcher(index_, config);
}

}  // namespace problist
