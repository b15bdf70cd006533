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

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "problist/error.h"
#include "problist/random.h"
#include "problist/similarity.h"
#include "test_util.h"

namespace problist {
namespace {

using testing::BruteForceMatches;
using testing::KeysOf;

FeatureSet Features(std::vector<std::string> items) {
  FeatureSet set;
  set.features = std::move(items);
  return set;
}

ConceptLexicon PancreaticLexicon() {
  return testing::MakeLexicon({{"C0235974", {"pancreatic cancer"}}});
}

MatcherConfig WithTau(double tau) {
  MatcherConfig config;
  config.threshold = tau;
  return config;
}

TEST(SimilarityTest, Examples) {
  const FeatureSet abc = Features({"a", "b", "c"});
  const FeatureSet bcd = Features({"b", "c", "d"});
  EXPECT_DOUBLE_EQ(Similarity(abc, bcd, SimilarityMetric::kJaccard), 0.5);
  for (SimilarityMetric m : {SimilarityMetric::kJaccard,
                             SimilarityMetric::kCosine,
                             SimilarityMetric::kOverlap}) {
    EXPECT_DOUBLE_EQ(Similarity(abc, abc, m), 1.0);
  }
  EXPECT_NEAR(Similarity(Features({"a", "b"}), bcd, SimilarityMetric::kCosine),
              1.0 / std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(Similarity(Features({"a", "b"}), bcd, SimilarityMetric::kCosine),
              0.4082, 1e-4);
  EXPECT_DOUBLE_EQ(
      Similarity(Features({"a", "b"}), bcd, SimilarityMetric::kOverlap), 0.5);
}

TEST(SimilarityTest, EmptySetIsAnError) {
  EXPECT_THROW(Similarity(Features({}), Features({"a"}),
                          SimilarityMetric::kJaccard),
               Error);
}

TEST(SimilarityTest, SymmetricOnRandomSets) {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    std::set<std::string> a, b;
    for (std::size_t i = 0, n = 1 + rng.Uniform(8); i < n; ++i) {
      a.insert(std::to_string(rng.Uniform(10)));
    }
    for (std::size_t i = 0, n = 1 + rng.Uniform(8); i < n; ++i) {
      b.insert(std::to_string(rng.Uniform(10)));
    }
    const FeatureSet fa = Features({a.begin(), a.end()});
    const FeatureSet fb = Features({b.begin(), b.end()});
    for (SimilarityMetric m : {SimilarityMetric::kJaccard,
                               SimilarityMetric::kCosine,
                               SimilarityMetric::kOverlap}) {
      const double s = Similarity(fa, fb, m);
      EXPECT_DOUBLE_EQ(s, Similarity(fb, fa, m));
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
    }
  }
}

// Every (size, overlap) pair reaching tau must pass both bounds.
TEST(SimilarityTest, PruningBoundsNeverExcludeMatches) {
  for (SimilarityMetric m : {SimilarityMetric::kJaccard,
                             SimilarityMetric::kCosine,
                             SimilarityMetric::kOverlap}) {
    for (double tau : {0.3, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
      for (std::size_t q = 1; q <= 12; ++q) {
        const SizeRange range = FeasibleSizes(m, q, tau);
        for (std::size_t y = 1; y <= 30; ++y) {
          for (std::size_t k = 0; k <= std::min(q, y); ++k) {
            if (SimilarityFromCounts(k, q, y, m) < tau) continue;
            EXPECT_GE(y, range.min) << MetricName(m) << tau << " " << q;
            EXPECT_LE(y, range.max) << MetricName(m) << tau << " " << q;
            EXPECT_GE(k, MinOverlap(m, q, y, tau));
          }
        }
      }
    }
  }
}

TEST(SimilarityTest, JaccardSizeRangeFormula) {
  const SizeRange range = FeasibleSizes(SimilarityMetric::kJaccard, 10, 0.7);
  EXPECT_EQ(range.min, 7u);
  EXPECT_EQ(range.max, 14u);
}

TEST(CandidateWindowsTest, Enumeration) {
  const auto windows = CandidateWindows("a b c", 2, Normalization{});
  std::vector<std::string> grams;
  for (const Window& w : windows) grams.push_back(w.ngram);
  EXPECT_EQ(grams, (std::vector<std::string>{"a", "b", "c", "a b", "b c"}));
  EXPECT_EQ(windows[3].start, 0u);
  EXPECT_EQ(windows[3].end, 3u);
}

TEST(CandidateWindowsTest, OnePerTokenAtWidthOne) {
  EXPECT_EQ(CandidateWindows("x y z w", 1, Normalization{}).size(), 4u);
  EXPECT_TRUE(CandidateWindows("", 7, Normalization{}).empty());
}

TEST(CandidateWindowsTest, ClosedFormCount) {
  std::string text;
  for (int i = 0; i < 10; ++i) text += "t" + std::to_string(i) + " ";
  std::size_t expected = 0;
  for (int k = 1; k <= 7; ++k) expected += 10 - k + 1;
  EXPECT_EQ(expected, 49u);
  EXPECT_EQ(CandidateWindows(text, 7, Normalization{}).size(), expected);
}

TEST(CandidateWindowsTest, OffsetsPointIntoOriginalText) {
  const std::string text = "Pt  w/ Heart-Attack.";
  for (const Window& w : CandidateWindows(text, 3, Normalization{})) {
    EXPECT_EQ(NormalizeText(text.substr(w.start, w.end - w.start),
                            Normalization{}),
              w.ngram);
  }
}

TEST(CandidateWindowsTest, SentenceSplitting) {
  const std::string text = "copd. chf\nsepsis now";
  EXPECT_EQ(CandidateWindows(text, 4, Normalization{}, true).size(), 5u);
  EXPECT_EQ(CandidateWindows(text, 4, Normalization{}, false).size(), 10u);
}

TEST(ExtractConceptsTest, ExactPancreaticCancer) {
  const ConceptMatcher matcher =
      ConceptMatcher::Build(PancreaticLexicon(), WithTau(1.0));
  const std::vector<MatchSpan> spans =
      matcher.Extract("pt with pancreatic cancer");
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].surface, "pancreatic cancer");
  EXPECT_EQ(spans[0].cuis, std::vector<std::string>{"C0235974"});
  EXPECT_EQ(spans[0].start, 8u);
  EXPECT_EQ(spans[0].end, 25u);
  EXPECT_DOUBLE_EQ(spans[0].score, 1.0);
}

TEST(ExtractConceptsTest, PancreasCancerDoesNotMatchAtDefaultThreshold) {
  const ConceptMatcher matcher =
      ConceptMatcher::Build(PancreaticLexicon(), WithTau(0.7));
  EXPECT_TRUE(matcher.Extract("pancreas cancer").empty());
}

TEST(ExtractConceptsTest, EmptyText) {
  const ConceptMatcher matcher =
      ConceptMatcher::Build(PancreaticLexicon(), WithTau(0.7));
  EXPECT_TRUE(matcher.Extract("").empty());
}

TEST(ExtractConceptsTest, ConfigMismatch) {
  const MatchIndex index =
      MatchIndex::Build(PancreaticLexicon(), FeatureConfig{});
  MatcherConfig config;
  config.features.kind = FeatureKind::kCharacterNgram;
  try {
    ExtractConcepts("pancreatic cancer", index, config);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigMismatch);
  }
}

TEST(ExtractConceptsTest, OutputSortedAndDisjoint) {
  const ConceptMatcher matcher =
      ConceptMatcher::Build(testing::ToyLexicon(), MatcherConfig{});
  const auto spans = matcher.Extract(
      "78 y.o female with COPD, HTN and heart attack, now low blood pressure "
      "and acute renal failure.");
  ASSERT_EQ(spans.size(), 5u);
  for (std::size_t i = 1; i < spans.size(); ++i) {
    EXPECT_LE(spans[i - 1].end, spans[i].start);
  }
  EXPECT_EQ(spans[0].surface, "COPD");
  EXPECT_EQ(spans[4].surface, "acute renal failure");
}

TEST(MatchIndexTest, Construction) {
  const ConceptLexicon lexicon = testing::MakeLexicon(
      {{"C0000001", {"heart attack", "myocardial infarction"}},
       {"C0000002", {"sepsis"}}});
  const MatchIndex index = MatchIndex::Build(lexicon, FeatureConfig{});
  ASSERT_EQ(index.size(), 3u);
  EXPECT_EQ(index.term(0).cuis, std::vector<std::string>{"C0000001"});
  EXPECT_EQ(index.term(1).cuis, std::vector<std::string>{"C0000001"});
  for (std::uint32_t t = 0; t < index.size(); ++t) {
    for (std::uint32_t f : index.term(t).feature_ids) {
      const auto postings = index.Postings(f);
      EXPECT_NE(std::find(postings.begin(), postings.end(), t), postings.end());
    }
    const auto& bucket = index.size_buckets().at(index.feature_count(t));
    EXPECT_NE(std::find(bucket.begin(), bucket.end(), t), bucket.end());
  }
  EXPECT_TRUE(index == MatchIndex::Build(lexicon, FeatureConfig{}));
}

TEST(MatchIndexTest, EmptyLexicon) {
  try {
    MatchIndex::Build(ConceptLexicon(), FeatureConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyLexicon);
  }
}

MatchSpan Span(std::size_t start, std::size_t end, double score,
               std::string term = "t") {
  MatchSpan s;
  s.start = start;
  s.end = end;
  s.score = score;
  s.matched_term = std::move(term);
  return s;
}

TEST(ResolveOverlapsTest, BestScoreKeepsHigherScore) {
  const auto out = ResolveOverlaps({Span(0, 5, 0.9), Span(3, 8, 0.8)},
                                   OverlapPolicy::kBestScore);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].start, 0u);
}

TEST(ResolveOverlapsTest, BestScoreTieKeepsLonger) {
  const auto out = ResolveOverlaps({Span(0, 5, 0.8), Span(2, 10, 0.8)},
                                   OverlapPolicy::kBestScore);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].length(), 8u);
}

TEST(ResolveOverlapsTest, LongestSpanPrefersLength) {
  const auto out = ResolveOverlaps({Span(0, 5, 0.9), Span(3, 12, 0.7)},
                                   OverlapPolicy::kLongestSpan);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].start, 3u);
}

TEST(ResolveOverlapsTest, EqualSpansKeepEarlierStart) {
  const auto out = ResolveOverlaps({Span(0, 4, 0.8), Span(2, 6, 0.8)},
                                   OverlapPolicy::kBestScore);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].start, 0u);
}

TEST(ResolveOverlapsTest, DisjointInputUnchanged) {
  const std::vector<MatchSpan> in = {Span(0, 2, 0.7), Span(2, 4, 0.9),
                                     Span(6, 9, 0.8)};
  EXPECT_EQ(ResolveOverlaps(in, OverlapPolicy::kBestScore), in);
  EXPECT_EQ(ResolveOverlaps(in, OverlapPolicy::kLongestSpan), in);
}

TEST(ResolveOverlapsTest, RandomOutputsAreDisjointSubsets) {
  Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<MatchSpan> spans;
    for (std::size_t i = 0, n = rng.Uniform(12); i < n; ++i) {
      const std::size_t start = rng.Uniform(30);
      spans.push_back(Span(start, start + 1 + rng.Uniform(6),
                           0.5 + 0.1 * rng.Uniform(6)));
    }
    std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
      return a.start < b.start;
    });
    for (OverlapPolicy p :
         {OverlapPolicy::kBestScore, OverlapPolicy::kLongestSpan}) {
      const auto out = ResolveOverlaps(spans, p);
      for (std::size_t i = 1; i < out.size(); ++i) {
        EXPECT_LE(out[i - 1].end, out[i].start);
      }
      // Every dropped span overlaps a kept one.
      for (const MatchSpan& s : spans) {
        bool covered = false;
        for (const MatchSpan& k : out) {
          covered = covered || (s.start < k.end && k.start < s.end);
        }
        EXPECT_TRUE(covered);
      }
    }
  }
}

struct OracleCase {
  SimilarityMetric metric;
  FeatureKind kind;
};

class OracleEquivalenceTest : public ::testing::TestWithParam<OracleCase> {};

TEST_P(OracleEquivalenceTest, IndexedEqualsBruteForce) {
  const OracleCase param = GetParam();
  Rng rng(100 + static_cast<int>(param.metric) * 10 +
          static_cast<int>(param.kind));
  for (int trial = 0; trial < 8; ++trial) {
    const ConceptLexicon lexicon = testing::RandomLexicon(rng, 60);
    const std::string text = testing::RandomText(rng, 60);
    for (double tau : {0.5, 0.6, 0.8, 1.0}) {
      MatcherConfig config;
      config.metric = param.metric;
      config.threshold = tau;
      config.features.kind = param.kind;
      const MatchIndex index = MatchIndex::Build(lexicon, config.features);
      EXPECT_EQ(KeysOf(FindMatches(text, index, config)),
                BruteForceMatches(text, index, config))
          << "tau " << tau << " text " << text;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    AllMetrics, OracleEquivalenceTest,
    ::testing::Values(
        OracleCase{SimilarityMetric::kJaccard, FeatureKind::kToken},
        OracleCase{SimilarityMetric::kCosine, FeatureKind::kToken},
        OracleCase{SimilarityMetric::kOverlap, FeatureKind::kToken},
        OracleCase{SimilarityMetric::kJaccard, FeatureKind::kCharacterNgram},
        OracleCase{SimilarityMetric::kCosine, FeatureKind::kCharacterNgram},
        OracleCase{SimilarityMetric::kOverlap, FeatureKind::kCharacterNgram}));

TEST(MatcherPropertyTest, RaisingThresholdNeverAddsMatches) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const ConceptLexicon lexicon = testing::RandomLexicon(rng, 80);
    const std::string text = testing::RandomText(rng, 80);
    const MatchIndex index = MatchIndex::Build(lexicon, FeatureConfig{});
    std::set<testing::SpanKey> previous;
    bool first = true;
    for (double tau : {0.3, 0.5, 0.7, 0.9, 1.0}) {
      const auto keys = KeysOf(FindMatches(text, index, WithTau(tau)));
      if (!first) {
        for (const auto& k : keys) EXPECT_TRUE(previous.count(k));
      }
      previous = keys;
      first = false;
    }
  }
}

TEST(MatcherPropertyTest, SurfacesRescoreAboveThreshold) {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const ConceptLexicon lexicon = testing::RandomLexicon(rng, 80);
    const std::string text = testing::RandomText(rng, 80);
    const ConceptMatcher matcher = ConceptMatcher::Build(lexicon, WithTau(0.6));
    for (const MatchSpan& s : matcher.Extract(text)) {
      EXPECT_EQ(s.surface, text.substr(s.start, s.end - s.start));
      const double score =
          Similarity(MakeFeatureSet(s.surface, FeatureConfig{}),
                     MakeFeatureSet(s.matched_term, FeatureConfig{}),
                     SimilarityMetric::kJaccard);
      EXPECT_GE(score, 0.6);
      EXPECT_DOUBLE_EQ(score, s.score);
    }
  }
}

TEST(ConceptMatcherTest, WithThresholdSharesIndex) {
  const ConceptMatcher matcher =
      ConceptMatcher::Build(testing::ToyLexicon(), MatcherConfig{});
  const ConceptMatcher exact = matcher.WithThreshold(1.0);
  EXPECT_EQ(&matcher.index(), &exact.index());
  EXPECT_DOUBLE_EQ(exact.config().threshold, 1.0);
  EXPECT_THROW(matcher.WithThreshold(0.0), Error);
}

TEST(MatcherConfigTest, Defaults) {
  EXPECT_DOUBLE_EQ(MatcherConfig::Extraction().threshold, 0.7);
  EXPECT_EQ(MatcherConfig::Extraction().max_window, 7);
  EXPECT_EQ(MatcherConfig::Extraction().metric, SimilarityMetric::kJaccard);
  EXPECT_EQ(MatcherConfig::Extraction().features.kind, FeatureKind::kToken);
  EXPECT_DOUBLE_EQ(MatcherConfig::Augmentation().threshold, 1.0);
  MatcherConfig bad;
  bad.max_window = 0;
  EXPECT_THROW(bad.Validate(), Error);
}

}  // namespace
}  // namespace problist
