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

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "problist/corpus.h"
#include "problist/evaluation.h"
#include "problist/metrics.h"
#include "problist/synthetic.h"
#include "test_util.h"

namespace problist {
namespace {

const ConceptMatcher& Matcher() {
  static const ConceptMatcher* matcher = new ConceptMatcher(
      ConceptMatcher::Build(testing::ToyLexicon(), MatcherConfig::Extraction()));
  return *matcher;
}

std::string Summarize(std::string_view text, const BaselineOptions& options = {}) {
  return RuleBasedSummarize(text, Matcher(), testing::ToyLexicon(), options);
}

TEST(RuleBasedSummarizeTest, ListsConceptsInOrder) {
  EXPECT_EQ(Summarize("72M with sepsis from a UTI, now with AKI and hypotension."),
            "sepsis; UTI; AKI; hypotension");
}

TEST(RuleBasedSummarizeTest, DeduplicatesByCui) {
  EXPECT_EQ(Summarize("COPD exacerbation. Hx of COPD on home O2."), "COPD");
  EXPECT_EQ(Summarize("CHF exacerbation, known heart failure"), "CHF");
}

TEST(RuleBasedSummarizeTest, NoConceptsGivesEmptySummary) {
  EXPECT_EQ(Summarize("feeling better today"), "");
  EXPECT_EQ(Summarize(""), "");
}

TEST(RuleBasedSummarizeTest, SurfacesAreVerbatim) {
  const std::string text = "Pt with Septicemia and ARDS; Heart Attack last year";
  const std::string summary = Summarize(text);
  std::size_t start = 0;
  while (start <= summary.size()) {
    std::size_t end = summary.find("; ", start);
    if (end == std::string::npos) end = summary.size();
    const std::string surface = summary.substr(start, end - start);
    EXPECT_NE(text.find(surface), std::string::npos) << surface;
    start = end + 2;
  }
}

TEST(RuleBasedSummarizeTest, PreferredTermsAndSemanticTypes) {
  BaselineOptions preferred;
  preferred.preferred_terms = true;
  EXPECT_EQ(Summarize("COPD and MI", preferred),
            "chronic obstructive pulmonary disease; myocardial infarction");
  BaselineOptions filtered;
  filtered.semantic_types = {"T046"};
  EXPECT_EQ(Summarize("COPD and MI", filtered), "COPD");
}

TEST(RuleBasedSummarizeTest, RecoversSyntheticReferences) {
  const ConceptLexicon& lexicon = testing::ToyLexicon();
  SyntheticOptions options;
  options.seed = 31;
  options.n_notes = 100;
  options.absent_indirect_fraction = 0.0;
  for (const NoteRecord& record : GenerateSyntheticCorpus(options, lexicon)) {
    const ProgressNote note = ParseProgressNote(record.note_id, record.text);
    const TaskExample example = BuildTaskExample(
        note, BuildReferenceSummary(record.annotations), InputMode::kAssessmentOnly);
    if (example.reference.empty_summary) continue;
    const std::string summary = Summarize(example.input_text);
    const PrfScore score =
        CuiF(ExtractCuiSet(example.reference.text, Matcher()),
             ExtractCuiSet(summary, Matcher()));
    EXPECT_DOUBLE_EQ(score.f1, 1.0) << record.note_id << ": " << summary;
  }
}

}  // namespace
}  // namespace problist
