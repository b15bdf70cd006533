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

#include "problist/synthetic.h"

#include <map>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "problist/corpus.h"
#include "problist/corpus_io.h"
#include "problist/error.h"
#include "test_util.h"

namespace problist {
namespace {

std::string Serialize(const std::vector<NoteRecord>& notes) {
  std::ostringstream out;
  WriteNotes(out, notes);
  return out.str();
}

std::string AssessmentOf(const NoteRecord& record) {
  const ProgressNote note = ParseProgressNote(record.note_id, record.text);
  return BuildTaskExample(note, {}, InputMode::kAssessmentOnly).input_text;
}

TEST(SyntheticCorpusTest, DeterministicUnderSeed) {
  const SyntheticOptions options{.seed = 7, .n_notes = 10};
  EXPECT_EQ(Serialize(GenerateSyntheticCorpus(options, testing::ToyLexicon())),
            Serialize(GenerateSyntheticCorpus(options, testing::ToyLexicon())));
  const SyntheticOptions other{.seed = 8, .n_notes = 10};
  EXPECT_NE(Serialize(GenerateSyntheticCorpus(options, testing::ToyLexicon())),
            Serialize(GenerateSyntheticCorpus(other, testing::ToyLexicon())));
}

TEST(SyntheticCorpusTest, NoteIdsFollowInputOrder) {
  const auto notes =
      GenerateSyntheticCorpus({.n_notes = 3}, testing::ToyLexicon());
  ASSERT_EQ(notes.size(), 3u);
  EXPECT_EQ(notes[0].note_id, "synth-000000");
  EXPECT_EQ(notes[2].note_id, "synth-000002");
}

TEST(SyntheticCorpusTest, NoAbsentIndirectMeansEveryProblemIsInAssessment) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto notes = GenerateSyntheticCorpus(
        {.seed = seed, .n_notes = 1, .absent_indirect_fraction = 0.0},
        testing::ToyLexicon());
    ASSERT_EQ(notes.size(), 1u);
    const std::string assessment = AssessmentOf(notes[0]);
    const ReferenceSummary reference =
        BuildReferenceSummary(notes[0].annotations);
    EXPECT_FALSE(reference.empty_summary);
    for (const std::string& problem : reference.Problems()) {
      EXPECT_NE(assessment.find(problem), std::string::npos) << problem;
    }
  }
}

TEST(SyntheticCorpusTest, AbsentIndirectRateTracksOption) {
  const auto notes = GenerateSyntheticCorpus(
      {.seed = 21, .n_notes = 100, .absent_indirect_fraction = 0.5},
      testing::ToyLexicon());
  std::size_t indirect = 0;
  std::size_t absent = 0;
  for (const NoteRecord& record : notes) {
    const std::string assessment = AssessmentOf(record);
    for (const PlanAnnotation& a : record.annotations) {
      if (a.label != ProblemLabel::kIndirect) continue;
      ++indirect;
      absent += assessment.find(a.problem_text) == std::string::npos;
    }
  }
  ASSERT_GT(indirect, 50u);
  const double rate = static_cast<double>(absent) / indirect;
  EXPECT_NEAR(rate, 0.5, 0.10);
}

TEST(SyntheticCorpusTest, ProblemCountsStayInRange) {
  const auto notes = GenerateSyntheticCorpus({.seed = 4, .n_notes = 200},
                                             testing::ToyLexicon());
  for (const NoteRecord& record : notes) {
    const ReferenceSummary reference = BuildReferenceSummary(record.annotations);
    const std::size_t n = reference.Problems().size();
    EXPECT_GE(n, 1u);
    EXPECT_LE(n, 8u);
    EXPECT_EQ(reference.direct.empty(), false);
  }
}

TEST(SyntheticCorpusTest, ConceptVocabulariesAreDisjointWithinANote) {
  const ConceptLexicon& lexicon = testing::ToyLexicon();
  const auto notes = GenerateSyntheticCorpus({.seed = 8, .n_notes = 200}, lexicon);
  for (const NoteRecord& record : notes) {
    std::map<std::string, std::string> owner;
    for (const PlanAnnotation& a : record.annotations) {
      const auto found = lexicon.Lookup(a.problem_text);
      if (found.empty()) continue;  // not-relevant items
      for (const std::string& synonym : lexicon.SynonymsOf(found.front())) {
        for (const Token& t : Tokenize(synonym, Normalization{})) {
          auto [it, inserted] = owner.emplace(t.text, found.front());
          EXPECT_TRUE(inserted || it->second == found.front())
              << record.note_id << ": '" << t.text << "'";
        }
      }
    }
  }
}

TEST(SyntheticCorpusTest, RejectsBadOptions) {
  EXPECT_THROW(GenerateSyntheticCorpus({.n_notes = 0}, testing::ToyLexicon()),
               Error);
  EXPECT_THROW(GenerateSyntheticCorpus({}, ConceptLexicon()), Error);
}

}  // namespace
}  // namespace problist
