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

#include "problist/evaluation.h"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "problist/error.h"
#include "problist/synthetic.h"
#include "test_util.h"

namespace problist {
namespace {

const ConceptMatcher& Matcher() {
  static const ConceptMatcher* matcher = new ConceptMatcher(
      ConceptMatcher::Build(testing::ToyLexicon(), MatcherConfig::Extraction()));
  return *matcher;
}

TaskExample Example(std::string id, std::string input,
                    std::vector<std::string> direct,
                    std::vector<std::string> indirect = {}) {
  TaskExample example;
  example.note_id = std::move(id);
  example.input_text = std::move(input);
  example.reference =
      MakeReferenceSummary(std::move(direct), std::move(indirect));
  return example;
}

PredictionTable Predict(
    const std::vector<std::pair<std::string, std::string>>& rows) {
  PredictionTable table;
  for (const auto& [id, summary] : rows) table[id].summary = summary;
  return table;
}

TEST(ExtractCuiSetTest, UnionOverSegments) {
  EXPECT_EQ(ExtractCuiSet("sepsis; copd", Matcher()),
            (std::set<std::string>{"C1000004", "C1000006"}));
  EXPECT_TRUE(ExtractCuiSet("", Matcher()).empty());
}

TEST(PartitionSubgroupsTest, HypotensionHypertension) {
  const SubgroupViews views = PartitionSubgroups(
      Example("a", "pt remains hypotensive, hypotension on pressors",
              {"hypotension"}, {"hypertension"}),
      Matcher());
  EXPECT_EQ(views[Subgroup::kExplicit], "hypotension");
  EXPECT_EQ(views[Subgroup::kDirect], "hypotension");
  EXPECT_EQ(views[Subgroup::kIndirect], "hypertension");
  EXPECT_EQ(views[Subgroup::kAll], "hypotension; hypertension");
}

TEST(PartitionSubgroupsTest, NoConceptsInInput) {
  const SubgroupViews views = PartitionSubgroups(
      Example("a", "doing well today", {"sepsis"}, {"copd"}), Matcher());
  EXPECT_TRUE(views[Subgroup::kExplicit].empty());
  EXPECT_TRUE(views.explicit_problems.empty());
}

TEST(PartitionSubgroupsTest, FullOverlap) {
  const SubgroupViews views = PartitionSubgroups(
      Example("a", "copd flare with sepsis", {"sepsis"}, {"COPD"}), Matcher());
  EXPECT_EQ(views[Subgroup::kExplicit], views[Subgroup::kAll]);
}

TEST(PartitionSubgroupsTest, ExplicitIsSubsequenceOfProblems) {
  const ConceptLexicon& lexicon = testing::ToyLexicon();
  const auto notes = GenerateSyntheticCorpus({.seed = 4, .n_notes = 80}, lexicon);
  for (const NoteRecord& record : notes) {
    const TaskExample example = BuildTaskExample(
        ParseProgressNote(record.note_id, record.text),
        BuildReferenceSummary(record.annotations),
        InputMode::kAssessmentOnly);
    const SubgroupViews views = PartitionSubgroups(example, Matcher());
    const std::vector<std::string> all = example.reference.Problems();
    std::size_t cursor = 0;
    for (const std::string& p : views.explicit_problems) {
      while (cursor < all.size() && all[cursor] != p) ++cursor;
      ASSERT_LT(cursor, all.size()) << p;
      ++cursor;
    }
  }
}

TEST(EvaluateCorpusTest, IdentityPredictionsScoreOne) {
  const std::vector<TaskExample> refs = {
      Example("a", "sepsis and copd", {"sepsis"}, {"copd"}),
      Example("b", "htn", {"hypertension"})};
  PredictionTable predictions;
  for (const TaskExample& example : refs) {
    const SubgroupViews views = PartitionSubgroups(example, Matcher());
    for (Subgroup s : kAllSubgroups) {
      predictions[example.note_id].per_subgroup[s] = views[s];
    }
  }
  const EvalReport report = EvaluateCorpus(refs, predictions, Matcher());
  for (Subgroup s : kAllSubgroups) {
    if (report[s].n_examples == 0) continue;
    EXPECT_DOUBLE_EQ(report[s].rouge_l.f1, 1.0) << SubgroupName(s);
    EXPECT_DOUBLE_EQ(report[s].cui.f1, 1.0) << SubgroupName(s);
  }
  EXPECT_EQ(report[Subgroup::kAll].n_examples, 2u);
  EXPECT_EQ(report[Subgroup::kIndirect].n_examples, 1u);
  EXPECT_EQ(report.missing_predictions, 0u);
}

TEST(EvaluateCorpusTest, EmptyAndMissingPredictionsScoreZero) {
  const std::vector<TaskExample> refs = {
      Example("a", "sepsis and copd", {"sepsis"}, {"copd"}),
      Example("b", "htn", {"hypertension"})};
  const EvalReport report = EvaluateCorpus(refs, Predict({{"a", ""}}), Matcher());
  for (Subgroup s : kAllSubgroups) {
    EXPECT_EQ(report[s].rouge_l.f1, 0.0);
    EXPECT_EQ(report[s].cui.f1, 0.0);
  }
  EXPECT_EQ(report[Subgroup::kAll].n_examples, 2u);
  EXPECT_EQ(report.missing_predictions, 1u);
}

TEST(EvaluateCorpusTest, HandScoredTwoExampleCorpus) {
  // a: All "sepsis; copd" vs "sepsis; pneumonia": rouge 1/2 each way, cui
  //    1/2 each way. Direct "sepsis": P 1/2, R 1, F 2/3 for both metrics.
  //    Indirect "copd": zeros.
  // b: All "heart failure; diabetes" vs "diabetes mellitus": rouge P 1/2,
  //    R 1/3, F 2/5; cui P 1, R 1/2, F 2/3. No indirect problems.
  const std::vector<TaskExample> refs = {
      Example("a", "pt with sepsis", {"sepsis"}, {"copd"}),
      Example("b", "chf and diabetes", {"heart failure", "diabetes"})};
  const EvalReport report = EvaluateCorpus(
      refs, Predict({{"a", "sepsis; pneumonia"}, {"b", "diabetes mellitus"}}),
      Matcher());
  const SubgroupScore& all = report[Subgroup::kAll];
  EXPECT_EQ(all.n_examples, 2u);
  EXPECT_NEAR(all.rouge_l.precision, (0.5 + 0.5) / 2, 1e-12);
  EXPECT_NEAR(all.rouge_l.recall, (0.5 + 1.0 / 3) / 2, 1e-12);
  EXPECT_NEAR(all.rouge_l.f1, (0.5 + 0.4) / 2, 1e-12);
  EXPECT_NEAR(all.cui.precision, (0.5 + 1.0) / 2, 1e-12);
  EXPECT_NEAR(all.cui.recall, (0.5 + 0.5) / 2, 1e-12);
  EXPECT_NEAR(all.cui.f1, (0.5 + 2.0 / 3) / 2, 1e-12);

  const SubgroupScore& direct = report[Subgroup::kDirect];
  EXPECT_EQ(direct.n_examples, 2u);
  EXPECT_NEAR(direct.rouge_l.f1, (2.0 / 3 + 0.4) / 2, 1e-12);
  EXPECT_NEAR(direct.cui.f1, (2.0 / 3 + 2.0 / 3) / 2, 1e-12);

  const SubgroupScore& indirect = report[Subgroup::kIndirect];
  EXPECT_EQ(indirect.n_examples, 1u);
  EXPECT_EQ(indirect.rouge_l.f1, 0.0);
  EXPECT_EQ(indirect.cui.f1, 0.0);

  const SubgroupScore& explicit_mentions = report[Subgroup::kExplicit];
  EXPECT_EQ(explicit_mentions.n_examples, 2u);
  EXPECT_NEAR(explicit_mentions.rouge_l.f1, direct.rouge_l.f1, 1e-12);
  EXPECT_FALSE(all.sent_cosine.has_value());
}

TEST(EvaluateCorpusTest, CosineOnlyWhereBothVectorsExist) {
  const std::vector<TaskExample> refs = {
      Example("a", "sepsis", {"sepsis"}), Example("b", "copd", {"copd"})};
  VectorTable vectors;
  vectors[EvalVectorId("a", Subgroup::kAll, true)] = {1, 0};
  vectors[EvalVectorId("a", Subgroup::kAll, false)] = {1, 1};
  vectors[EvalVectorId("b", Subgroup::kAll, true)] = {1, 0};
  const EvalReport report = EvaluateCorpus(
      refs, Predict({{"a", "sepsis"}, {"b", "copd"}}), Matcher(), &vectors);
  ASSERT_TRUE(report[Subgroup::kAll].sent_cosine.has_value());
  EXPECT_NEAR(*report[Subgroup::kAll].sent_cosine, 1 / std::sqrt(2.0), 1e-12);
  EXPECT_FALSE(report[Subgroup::kDirect].sent_cosine.has_value());
  EXPECT_EQ(EvalVectorId("a", Subgroup::kExplicit, false), "a:explicit:pred");
}

TEST(EvaluateCorpusTest, ThreadCountDoesNotChangeReport) {
  const ConceptLexicon& lexicon = testing::ToyLexicon();
  std::vector<TaskExample> refs;
  PredictionTable predictions;
  for (const NoteRecord& record :
       GenerateSyntheticCorpus({.seed = 9, .n_notes = 50}, lexicon)) {
    refs.push_back(BuildTaskExample(ParseProgressNote(record.note_id, record.text),
                                    BuildReferenceSummary(record.annotations),
                                    InputMode::kAssessmentOnly));
    predictions[record.note_id].summary = refs.back().input_text;
  }
  const EvalReport one = EvaluateCorpus(refs, predictions, Matcher(), nullptr, 1);
  const EvalReport four = EvaluateCorpus(refs, predictions, Matcher(), nullptr, 4);
  EXPECT_EQ(one.ToJson().dump(), four.ToJson().dump());
}

TEST(EvalReportTest, JsonAndCsvShape) {
  const EvalReport report = EvaluateCorpus(
      std::vector<TaskExample>{Example("a", "sepsis", {"sepsis"})},
      Predict({{"a", "sepsis"}}), Matcher());
  const nlohmann::json json = report.ToJson();
  for (const char* name : {"explicit", "direct", "indirect", "all"}) {
    ASSERT_TRUE(json["subgroups"].contains(name)) << name;
    EXPECT_TRUE(json["subgroups"][name]["sent_cosine"].is_null());
  }
  EXPECT_EQ(json["matcher"]["metric"], "jaccard");
  EXPECT_DOUBLE_EQ(json["matcher"]["threshold"].get<double>(), 0.7);
  EXPECT_EQ(json["examples"], 1);
  const std::string csv = report.ToCsv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_TRUE(csv.starts_with("subgroup,n_examples,rouge_l_precision"));
}

TEST(ReadPredictionsTest, SummaryAndSubgroupOverrides) {
  std::istringstream in(
      R"({"note_id":"a","summary":"sepsis"})"
      "\n"
      R"({"note_id":"a","summary":"copd","subgroup":"indirect"})"
      "\n");
  const PredictionTable table = ReadPredictions(in);
  const Prediction& p = table.at("a");
  EXPECT_EQ(p.For(Subgroup::kAll), "sepsis");
  EXPECT_EQ(p.For(Subgroup::kIndirect), "copd");
}

TEST(ReadPredictionsTest, SchemaViolations) {
  for (const std::string text :
       {R"({"note_id":1,"summary":"x"})", R"({"note_id":"a"})",
        R"({"note_id":"a","summary":"x","subgroup":"most"})",
        R"({"note_id":"a","summary":"x"})"
        "\n"
        R"({"note_id":"a","summary":"y"})"}) {
    std::istringstream in(text);
    try {
      ReadPredictions(in);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSchemaViolation);
    }
  }
}

}  // namespace
}  // namespace problist
