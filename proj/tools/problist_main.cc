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

// Command-line front end for the problist stages.

#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "problist/error.h"
#include "problist/pipeline.h"

namespace {

using problist::RunConfig;

template <typename E>
using NameMap = std::map<std::string, E>;

void AddMatcherOptions(CLI::App* sub, RunConfig& config, bool threshold) {
  static const NameMap<problist::SimilarityMetric> kMetrics{
      {"jaccard", problist::SimilarityMetric::kJaccard},
      {"cosine", problist::SimilarityMetric::kCosine},
      {"overlap", problist::SimilarityMetric::kOverlap}};
  static const NameMap<problist::FeatureKind> kFeatures{
      {"token", problist::FeatureKind::kToken},
      {"char", problist::FeatureKind::kCharacterNgram}};
  static const NameMap<problist::OverlapPolicy> kPolicies{
      {"best_score", problist::OverlapPolicy::kBestScore},
      {"longest_span", problist::OverlapPolicy::kLongestSpan}};
  problist::MatcherConfig& m = config.matcher;
  sub->add_option("--metric", m.metric, "Similarity metric")
      ->transform(CLI::CheckedTransformer(kMetrics));
  if (threshold) {
    sub->add_option("--threshold", m.threshold, "Similarity threshold")
        ->check(CLI::Range(0.0, 1.0));
  }
  sub->add_option("--window", m.max_window, "Maximum tokens per span")
      ->check(CLI::PositiveNumber);
  sub->add_option("--features", m.features.kind, "Feature kind")
      ->transform(CLI::CheckedTransformer(kFeatures));
  sub->add_option("--ngram", m.features.n, "Character n-gram width")
      ->check(CLI::PositiveNumber);
  sub->add_option("--overlap-policy", m.overlap_policy,
                  "Overlap resolution policy")
      ->transform(CLI::CheckedTransformer(kPolicies));
  sub->add_flag("--split-sentences", m.split_sentences,
                "Keep windows inside sentences");
}

void AddParseOptions(CLI::App* sub, RunConfig& config) {
  static const NameMap<problist::SectionKind> kKinds{
      {"assessment", problist::SectionKind::kAssessment},
      {"other_subjective", problist::SectionKind::kOtherSubjective},
      {"objective", problist::SectionKind::kObjective}};
  sub->add_option("--headers", config.headers, "JSON header table");
  sub->add_option("--leading-kind", config.leading_kind,
                  "Section kind for text before the first header")
      ->transform(CLI::CheckedTransformer(kKinds));
}

void AddInput(CLI::App* sub, RunConfig& config, const char* help) {
  sub->add_option("--in", config.input, help)->required();
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  config.lexicon = problist::DefaultLexiconPath();
  std::string command;

  CLI::App app{"Problem-list summarization data tools"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML run file");
  app.set_version_flag("--version", std::string(PROBLIST_VERSION));
  app.add_option("--seed", config.seed, "Global random seed");
  app.add_option("--lexicon", config.lexicon, "Concept lexicon TSV");
  app.add_option("--out", config.output, "Output file");
  app.add_option("--threads", config.threads, "Worker threads, 0 for all");

  CLI::App* synth = app.add_subcommand("synth", "Generate synthetic notes");
  synth->add_option("--n-notes", config.synth.n_notes, "Number of notes");
  synth->add_option("--absent-indirect", config.synth.absent_indirect_fraction,
                    "Share of indirect problems absent from the assessment");
  synth->add_option("--min-problems", config.synth.min_problems);
  synth->add_option("--max-problems", config.synth.max_problems);

  CLI::App* parse =
      app.add_subcommand("parse", "Build task examples from notes");
  static const NameMap<problist::InputMode> kModes{
      {"assessment_only", problist::InputMode::kAssessmentOnly},
      {"assessment_plus_subjective",
       problist::InputMode::kAssessmentPlusSubjective}};
  AddInput(parse, config, "Notes JSONL");
  parse->add_option("--mode", config.mode, "Input mode")
      ->transform(CLI::CheckedTransformer(kModes));
  parse->add_option("--max-words", config.max_words, "Input word limit");
  AddParseOptions(parse, config);

  CLI::App* extract = app.add_subcommand("extract", "Extract concept spans");
  static const NameMap<problist::ExtractScope> kScopes{
      {"all", problist::ExtractScope::kAll},
      {"assessment", problist::ExtractScope::kAssessment}};
  AddInput(extract, config, "Notes JSONL");
  extract->add_option("--section", config.scope, "Text to search")
      ->transform(CLI::CheckedTransformer(kScopes));
  AddMatcherOptions(extract, config, true);
  AddParseOptions(extract, config);

  CLI::App* augment =
      app.add_subcommand("augment", "Synonym-replacement augmentation");
  AddInput(augment, config, "Task examples JSONL");
  augment->add_option("--cap", config.augment.cap, "Variants per example")
      ->check(CLI::PositiveNumber);
  augment->add_option("--threshold", config.augment.threshold,
                      "Concept identification threshold")
      ->check(CLI::Range(0.0, 1.0));
  augment->add_option("--report", config.report, "Quality report JSON");
  augment->add_option("--vectors", config.vectors, "Embedding vectors");
  AddMatcherOptions(augment, config, false);

  CLI::App* mask = app.add_subcommand("mask", "Build a span-corruption corpus");
  static const NameMap<problist::MaskPolicy> kMaskPolicies{
      {"token", problist::MaskPolicy::kTokenMask},
      {"concept", problist::MaskPolicy::kConceptMask}};
  AddInput(mask, config, "Notes JSONL");
  mask->add_option("--policy", config.mask.policy, "Masking policy")
      ->transform(CLI::CheckedTransformer(kMaskPolicies));
  mask->add_option("--ratio", config.mask.ratio, "Fraction of tokens masked");
  mask->add_option("--span-len", config.mask.mean_span_len,
                   "Tokens per random span");
  mask->add_option("--sentinel-prefix", config.mask.sentinel_prefix);
  AddMatcherOptions(mask, config, true);
  AddParseOptions(mask, config);

  CLI::App* baseline =
      app.add_subcommand("baseline", "Rule-based concept summaries");
  AddInput(baseline, config, "Notes JSONL");
  baseline->add_flag("--preferred-terms", config.baseline.preferred_terms,
                     "Emit preferred terms");
  baseline->add_option("--semantic-types", config.baseline.semantic_types,
                       "Keep only these semantic types")
      ->delimiter(',');
  AddMatcherOptions(baseline, config, true);
  AddParseOptions(baseline, config);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions");
  AddInput(evaluate, config, "Reference task examples JSONL");
  evaluate->add_option("--predictions", config.predictions,
                       "Predictions JSONL")
      ->required();
  evaluate->add_option("--csv", config.csv, "Also write a CSV report");
  evaluate->add_option("--vectors", config.vectors, "Embedding vectors");
  AddMatcherOptions(evaluate, config, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << '\n';
    return 2;
  }
  for (CLI::App* sub : app.get_subcommands()) command = sub->get_name();
  config.command = *problist::CommandFromName(command);

  try {
    const problist::RunResult result = problist::Run(config);
    for (const std::string& warning : result.warnings) {
      std::cerr << "warning: " << warning << '\n';
    }
    std::cout << result.counts.dump() << '\n';
  } catch (const problist::Error& e) {
    std::cerr << "error: " << problist::ErrorCodeName(e.code()) << ": "
              << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
