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

// Batch stages behind the command-line tool. Every stage reads its inputs,
// writes its artifacts and a "<out>.manifest.json" recording the resolved
// configuration, input and artifact digests, and counts.

#ifndef PROBLIST_PIPELINE_H_
#define PROBLIST_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "problist/augmenter.h"
#include "problist/baseline.h"
#include "problist/corpus.h"
#include "problist/masker.h"
#include "problist/matcher.h"
#include "problist/synthetic.h"

namespace problist {

enum class Command { kSynth, kParse, kExtract, kAugment, kMask, kBaseline,
                     kEvaluate };

std::string_view CommandName(Command command);
std::optional<Command> CommandFromName(std::string_view name);

enum class ExtractScope { kAll, kAssessment };

struct RunConfig {
  Command command = Command::kSynth;
  std::uint64_t seed = 7;
  unsigned threads = 0;  // 0 selects the hardware concurrency

  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path lexicon;
  std::filesystem::path predictions;  // evaluate
  std::filesystem::path vectors;      // augment quality report, evaluate
  std::filesystem::path report;       // augment quality report
  std::filesystem::path csv;          // evaluate
  std::filesystem::path headers;      // JSON header table for note parsing

  MatcherConfig matcher = MatcherConfig::Extraction();
  AugConfig augment;
  MaskConfig mask;
  SyntheticOptions synth;
  BaselineOptions baseline;
  SectionKind leading_kind = SectionKind::kOtherSubjective;
  InputMode mode = InputMode::kAssessmentOnly;
  std::size_t max_words = kDefaultMaxInputWords;
  ExtractScope scope = ExtractScope::kAll;

  // Resolved settings as recorded in the manifest.
  nlohmann::json ToJson() const;
};

// The toy lexicon shipped with the project.
std::filesystem::path DefaultLexiconPath();

std::filesystem::path ManifestPath(const std::filesystem::path& output);

struct RunResult {
  nlohmann::json counts = nlohmann::json::object();
  std::vector<std::filesystem::path> artifacts;
  std::vector<std::string> warnings;
};

// Runs one stage. Throws Error on fatal failures, including kIoError for
// missing inputs.
RunResult Run(const RunConfig& config);

}  // namespace problist

#endif  // PROBLIST_PIPELINE_H_
