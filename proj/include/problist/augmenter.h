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

// Synonym-replacement augmentation of (input, summary) pairs.
//
// Concepts found by exact matching become replacement slots whose choices
// are the original surface followed by the other synonyms of the slot's
// concept. Each variant picks one choice per slot across input and summary
// slots; the all-original tuple is never produced.

#ifndef PROBLIST_AUGMENTER_H_
#define PROBLIST_AUGMENTER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "problist/corpus.h"
#include "problist/lexicon.h"
#include "problist/matcher.h"
#include "problist/metrics.h"

namespace problist {

struct ReplacementSlot {
  MatchSpan span;
  // Lexicographically smallest of span.cuis.
  std::string cui;
  // choices[0] is the original surface; the rest are synonyms whose
  // normalized forms differ from it and from each other.
  std::vector<std::string> choices;
};

enum class TextField { kInput, kSummary };

std::string_view TextFieldName(TextField field);

struct Replacement {
  TextField field = TextField::kInput;
  std::size_t start = 0;  // byte range in the original text
  std::size_t end = 0;
  std::string from;
  std::string to;
  std::string cui;

  friend bool operator==(const Replacement&, const Replacement&) = default;
};

struct AugmentedPair {
  std::string origin_id;
  std::size_t variant_index = 0;
  std::string input_text;
  std::string summary_text;
  // Only slots whose surface changed, input slots first, each field in
  // offset order.
  std::vector<Replacement> replacements;

  friend bool operator==(const AugmentedPair&, const AugmentedPair&) = default;
};

struct AugConfig {
  std::size_t cap = 1000;
  std::uint64_t seed = 0;
  double threshold = 1.0;

  void Validate() const;
};

std::vector<ReplacementSlot> PlanSlots(std::string_view text,
                                       const ConceptMatcher& matcher,
                                       const ConceptLexicon& lexicon);

// Plans each "; "-separated problem on its own so no match straddles two
// problems. Offsets refer to the whole summary.
std::vector<ReplacementSlot> PlanSummarySlots(std::string_view summary,
                                              const ConceptMatcher& matcher,
                                              const ConceptLexicon& lexicon);

using ChoiceTuple = std::vector<std::uint32_t>;

// Choice tuples over slots with the given choice counts, excluding the
// all-zero tuple. When the space fits in `cap` every tuple is returned in
// lexicographic order; otherwise exactly `cap` distinct tuples are drawn
// uniformly without replacement and returned sorted. Throws
// kNoVariantsPossible when no count exceeds 1.
std::vector<ChoiceTuple> EnumerateVariants(
    std::span<const std::size_t> choice_counts, std::size_t cap,
    std::uint64_t seed);

// Variants of one example. Slot planning runs at config.threshold; the
// sampling seed is derived from (config.seed, note_id). Returns an empty
// list when no slot has an alternative.
std::vector<AugmentedPair> AugmentExample(const TaskExample& example,
                                          const ConceptMatcher& matcher,
                                          const ConceptLexicon& lexicon,
                                          const AugConfig& config);

// Rewrites `original` with the replacements recorded for `field`.
std::string ApplyReplacements(std::string_view original,
                              std::span<const Replacement> replacements,
                              TextField field);

struct AugmentStats {
  std::size_t examples = 0;
  std::size_t skipped = 0;  // examples without any variant
  std::size_t pairs = 0;
};

// Output is in example order regardless of thread count.
std::vector<AugmentedPair> AugmentCorpus(std::span<const TaskExample> examples,
                                         const ConceptMatcher& matcher,
                                         const ConceptLexicon& lexicon,
                                         const AugConfig& config,
                                         unsigned threads,
                                         AugmentStats* stats = nullptr);

nlohmann::json AugmentedPairToJson(const AugmentedPair& pair,
                                   const TaskExample& origin);

struct FieldQuality {
  double mean_jaccard = 0.0;
  double length_diff_mean = 0.0;
  double length_diff_std = 0.0;  // population
  std::optional<double> mean_embedding_cosine;
};

struct QualityReport {
  std::size_t pairs = 0;
  FieldQuality input;
  FieldQuality summary;

  nlohmann::json ToJson() const;
};

struct OriginalText {
  std::string input;
  std::string summary;
};

// Vector ids are "<origin_id>:input" / "<origin_id>:summary" for originals
// and "<origin_id>#<variant>:input" / ... for variants.
std::string VectorId(std::string_view origin_id,
                     std::optional<std::size_t> variant, TextField field);

// Throws kInvalidArgument for an empty pair list or unknown origin and
// kMissingVector when vectors are given but an id is absent.
QualityReport BuildQualityReport(
    std::span<const AugmentedPair> pairs,
    const std::unordered_map<std::string, OriginalText>& originals,
    const VectorTable* vectors = nullptr);

}  // namespace problist

#endif  // PROBLIST_AUGMENTER_H_
