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

#include "problist/augmenter.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "problist/error.h"
#include "problist/parallel.h"
#include "problist/random.h"
#include "problist/text.h"

namespace problist {
namespace {

double TokenSetJaccard(std::string_view a, std::string_view b) {
  const std::vector<std::string> ta = EvalTokenize(a);
  const std::vector<std::string> tb = EvalTokenize(b);
  const std::set<std::string> sa(ta.begin(), ta.end());
  const std::set<std::string> sb(tb.begin(), tb.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t common = 0;
  for (const std::string& t : sa) common += sb.count(t);
  return static_cast<double>(common) /
         static_cast<double>(sa.size() + sb.size() - common);
}

const std::vector<double>& VectorFor(const VectorTable& vectors,
                                     const std::string& id) {
  auto it = vectors.find(id);
  if (it == vectors.end()) {
    throw Error(ErrorCode::kMissingVector, "no vector for id " + id);
  }
  return it->second;
}

class FieldAccumulator {
 public:
  void Add(std::string_view original, std::string_view variant) {
    jaccard_.push_back(TokenSetJaccard(original, variant));
    const double a = static_cast<double>(EvalTokenize(original).size());
    const double b = static_cast<double>(EvalTokenize(variant).size());
    length_diff_.push_back(std::fabs(a - b));
  }
  void AddCosine(double cosine) { cosine_.push_back(cosine); }

  FieldQuality Finish(bool with_cosine) const {
    FieldQuality quality;
    quality.mean_jaccard = Mean(jaccard_);
    quality.length_diff_mean = Mean(length_diff_);
    double variance = 0.0;
    for (double d : length_diff_) {
      variance += (d - quality.length_diff_mean) * (d - quality.length_diff_mean);
    }
    if (!length_diff_.empty()) variance /= length_diff_.size();
    quality.length_diff_std = std::sqrt(variance);
    if (with_cosine) quality.mean_embedding_cosine = Mean(cosine_);
    return quality;
  }

 private:
  static double Mean(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / values.size();
  }

  std::vector<double> jaccard_;
  std::vector<double> length_diff_;
  std::vector<double> cosine_;
};

nlohmann::json FieldQualityJson(const FieldQuality& q) {
  nlohmann::json json{{"mean_jaccard", q.mean_jaccard},
                      {"length_diff_mean", q.length_diff_mean},
                      {"length_diff_std", q.length_diff_std}};
  if (q.mean_embedding_cosine) {
    json["mean_embedding_cosine"] = *q.mean_embedding_cosine;
  }
  return json;
}

}  // namespace

std::string_view TextFieldName(TextField field) {
  return field == TextField::kInput ? "input" : "summary";
}

void AugConfig::Validate() const {
  if (cap < 1) throw Error(ErrorCode::kInvalidArgument, "cap must be >= 1");
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "augmentation threshold must lie in (0, 1]");
  }
}

std::vector<ReplacementSlot> PlanSlots(std::string_view text,
                                       const ConceptMatcher& matcher,
                                       const ConceptLexicon& lexicon) {
  const Normalization& norm = lexicon.normalization();
  std::vector<ReplacementSlot> slots;
  for (MatchSpan& span : matcher.Extract(text)) {
    if (span.cuis.empty()) continue;
    ReplacementSlot slot;
    slot.cui = *std::min_element(span.cuis.begin(), span.cuis.end());
    slot.choices.push_back(span.surface);
    std::set<std::string> seen{NormalizeText(span.surface, norm)};
    for (std::string& synonym : lexicon.SynonymsOf(slot.cui)) {
      if (seen.insert(NormalizeText(synonym, norm)).second) {
        slot.choices.push_back(std::move(synonym));
      }
    }
    slot.span = std::move(span);
    slots.push_back(std::move(slot));
  }
  return slots;
}

std::vector<ReplacementSlot> PlanSummarySlots(std::string_view summary,
                                              const ConceptMatcher& matcher,
                                              const ConceptLexicon& lexicon) {
  std::vector<ReplacementSlot> slots;
  std::size_t offset = 0;
  while (true) {
    const std::size_t pos = summary.find(kProblemSeparator, offset);
    const std::size_t end = pos == std::string_view::npos ? summary.size() : pos;
    for (ReplacementSlot& slot :
         PlanSlots(summary.substr(offset, end - offset), matcher, lexicon)) {
      slot.span.start += offset;
      slot.span.end += offset;
      slots.push_back(std::move(slot));
    }
    if (pos == std::string_view::npos) break;
    offset = pos + kProblemSeparator.size();
  }
  return slots;
}

std::vector<ChoiceTuple> EnumerateVariants(
    std::span<const std::size_t> choice_counts, std::size_t cap,
    std::uint64_t seed) {
  if (cap < 1) throw Error(ErrorCode::kInvalidArgument, "cap must be >= 1");
  if (std::find(choice_counts.begin(), choice_counts.end(), 0) !=
      choice_counts.end()) {
    throw Error(ErrorCode::kInvalidArgument, "every slot needs a choice");
  }
  if (std::all_of(choice_counts.begin(), choice_counts.end(),
                  [](std::size_t c) { return c <= 1; })) {
    throw Error(ErrorCode::kNoVariantsPossible,
                "no slot has an alternative surface");
  }

  // Saturates once the space is known to exceed cap + 1.
  const std::size_t limit = cap + 2;
  std::size_t space = 1;
  for (std::size_t count : choice_counts) {
    space = space > limit / count ? limit : std::min(limit, space * count);
  }

  const std::size_t n = choice_counts.size();
  std::vector<ChoiceTuple> tuples;
  if (space - 1 <= cap) {
    ChoiceTuple tuple(n, 0);
    while (true) {
      std::size_t pos = n;
      while (pos > 0) {
        --pos;
        if (++tuple[pos] < choice_counts[pos]) break;
        tuple[pos] = 0;
        if (pos == 0) return tuples;
      }
      tuples.push_back(tuple);
    }
  }

  Rng rng(seed);
  std::set<ChoiceTuple> drawn;
  ChoiceTuple tuple(n);
  while (drawn.size() < cap) {
    bool identity = true;
    for (std::size_t i = 0; i < n; ++i) {
      tuple[i] = static_cast<std::uint32_t>(rng.Uniform(choice_counts[i]));
      identity = identity && tuple[i] == 0;
    }
    if (!identity) drawn.insert(tuple);
  }
  return {drawn.begin(), drawn.end()};
}

std::string ApplyReplacements(std::string_view original,
                              std::span<const Replacement> replacements,
                              TextField field) {
  std::vector<const Replacement*> ordered;
  for (const Replacement& r : replacements) {
    if (r.field == field) ordered.push_back(&r);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const Replacement* a, const Replacement* b) {
              return a->start > b->start;
            });
  std::string text(original);
  for (const Replacement* r : ordered) {
    text.replace(r->start, r->end - r->start, r->to);
  }
  return text;
}

std::vector<AugmentedPair> AugmentExample(const TaskExample& example,
                                          const ConceptMatcher& matcher,
                                          const ConceptLexicon& lexicon,
                                          const AugConfig& config) {
  config.Validate();
  const ConceptMatcher exact = matcher.WithThreshold(config.threshold);
  const std::string& summary = example.reference.text;

  struct FieldSlot {
    TextField field;
    const ReplacementSlot* slot;
  };
  const std::vector<ReplacementSlot> input_slots =
      PlanSlots(example.input_text, exact, lexicon);
  const std::vector<ReplacementSlot> summary_slots =
      PlanSummarySlots(summary, exact, lexicon);
  std::vector<FieldSlot> slots;
  std::vector<std::size_t> counts;
  for (const auto& s : input_slots) slots.push_back({TextField::kInput, &s});
  for (const auto& s : summary_slots) {
    slots.push_back({TextField::kSummary, &s});
  }
  for (const FieldSlot& s : slots) counts.push_back(s.slot->choices.size());
  if (std::all_of(counts.begin(), counts.end(),
                  [](std::size_t c) { return c <= 1; })) {
    return {};
  }

  const std::vector<ChoiceTuple> tuples = EnumerateVariants(
      counts, config.cap, DeriveSeed(config.seed, example.note_id));
  std::vector<AugmentedPair> pairs;
  pairs.reserve(tuples.size());
  for (std::size_t v = 0; v < tuples.size(); ++v) {
    AugmentedPair pair;
    pair.origin_id = example.note_id;
    pair.variant_index = v;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const std::uint32_t choice = tuples[v][i];
      if (choice == 0) continue;
      const ReplacementSlot& slot = *slots[i].slot;
      pair.replacements.push_back({slots[i].field, slot.span.start,
                                   slot.span.end, slot.span.surface,
                                   slot.choices[choice], slot.cui});
    }
    pair.input_text = ApplyReplacements(example.input_text, pair.replacements,
                                        TextField::kInput);
    pair.summary_text =
        ApplyReplacements(summary, pair.replacements, TextField::kSummary);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<AugmentedPair> AugmentCorpus(std::span<const TaskExample> examples,
                                         const ConceptMatcher& matcher,
                                         const ConceptLexicon& lexicon,
                                         const AugConfig& config,
                                         unsigned threads,
                                         AugmentStats* stats) {
  std::vector<std::vector<AugmentedPair>> per_example(examples.size());
  ParallelFor(examples.size(), threads, [&](std::size_t i) {
    per_example[i] = AugmentExample(examples[i], matcher, lexicon, config);
  });
  std::vector<AugmentedPair> pairs;
  AugmentStats local;
  local.examples = examples.size();
  for (auto& group : per_example) {
    if (group.empty()) ++local.skipped;
    for (auto& pair : group) pairs.push_back(std::move(pair));
  }
  local.pairs = pairs.size();
  if (stats != nullptr) *stats = local;
  return pairs;
}

nlohmann::json AugmentedPairToJson(const AugmentedPair& pair,
                                   const TaskExample& origin) {
  const CodepointOffsets input_offsets(origin.input_text);
  const CodepointOffsets summary_offsets(origin.reference.text);
  nlohmann::json replacements = nlohmann::json::array();
  for (const Replacement& r : pair.replacements) {
    const CodepointOffsets& offsets =
        r.field == TextField::kInput ? input_offsets : summary_offsets;
    replacements.push_back({{"start", offsets.ToCodepoint(r.start)},
                            {"end", offsets.ToCodepoint(r.end)},
                            {"from", r.from},
                            {"to", r.to},
                            {"cui", r.cui},
                            {"field", std::string(TextFieldName(r.field))}});
  }
  return {{"origin_id", pair.origin_id},
          {"variant", pair.variant_index},
          {"input", pair.input_text},
          {"summary", pair.summary_text},
          {"replacements", std::move(replacements)}};
}

nlohmann::json QualityReport::ToJson() const {
  return {{"pairs", pairs},
          {"input", FieldQualityJson(input)},
          {"summary", FieldQualityJson(summary)}};
}

std::string VectorId(std::string_view origin_id,
                     std::optional<std::size_t> variant, TextField field) {
  std::string id(origin_id);
  if (variant) id += "#" + std::to_string(*variant);
  id += ":";
  id += TextFieldName(field);
  return id;
}

QualityReport BuildQualityReport(
    std::span<const AugmentedPair> pairs,
    const std::unordered_map<std::string, OriginalText>& originals,
    const VectorTable* vectors) {
  if (pairs.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "quality report needs at least one pair");
  }
  FieldAccumulator input;
  FieldAccumulator summary;
  for (const AugmentedPair& pair : pairs) {
    auto it = originals.find(pair.origin_id);
    if (it == originals.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no original text for " + pair.origin_id);
    }
    input.Add(it->second.input, pair.input_text);
    summary.Add(it->second.summary, pair.summary_text);
    if (vectors != nullptr) {
      for (TextField field : {TextField::kInput, TextField::kSummary}) {
        const double cosine = SentCosine(
            VectorFor(*vectors, VectorId(pair.origin_id, std::nullopt, field)),
            VectorFor(*vectors,
                      VectorId(pair.origin_id, pair.variant_index, field)));
        (field == TextField::kInput ? input : summary).AddCosine(cosine);
      }
    }
  }
  QualityReport report;
  report.pairs = pairs.size();
  report.input = input.Finish(vectors != nullptr);
  report.summary = summary.Finish(vectors != nullptr);
  return report;
}

}  // namespace problist
