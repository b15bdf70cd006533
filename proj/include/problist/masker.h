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

// Span-corruption corpora for domain-adaptive pretraining.
//
// Masked spans are replaced by numbered sentinels and emitted in the target
// as "S0 span0 S1 span1 ... Sm". Tokens are the normalized words produced by
// Tokenize() with default options.

#ifndef PROBLIST_MASKER_H_
#define PROBLIST_MASKER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "problist/corpus.h"
#include "problist/corpus_io.h"
#include "problist/matcher.h"

namespace problist {

enum class MaskPolicy { kTokenMask, kConceptMask };

std::string_view MaskPolicyName(MaskPolicy policy);
std::optional<MaskPolicy> MaskPolicyFromName(std::string_view name);

struct MaskConfig {
  double ratio = 0.15;
  MaskPolicy policy = MaskPolicy::kTokenMask;
  std::size_t mean_span_len = 3;
  std::string sentinel_prefix = "<extra_id_";
  std::uint64_t seed = 0;

  void Validate() const;
};

struct MaskedExample {
  std::string source_id;
  std::string input_text;
  std::string target_text;
  std::size_t mask_count = 0;
  std::size_t masked_token_count = 0;
  std::size_t total_token_count = 0;
  std::string sentinel_prefix = "<extra_id_";

  friend bool operator==(const MaskedExample&, const MaskedExample&) = default;
};

// Number of tokens the masker aims to cover: ratio * total rounded half up.
std::size_t MaskTarget(double ratio, std::size_t total_tokens);

std::string Sentinel(std::string_view prefix, std::size_t index);

// Masks whole concept spans. `spans` must be sorted and disjoint. Spans are
// visited in seeded random order and taken while they move the covered
// token count closer to the target.
MaskedExample MaskConcepts(std::string_view text,
                           std::span<const MatchSpan> spans,
                           const MaskConfig& config, std::uint64_t seed);

MaskedExample MaskTokens(std::string_view text, const MaskConfig& config,
                         std::uint64_t seed);

// Inverse of masking. Throws kSentinelMismatch when the sentinels of input
// and target disagree.
std::string Reconstruct(const MaskedExample& masked);

// Assessment and plan subsection texts of a note, trimmed and joined by
// newlines.
std::string DaptSourceText(const ProgressNote& note);

struct DaptStats {
  std::size_t emitted = 0;
  std::size_t skipped_empty = 0;
  std::size_t skipped_error = 0;
  std::size_t masked_tokens = 0;
  std::size_t total_tokens = 0;
  // "<id>: <message>" for each note skipped with an error.
  std::vector<std::string> errors;
};

using NoteSource = std::function<std::optional<NoteRecord>()>;
using MaskedSink = std::function<void(const MaskedExample&)>;

// Streams notes through the configured masker in bounded batches. Output is
// emitted in input order; per-note failures are counted and skipped. The
// matcher is required for the concept policy.
DaptStats BuildDaptCorpus(const NoteSource& source,
                          const ParseOptions& parse_options,
                          const ConceptMatcher* matcher,
                          const MaskConfig& config, const MaskedSink& sink,
                          unsigned threads = 1, std::size_t batch_size = 256);

nlohmann::json MaskedExampleToJson(const MaskedExample& example,
                                   MaskPolicy policy);

}  // namespace problist

#endif  // PROBLIST_MASKER_H_
