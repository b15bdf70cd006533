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

#include "problist/masker.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <variant>

#include "problist/error.h"
#include "problist/parallel.h"
#include "problist/random.h"
#include "problist/text.h"

namespace problist {
namespace {

struct ByteRange {
  std::size_t start;
  std::size_t end;
};

std::size_t TokensInside(const std::vector<Token>& tokens, ByteRange range) {
  std::size_t count = 0;
  for (const Token& t : tokens) {
    if (t.begin >= range.start && t.end <= range.end) ++count;
  }
  return count;
}

// Builds input and target from sorted, disjoint byte ranges. Touching ranges
// share one sentinel.
MaskedExample Assemble(std::string_view text, const std::vector<Token>& tokens,
                       std::vector<ByteRange> ranges,
                       const MaskConfig& config) {
  MaskedExample out;
  out.sentinel_prefix = config.sentinel_prefix;
  out.total_token_count = tokens.size();
  std::vector<ByteRange> merged;
  for (const ByteRange& r : ranges) {
    if (!merged.empty() && merged.back().end == r.start) {
      merged.back().end = r.end;
    } else {
      merged.push_back(r);
    }
  }
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < merged.size(); ++k) {
    const ByteRange& r = merged[k];
    const std::string sentinel = Sentinel(config.sentinel_prefix, k);
    out.input_text.append(text.substr(cursor, r.start - cursor));
    out.input_text += sentinel;
    out.target_text += sentinel;
    out.target_text += ' ';
    out.target_text.append(text.substr(r.start, r.end - r.start));
    out.target_text += ' ';
    out.masked_token_count += TokensInside(tokens, r);
    cursor = r.end;
  }
  out.input_text.append(text.substr(cursor));
  out.mask_count = merged.size();
  if (!merged.empty()) {
    out.target_text += Sentinel(config.sentinel_prefix, merged.size());
  }
  return out;
}

}  // namespace

std::string_view MaskPolicyName(MaskPolicy policy) {
  return policy == MaskPolicy::kTokenMask ? "token" : "concept";
}

std::optional<MaskPolicy> MaskPolicyFromName(std::string_view name) {
  if (name == "token") return MaskPolicy::kTokenMask;
  if (name == "concept") return MaskPolicy::kConceptMask;
  return std::nullopt;
}

void MaskConfig::Validate() const {
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mask ratio must lie in [0, 1)");
  }
  if (mean_span_len < 1) {
    throw Error(ErrorCode::kInvalidArgument, "span length must be >= 1");
  }
  if (sentinel_prefix.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sentinel prefix is empty");
  }
}

std::size_t MaskTarget(double ratio, std::size_t total_tokens) {
  return static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(total_tokens) + 0.5));
}

std::string Sentinel(std::string_view prefix, std::size_t index) {
  std::string s(prefix);
  s += std::to_string(index);
  s += '>';
  return s;
}

MaskedExample MaskConcepts(std::string_view text,
                           std::span<const MatchSpan> spans,
                           const MaskConfig& config, std::uint64_t seed) {
  config.Validate();
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].start >= spans[i].end || spans[i].end > text.size() ||
        (i > 0 && spans[i - 1].end > spans[i].start)) {
      throw Error(ErrorCode::kOverlappingSpans,
                  "concept spans must be sorted, disjoint and non-empty");
    }
  }
  const std::vector<Token> tokens = Tokenize(text, Normalization{});
  const std::size_t target = MaskTarget(config.ratio, tokens.size());

  std::vector<std::size_t> order(spans.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);
  std::vector<std::size_t> chosen;
  std::size_t covered = 0;
  for (std::size_t i : order) {
    if (covered >= target) break;
    const std::size_t len =
        TokensInside(tokens, {spans[i].start, spans[i].end});
    const std::size_t after = covered + len;
    if (len == 0 || (after > target && after - target >= target - covered)) {
      continue;
    }
    chosen.push_back(i);
    covered += len;
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<ByteRange> ranges;
  for (std::size_t i : chosen) ranges.push_back({spans[i].start, spans[i].end});
  return Assemble(text, tokens, std::move(ranges), config);
}

MaskedExample MaskTokens(std::string_view text, const MaskConfig& config,
                         std::uint64_t seed) {
  config.Validate();
  const std::vector<Token> tokens = Tokenize(text, Normalization{});
  const std::size_t n = tokens.size();
  const std::size_t target = MaskTarget(config.ratio, n);
  std::vector<bool> masked(n, false);
  std::size_t covered = 0;

  Rng rng(seed);
  const std::size_t max_attempts = 50 * n + 50;
  for (std::size_t attempt = 0; covered < target && attempt < max_attempts;
       ++attempt) {
    const std::size_t len = std::min(config.mean_span_len, target - covered);
    const std::size_t start = rng.Uniform(n - len + 1);
    const std::size_t lo = start == 0 ? 0 : start - 1;
    const std::size_t hi = std::min(n, start + len + 1);
    bool free = true;
    for (std::size_t i = lo; i < hi && free; ++i) free = !masked[i];
    if (!free) continue;
    for (std::size_t i = start; i < start + len; ++i) masked[i] = true;
    covered += len;
  }
  // Dense targets may leave no isolated gap; fill left to right.
  for (std::size_t i = 0; i < n && covered < target; ++i) {
    if (!masked[i]) {
      masked[i] = true;
      ++covered;
    }
  }

  std::vector<ByteRange> ranges;
  for (std::size_t i = 0; i < n;) {
    if (!masked[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && masked[j]) ++j;
    ranges.push_back({tokens[i].begin, tokens[j - 1].end});
    i = j;
  }
  return Assemble(text, tokens, std::move(ranges), config);
}

std::string Reconstruct(const MaskedExample& masked) {
  const std::string& prefix = masked.sentinel_prefix;
  const std::string& target = masked.target_text;
  auto mismatch = [&](const std::string& what) {
    return Error(ErrorCode::kSentinelMismatch,
                 masked.source_id.empty() ? what
                                          : masked.source_id + ": " + what);
  };

  std::vector<std::string> spans;
  if (!target.empty()) {
    std::string current = Sentinel(prefix, 0);
    if (target.compare(0, current.size(), current) != 0) {
      throw mismatch("target does not start with " + current);
    }
    std::size_t pos = current.size();
    while (pos < target.size()) {
      const std::string next = Sentinel(prefix, spans.size() + 1);
      if (target[pos] != ' ') throw mismatch("malformed target");
      const std::size_t found = target.find(" " + next, pos + 1);
      if (found == std::string::npos) throw mismatch("missing " + next);
      spans.push_back(target.substr(pos + 1, found - pos - 1));
      pos = found + 1 + next.size();
    }
    if (spans.empty()) throw mismatch("target has no spans");
  }
  if (spans.size() != masked.mask_count) {
    throw mismatch("target holds " + std::to_string(spans.size()) +
                   " spans but mask_count is " +
                   std::to_string(masked.mask_count));
  }

  std::string out;
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < spans.size(); ++k) {
    const std::string sentinel = Sentinel(prefix, k);
    const std::size_t found = masked.input_text.find(sentinel, cursor);
    if (found == std::string::npos) throw mismatch("input lacks " + sentinel);
    out.append(masked.input_text, cursor, found - cursor);
    out += spans[k];
    cursor = found + sentinel.size();
  }
  if (!spans.empty() &&
      masked.input_text.find(Sentinel(prefix, spans.size()), cursor) !=
          std::string::npos) {
    throw mismatch("input has more sentinels than the target");
  }
  out.append(masked.input_text, cursor);
  return out;
}

std::string DaptSourceText(const ProgressNote& note) {
  std::vector<std::string> parts;
  for (const Section& s : note.sections) {
    if (s.kind != SectionKind::kAssessment &&
        s.kind != SectionKind::kPlanSubsection) {
      continue;
    }
    std::string_view body = Trim(s.text);
    if (!body.empty()) parts.emplace_back(body);
  }
  return Join(parts, "\n");
}

DaptStats BuildDaptCorpus(const NoteSource& source,
                          const ParseOptions& parse_options,
                          const ConceptMatcher* matcher,
                          const MaskConfig& config, const MaskedSink& sink,
                          unsigned threads, std::size_t batch_size) {
  config.Validate();
  if (config.policy == MaskPolicy::kConceptMask && matcher == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "concept masking needs a concept matcher");
  }
  if (batch_size == 0) batch_size = 1;

  enum class Skip { kEmpty, kError };
  using Outcome = std::variant<MaskedExample, Skip>;
  DaptStats stats;
  std::vector<NoteRecord> batch;
  std::vector<Outcome> outcomes;
  std::vector<std::string> messages;

  auto flush = [&] {
    outcomes.assign(batch.size(), Skip::kEmpty);
    messages.assign(batch.size(), std::string());
    ParallelFor(batch.size(), threads, [&](std::size_t i) {
      const NoteRecord& record = batch[i];
      try {
        const ProgressNote note =
            ParseProgressNote(record.note_id, record.text, parse_options);
        const std::string text = DaptSourceText(note);
        if (Trim(text).empty()) return;
        const std::uint64_t seed = DeriveSeed(config.seed, record.note_id);
        MaskedExample example;
        if (config.policy == MaskPolicy::kTokenMask) {
          example = MaskTokens(text, config, seed);
        } else {
          const std::vector<MatchSpan> spans = matcher->Extract(text);
          example = MaskConcepts(text, spans, config, seed);
        }
        example.source_id = record.note_id;
        outcomes[i] = std::move(example);
      } catch (const Error& e) {
        outcomes[i] = Skip::kError;
        messages[i] = record.note_id + ": " + e.what();
      }
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (auto* example = std::get_if<MaskedExample>(&outcomes[i])) {
        ++stats.emitted;
        stats.masked_tokens += example->masked_token_count;
        stats.total_tokens += example->total_token_count;
        sink(*example);
      } else if (std::get<Skip>(outcomes[i]) == Skip::kEmpty) {
        ++stats.skipped_empty;
      } else {
        ++stats.skipped_error;
        stats.errors.push_back(std::move(messages[i]));
      }
    }
    batch.clear();
  };

  while (true) {
    std::optional<NoteRecord> record;
    try {
      record = source();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kIoError) throw;
      ++stats.skipped_error;
      stats.errors.push_back(std::string("<input>: ") + e.what());
      continue;
    }
    if (!record) break;
    batch.push_back(std::move(*record));
    if (batch.size() >= batch_size) flush();
  }
  flush();
  return stats;
}

nlohmann::json MaskedExampleToJson(const MaskedExample& example,
                                   MaskPolicy policy) {
  return {{"id", example.source_id},
          {"input", example.input_text},
          {"target", example.target_text},
          {"policy", std::string(MaskPolicyName(policy))},
          {"masked_tokens", example.masked_token_count},
          {"total_tokens", example.total_token_count}};
}

}  // namespace problist
