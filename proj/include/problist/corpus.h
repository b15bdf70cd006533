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

// Progress notes, plan annotations and task examples.

#ifndef PROBLIST_CORPUS_H_
#define PROBLIST_CORPUS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace problist {

enum class SectionKind {
  kAssessment,
  kChiefComplaint,
  kAllergies,
  kReviewOfSystems,
  kOtherSubjective,
  kObjective,
  kPlanSubsection,
};

inline constexpr SectionKind kAllSectionKinds[] = {
    SectionKind::kAssessment,      SectionKind::kChiefComplaint,
    SectionKind::kAllergies,       SectionKind::kReviewOfSystems,
    SectionKind::kOtherSubjective, SectionKind::kObjective,
    SectionKind::kPlanSubsection,
};

std::string_view SectionKindName(SectionKind kind);
std::optional<SectionKind> SectionKindFromName(std::string_view name);
bool IsSubjective(SectionKind kind);

// A section body. [header_begin, start) holds the consumed header including
// its indentation and trailing blanks; [start, end) is the body, which keeps
// its line breaks. Concatenating raw[header_begin, end) over all sections
// reproduces the note.
struct Section {
  SectionKind kind;
  std::size_t header_begin = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;

  friend bool operator==(const Section&, const Section&) = default;
};

struct ProgressNote {
  std::string note_id;
  std::string raw_text;
  std::vector<Section> sections;

  bool Has(SectionKind kind) const;
};

// Literal header prefixes per section kind, matched case-insensitively at the
// start of a line after optional indentation. The longest match wins.
struct HeaderTable {
  std::vector<std::pair<SectionKind, std::vector<std::string>>> entries;

  static HeaderTable Default();
  // {"assessment": ["Assessment:"], "chief_complaint": [...], ...}
  static HeaderTable FromJson(const nlohmann::json& json);
  nlohmann::json ToJson() const;
};

struct ParseOptions {
  HeaderTable headers = HeaderTable::Default();
  // Kind given to text before the first header. Notes written assessment
  // first without a header need kAssessment here.
  SectionKind leading_kind = SectionKind::kOtherSubjective;
};

// Throws kNoSectionsFound when no header matches and the leading text is not
// configured as assessment.
ProgressNote ParseProgressNote(std::string note_id, std::string raw_text,
                               const ParseOptions& options = {});

std::string ReconstructRawText(const ProgressNote& note);

enum class ProblemLabel { kDirect, kIndirect, kNeither, kNotRelevant };

std::string_view ProblemLabelName(ProblemLabel label);
std::optional<ProblemLabel> ProblemLabelFromName(std::string_view name);

struct PlanAnnotation {
  int plan_index = 0;
  std::string problem_text;
  ProblemLabel label = ProblemLabel::kNotRelevant;

  friend bool operator==(const PlanAnnotation&, const PlanAnnotation&) =
      default;
};

inline constexpr std::string_view kProblemSeparator = "; ";

struct ReferenceSummary {
  std::vector<std::string> direct;
  std::vector<std::string> indirect;
  std::string text;
  // Set when no Direct or Indirect annotation exists. Not an error.
  bool empty_summary = false;

  // Direct problems followed by Indirect problems.
  std::vector<std::string> Problems() const;

  friend bool operator==(const ReferenceSummary&,
                         const ReferenceSummary&) = default;
};

ReferenceSummary BuildReferenceSummary(
    std::span<const PlanAnnotation> annotations);

// Rebuilds text from the direct and indirect lists.
ReferenceSummary MakeReferenceSummary(std::vector<std::string> direct,
                                      std::vector<std::string> indirect);

enum class InputMode { kAssessmentOnly, kAssessmentPlusSubjective };

std::string_view InputModeName(InputMode mode);
std::optional<InputMode> InputModeFromName(std::string_view name);

inline constexpr std::size_t kDefaultMaxInputWords = 512;

struct TaskExample {
  std::string note_id;
  std::string input_text;
  InputMode mode = InputMode::kAssessmentOnly;
  ReferenceSummary reference;
  bool truncated = false;

  friend bool operator==(const TaskExample&, const TaskExample&) = default;
};

// Keeps the prefix of `text` ending at the last character of word
// `max_words`. Returns the text unchanged when it has at most that many words.
std::string TruncateWords(std::string_view text, std::size_t max_words,
                          bool* truncated = nullptr);

// Throws kMissingAssessment when the note has no non-blank Assessment.
TaskExample BuildTaskExample(const ProgressNote& note,
                             ReferenceSummary reference, InputMode mode,
                             std::size_t max_words = kDefaultMaxInputWords);

}  // namespace problist

#endif  // PROBLIST_CORPUS_H_
