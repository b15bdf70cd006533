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

#include "problist/corpus.h"

#include <algorithm>

#include "problist/error.h"
#include "problist/text.h"

namespace problist {
namespace {

bool StartsWithIgnoreCase(std::string_view text, std::size_t pos,
                          std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char a = text[pos + i];
    char b = prefix[i];
    if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
    if (b >= 'A' && b <= 'Z') b = static_cast<char>(b - 'A' + 'a');
    if (a != b) return false;
  }
  return true;
}

bool IsBlank(char c) { return c == ' ' || c == '\t'; }

struct HeaderHit {
  SectionKind kind;
  std::size_t header_begin;
  std::size_t body_begin;
};

std::vector<HeaderHit> FindHeaders(std::string_view text,
                                   const HeaderTable& table) {
  std::vector<HeaderHit> hits;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t pos = line_start;
    while (pos < text.size() && IsBlank(text[pos])) ++pos;

    std::size_t best_length = 0;
    SectionKind best_kind = SectionKind::kOtherSubjective;
    for (const auto& [kind, patterns] : table.entries) {
      for (const std::string& pattern : patterns) {
        if (pattern.size() > best_length &&
            StartsWithIgnoreCase(text, pos, pattern)) {
          best_length = pattern.size();
          best_kind = kind;
        }
      }
    }
    if (best_length > 0) {
      std::size_t body = pos + best_length;
      while (body < text.size() && IsBlank(text[body])) ++body;
      hits.push_back({best_kind, line_start, body});
    }

    const std::size_t newline = text.find('\n', line_start);
    if (newline == std::string_view::npos) break;
    line_start = newline + 1;
  }
  return hits;
}

}  // namespace

std::string_view SectionKindName(SectionKind kind) {
  switch (kind) {
    case SectionKind::kAssessment: return "assessment";
    case SectionKind::kChiefComplaint: return "chief_complaint";
    case SectionKind::kAllergies: return "allergies";
    case SectionKind::kReviewOfSystems: return "review_of_systems";
    case SectionKind::kOtherSubjective: return "other_subjective";
    case SectionKind::kObjective: return "objective";
    case SectionKind::kPlanSubsection: return "plan_subsection";
  }
  return "unknown";
}

std::optional<SectionKind> SectionKindFromName(std::string_view name) {
  for (SectionKind kind : kAllSectionKinds) {
    if (SectionKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

bool IsSubjective(SectionKind kind) {
  return kind == SectionKind::kChiefComplaint ||
         kind == SectionKind::kAllergies ||
         kind == SectionKind::kReviewOfSystems ||
         kind == SectionKind::kOtherSubjective;
}

bool ProgressNote::Has(SectionKind kind) const {
  return std::any_of(sections.begin(), sections.end(),
                     [&](const Section& s) { return s.kind == kind; });
}

HeaderTable HeaderTable::Default() {
  return HeaderTable{{
      {SectionKind::kAssessment,
       {"Assessment:", "Assessment and Plan:", "Impression:"}},
      {SectionKind::kChiefComplaint, {"Chief Complaint:", "CC:"}},
      {SectionKind::kAllergies, {"Allergies:"}},
      {SectionKind::kReviewOfSystems, {"Review of systems:", "ROS:"}},
      {SectionKind::kOtherSubjective,
       {"Subjective:", "HPI:", "24 Hour Events:", "Past medical history:",
        "Family history:", "Social history:"}},
      {SectionKind::kObjective,
       {"Objective:", "Physical Examination:", "Vital signs:",
        "Labs / Radiology:", "Imaging:"}},
      {SectionKind::kPlanSubsection, {"#"}},
  }};
}

HeaderTable HeaderTable::FromJson(const nlohmann::json& json) {
  if (!json.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "header table must be an object");
  }
  HeaderTable table;
  for (const auto& [name, patterns] : json.items()) {
    const auto kind = SectionKindFromName(name);
    if (!kind) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown section kind in header table: " + name);
    }
    std::vector<std::string> literals;
    for (const auto& pattern : patterns) {
      if (!pattern.is_string() || pattern.get<std::string>().empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "header patterns for " + name +
                        " must be non-empty strings");
      }
      literals.push_back(pattern.get<std::string>());
    }
    table.entries.emplace_back(*kind, std::move(literals));
  }
  return table;
}

nlohmann::json HeaderTable::ToJson() const {
  nlohmann::json json = nlohmann::json::object();
  for (const auto& [kind, patterns] : entries) {
    json[std::string(SectionKindName(kind))] = patterns;
  }
  return json;
}

ProgressNote ParseProgressNote(std::string note_id, std::string raw_text,
                               const ParseOptions& options) {
  if (raw_text.empty()) {
    throw Error(ErrorCode::kNoSectionsFound,
                "note " + note_id + ": empty text");
  }
  std::vector<HeaderHit> hits = FindHeaders(raw_text, options.headers);

  // A header with an empty body is treated as plain text of the preceding
  // section. Walking backwards lets each body end at the next kept header.
  std::vector<HeaderHit> kept;
  std::size_t next_begin = raw_text.size();
  for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
    if (it->body_begin < next_begin) {
      kept.push_back(*it);
      next_begin = it->header_begin;
    }
  }
  std::reverse(kept.begin(), kept.end());

  ProgressNote note;
  note.note_id = std::move(note_id);
  note.raw_text = std::move(raw_text);
  const std::string_view text = note.raw_text;

  const std::size_t first_header = kept.empty() ? text.size()
                                                : kept.front().header_begin;
  if (first_header > 0) {
    const bool blank = Trim(text.substr(0, first_header)).empty();
    if (kept.empty() &&
        (blank || options.leading_kind != SectionKind::kAssessment)) {
      throw Error(ErrorCode::kNoSectionsFound,
                  "note " + note.note_id + ": no section header matched");
    }
    note.sections.push_back(
        {blank ? SectionKind::kOtherSubjective : options.leading_kind, 0, 0,
         first_header, std::string(text.substr(0, first_header))});
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const std::size_t end =
        i + 1 < kept.size() ? kept[i + 1].header_begin : text.size();
    const HeaderHit& hit = kept[i];
    note.sections.push_back(
        {hit.kind, hit.header_begin, hit.body_begin, end,
         std::string(text.substr(hit.body_begin, end - hit.body_begin))});
  }
  return note;
}

std::string ReconstructRawText(const ProgressNote& note) {
  std::string out;
  for (const Section& section : note.sections) {
    out.append(note.raw_text, section.header_begin,
               section.start - section.header_begin);
    out += section.text;
  }
  return out;
}

std::string_view ProblemLabelName(ProblemLabel label) {
  switch (label) {
    case ProblemLabel::kDirect: return "direct";
    case ProblemLabel::kIndirect: return "indirect";
    case ProblemLabel::kNeither: return "neither";
    case ProblemLabel::kNotRelevant: return "not_relevant";
  }
  return "unknown";
}

std::optional<ProblemLabel> ProblemLabelFromName(std::string_view name) {
  for (ProblemLabel label :
       {ProblemLabel::kDirect, ProblemLabel::kIndirect, ProblemLabel::kNeither,
        ProblemLabel::kNotRelevant}) {
    if (ProblemLabelName(label) == name) return label;
  }
  return std::nullopt;
}

std::vector<std::string> ReferenceSummary::Problems() const {
  std::vector<std::string> all = direct;
  all.insert(all.end(), indirect.begin(), indirect.end());
  return all;
}

ReferenceSummary MakeReferenceSummary(std::vector<std::string> direct,
                                      std::vector<std::string> indirect) {
  ReferenceSummary summary;
  summary.direct = std::move(direct);
  summary.indirect = std::move(indirect);
  summary.text = Join(summary.Problems(), kProblemSeparator);
  summary.empty_summary = summary.direct.empty() && summary.indirect.empty();
  return summary;
}

ReferenceSummary BuildReferenceSummary(
    std::span<const PlanAnnotation> annotations) {
  std::vector<const PlanAnnotation*> ordered;
  for (const PlanAnnotation& a : annotations) ordered.push_back(&a);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const PlanAnnotation* a, const PlanAnnotation* b) {
                     return a->plan_index < b->plan_index;
                   });
  std::vector<std::string> direct;
  std::vector<std::string> indirect;
  for (const PlanAnnotation* a : ordered) {
    std::string problem(Trim(a->problem_text));
    if (problem.empty()) continue;
    if (a->label == ProblemLabel::kDirect) direct.push_back(std::move(problem));
    if (a->label == ProblemLabel::kIndirect) {
      indirect.push_back(std::move(problem));
    }
  }
  return MakeReferenceSummary(std::move(direct), std::move(indirect));
}

std::string_view InputModeName(InputMode mode) {
  switch (mode) {
    case InputMode::kAssessmentOnly: return "assessment_only";
    case InputMode::kAssessmentPlusSubjective:
      return "assessment_plus_subjective";
  }
  return "unknown";
}

std::optional<InputMode> InputModeFromName(std::string_view name) {
  if (name == "assessment_only") return InputMode::kAssessmentOnly;
  if (name == "assessment_plus_subjective") {
    return InputMode::kAssessmentPlusSubjective;
  }
  return std::nullopt;
}

std::string TruncateWords(std::string_view text, std::size_t max_words,
                          bool* truncated) {
  const std::vector<std::string_view> words = SplitWhitespace(text);
  const bool cut = words.size() > max_words;
  if (truncated != nullptr) *truncated = cut;
  if (!cut) return std::string(text);
  if (max_words == 0) return {};
  const std::string_view last = words[max_words - 1];
  return std::string(text.substr(0, last.data() + last.size() - text.data()));
}

TaskExample BuildTaskExample(const ProgressNote& note,
                             ReferenceSummary reference, InputMode mode,
                             std::size_t max_words) {
  if (max_words == 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_words must be positive");
  }
  std::vector<std::string> parts;
  for (const Section& section : note.sections) {
    if (section.kind != SectionKind::kAssessment) continue;
    std::string_view body = Trim(section.text);
    if (!body.empty()) parts.emplace_back(body);
  }
  if (parts.empty()) {
    throw Error(ErrorCode::kMissingAssessment,
                "note " + note.note_id + ": no assessment section");
  }
  if (mode == InputMode::kAssessmentPlusSubjective) {
    for (const Section& section : note.sections) {
      if (!IsSubjective(section.kind)) continue;
      std::string_view body = Trim(section.text);
      if (!body.empty()) parts.emplace_back(body);
    }
  }

  TaskExample example;
  example.note_id = note.note_id;
  example.mode = mode;
  example.input_text =
      TruncateWords(Join(parts, "\n"), max_words, &example.truncated);
  example.reference = std::move(reference);
  return example;
}

}  // namespace problist
