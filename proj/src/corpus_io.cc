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

#include "problist/corpus_io.h"

#include <sstream>

#include "problist/error.h"
#include "problist/text.h"

namespace problist {
namespace {

using nlohmann::json;

[[noreturn]] void Violation(std::size_t line_no, const std::string& path,
                            const std::string& what) {
  std::ostringstream out;
  out << "line " << line_no << ": " << (path.empty() ? "/" : path) << ": "
      << what;
  throw Error(ErrorCode::kSchemaViolation, out.str());
}

const json& Require(const json& object, const char* key, std::size_t line_no,
                    const std::string& prefix) {
  auto it = object.find(key);
  if (it == object.end()) {
    Violation(line_no, prefix + "/" + key, "missing required field");
  }
  return *it;
}

std::string RequireString(const json& object, const char* key,
                          std::size_t line_no,
                          const std::string& prefix = "") {
  const json& value = Require(object, key, line_no, prefix);
  if (!value.is_string()) {
    Violation(line_no, prefix + "/" + key, "expected string");
  }
  return value.get<std::string>();
}

json Without(const json& object, std::initializer_list<const char*> keys) {
  json rest = object;
  for (const char* key : keys) rest.erase(key);
  return rest;
}

std::vector<std::string> StringArray(const json& value, std::size_t line_no,
                                     const std::string& path) {
  if (!value.is_array()) Violation(line_no, path, "expected array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_string()) {
      Violation(line_no, path + "/" + std::to_string(i), "expected string");
    }
    out.push_back(value[i].get<std::string>());
  }
  return out;
}

}  // namespace

std::string DumpJsonLine(const json& value) {
  return value.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::optional<json> JsonlReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (Trim(line).empty()) continue;
    try {
      return json::parse(line);
    } catch (const json::parse_error& e) {
      Violation(line_, "", std::string("invalid JSON: ") + e.what());
    }
  }
  return std::nullopt;
}

NoteRecord NoteFromJson(const json& object, std::size_t line_no) {
  if (!object.is_object()) Violation(line_no, "", "expected object");
  NoteRecord note;
  note.note_id = RequireString(object, "note_id", line_no);
  note.text = RequireString(object, "text", line_no);
  const json& annotations = Require(object, "annotations", line_no, "");
  if (!annotations.is_array()) {
    Violation(line_no, "/annotations", "expected array");
  }
  bool any_extra = false;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const std::string path = "/annotations/" + std::to_string(i);
    const json& item = annotations[i];
    if (!item.is_object()) Violation(line_no, path, "expected object");
    const json& index = Require(item, "plan_index", line_no, path);
    if (!index.is_number_integer()) {
      Violation(line_no, path + "/plan_index", "expected integer");
    }
    PlanAnnotation annotation;
    annotation.plan_index = index.get<int>();
    annotation.problem_text = RequireString(item, "problem", line_no, path);
    const std::string label = RequireString(item, "label", line_no, path);
    const auto parsed = ProblemLabelFromName(label);
    if (!parsed) {
      Violation(line_no, path + "/label",
                "expected one of direct|indirect|neither|not_relevant");
    }
    annotation.label = *parsed;
    if ((annotation.label == ProblemLabel::kDirect ||
         annotation.label == ProblemLabel::kIndirect) &&
        Trim(annotation.problem_text).empty()) {
      Violation(line_no, path + "/problem",
                "direct and indirect problems must be non-empty");
    }
    note.annotations.push_back(std::move(annotation));
    json rest = Without(item, {"plan_index", "problem", "label"});
    any_extra = any_extra || !rest.empty();
    note.annotation_extra.push_back(std::move(rest));
  }
  if (!any_extra) note.annotation_extra.clear();
  note.extra = Without(object, {"note_id", "text", "annotations"});
  return note;
}

json NoteToJson(const NoteRecord& note) {
  json object = note.extra.is_object() ? note.extra : json::object();
  object["note_id"] = note.note_id;
  object["text"] = note.text;
  json annotations = json::array();
  for (std::size_t i = 0; i < note.annotations.size(); ++i) {
    const PlanAnnotation& a = note.annotations[i];
    json item = i < note.annotation_extra.size() &&
                        note.annotation_extra[i].is_object()
                    ? note.annotation_extra[i]
                    : json::object();
    item["plan_index"] = a.plan_index;
    item["problem"] = a.problem_text;
    item["label"] = std::string(ProblemLabelName(a.label));
    annotations.push_back(std::move(item));
  }
  object["annotations"] = std::move(annotations);
  return object;
}

std::optional<NoteRecord> NoteReader::Next() {
  auto object = reader_.Next();
  if (!object) return std::nullopt;
  return NoteFromJson(*object, reader_.line());
}

std::vector<NoteRecord> ReadNotes(std::istream& in) {
  NoteReader reader(in);
  std::vector<NoteRecord> notes;
  while (auto note = reader.Next()) notes.push_back(std::move(*note));
  return notes;
}

void WriteNotes(std::ostream& out, std::span<const NoteRecord> notes) {
  for (const NoteRecord& note : notes) out << DumpJsonLine(NoteToJson(note)) << '\n';
}

TaskExample TaskExampleFromJson(const json& object, std::size_t line_no) {
  if (!object.is_object()) Violation(line_no, "", "expected object");
  TaskExample example;
  example.note_id = RequireString(object, "note_id", line_no);
  example.input_text = RequireString(object, "input", line_no);
  const std::string reference = RequireString(object, "reference", line_no);
  const std::string mode = RequireString(object, "mode", line_no);
  const auto parsed_mode = InputModeFromName(mode);
  if (!parsed_mode) {
    Violation(line_no, "/mode",
              "expected assessment_only or assessment_plus_subjective");
  }
  example.mode = *parsed_mode;
  const json& truncated = Require(object, "truncated", line_no, "");
  if (!truncated.is_boolean()) {
    Violation(line_no, "/truncated", "expected boolean");
  }
  example.truncated = truncated.get<bool>();

  std::vector<std::string> direct;
  std::vector<std::string> indirect;
  if (object.contains("direct") || object.contains("indirect")) {
    if (object.contains("direct")) {
      direct = StringArray(object["direct"], line_no, "/direct");
    }
    if (object.contains("indirect")) {
      indirect = StringArray(object["indirect"], line_no, "/indirect");
    }
  } else {
    std::string_view rest = reference;
    while (!rest.empty()) {
      const std::size_t cut = rest.find(kProblemSeparator);
      std::string_view part = Trim(rest.substr(0, cut));
      if (!part.empty()) direct.emplace_back(part);
      if (cut == std::string_view::npos) break;
      rest.remove_prefix(cut + kProblemSeparator.size());
    }
  }
  example.reference = MakeReferenceSummary(std::move(direct),
                                           std::move(indirect));
  if (example.reference.text != reference) {
    Violation(line_no, "/reference",
              "reference text disagrees with the direct/indirect lists");
  }
  return example;
}

json TaskExampleToJson(const TaskExample& example) {
  return json{{"note_id", example.note_id},
              {"input", example.input_text},
              {"reference", example.reference.text},
              {"direct", example.reference.direct},
              {"indirect", example.reference.indirect},
              {"mode", std::string(InputModeName(example.mode))},
              {"truncated", example.truncated}};
}

std::vector<TaskExample> ReadTaskExamples(std::istream& in) {
  JsonlReader reader(in);
  std::vector<TaskExample> examples;
  while (auto object = reader.Next()) {
    examples.push_back(TaskExampleFromJson(*object, reader.line()));
  }
  return examples;
}

void WriteTaskExamples(std::ostream& out,
                       std::span<const TaskExample> examples) {
  for (const TaskExample& example : examples) {
    out << DumpJsonLine(TaskExampleToJson(example)) << '\n';
  }
}

}  // namespace problist
