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

// Line-delimited JSON readers and writers for note corpora and task
// examples. Unknown fields on note and annotation objects survive a
// read/write cycle.

#ifndef PROBLIST_CORPUS_IO_H_
#define PROBLIST_CORPUS_IO_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "problist/corpus.h"

namespace problist {

struct NoteRecord {
  std::string note_id;
  std::string text;
  std::vector<PlanAnnotation> annotations;
  // Unknown top-level fields.
  nlohmann::json extra = nlohmann::json::object();
  // Unknown fields per annotation; empty or aligned with `annotations`.
  std::vector<nlohmann::json> annotation_extra;

  friend bool operator==(const NoteRecord&, const NoteRecord&) = default;
};

// Compact single-line dump. Keys are emitted in sorted order; invalid UTF-8
// is replaced rather than rejected.
std::string DumpJsonLine(const nlohmann::json& json);

// Yields one parsed object per non-blank line; throws kSchemaViolation on
// malformed JSON with the line number.
class JsonlReader {
 public:
  explicit JsonlReader(std::istream& in) : in_(in) {}

  std::optional<nlohmann::json> Next();
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

NoteRecord NoteFromJson(const nlohmann::json& json, std::size_t line_no);
nlohmann::json NoteToJson(const NoteRecord& note);

class NoteReader {
 public:
  explicit NoteReader(std::istream& in) : reader_(in) {}

  std::optional<NoteRecord> Next();
  std::size_t line() const { return reader_.line(); }

 private:
  JsonlReader reader_;
};

std::vector<NoteRecord> ReadNotes(std::istream& in);
void WriteNotes(std::ostream& out, std::span<const NoteRecord> notes);

// {note_id, input, reference, direct, indirect, mode, truncated}. `direct`
// and `indirect` carry the reference problem lists; when absent on read the
// reference text is split on "; " into direct problems.
TaskExample TaskExampleFromJson(const nlohmann::json& json,
                                std::size_t line_no);
nlohmann::json TaskExampleToJson(const TaskExample& example);

std::vector<TaskExample> ReadTaskExamples(std::istream& in);
void WriteTaskExamples(std::ostream& out,
                       std::span<const TaskExample> examples);

}  // namespace problist

#endif  // PROBLIST_CORPUS_IO_H_
