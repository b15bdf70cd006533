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

#include "problist/lexicon.h"

#include <fstream>
#include <sstream>

#include "problist/error.h"

namespace problist {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string LineError(std::size_t line_no, std::string_view what) {
  std::ostringstream out;
  out << "line " << line_no << ": " << what;
  return out.str();
}

}  // namespace

bool IsValidCui(std::string_view cui) {
  if (cui.size() != 8 || cui[0] != 'C') return false;
  for (std::size_t i = 1; i < cui.size(); ++i) {
    if (cui[i] < '0' || cui[i] > '9') return false;
  }
  return true;
}

ConceptLexicon ConceptLexicon::Load(std::istream& in,
                                    const Normalization& norm) {
  struct Pending {
    Concept item;
    std::set<std::string> preferred;
  };
  std::map<std::string, Pending> pending;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line.front() == '#') continue;

    const std::vector<std::string_view> fields = SplitTabs(line);
    if (fields.size() != 4) {
      throw Error(ErrorCode::kMalformedLine,
                  LineError(line_no, "expected 4 tab-separated fields"));
    }
    const std::string cui(Trim(fields[0]));
    const std::string term(Trim(fields[1]));
    const std::string semantic_type(Trim(fields[2]));
    const std::string_view is_preferred = Trim(fields[3]);
    if (!IsValidCui(cui)) {
      throw Error(ErrorCode::kInvalidCui,
                  LineError(line_no, "invalid cui '" + cui + "'"));
    }
    if (term.empty() || NormalizeText(term, norm).empty()) {
      throw Error(ErrorCode::kMalformedLine,
                  LineError(line_no, "term is empty after normalization"));
    }
    if (is_preferred != "0" && is_preferred != "1") {
      throw Error(ErrorCode::kMalformedLine,
                  LineError(line_no, "is_preferred must be 0 or 1"));
    }

    Pending& entry = pending[cui];
    entry.item.cui = cui;
    entry.item.synonyms.insert(term);
    if (!semantic_type.empty()) {
      entry.item.semantic_types.insert(semantic_type);
    }
    if (is_preferred == "1") entry.preferred.insert(term);
  }

  std::vector<Concept> concepts;
  for (auto& [cui, entry] : pending) {
    if (entry.preferred.size() > 1) {
      throw Error(ErrorCode::kConflictingPreferred,
                  "cui " + cui + " has more than one preferred term");
    }
    entry.item.preferred_term = entry.preferred.empty()
                                       ? *entry.item.synonyms.begin()
                                       : *entry.preferred.begin();
    concepts.push_back(std::move(entry.item));
  }
  return FromConcepts(std::move(concepts), norm);
}

ConceptLexicon ConceptLexicon::LoadFile(const std::filesystem::path& path,
                                        const Normalization& norm) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open lexicon " + path.string());
  }
  return Load(in, norm);
}

ConceptLexicon ConceptLexicon::FromConcepts(std::vector<Concept> concepts,
                                            const Normalization& norm) {
  ConceptLexicon lexicon;
  lexicon.norm_ = norm;
  for (Concept& item : concepts) {
    if (!IsValidCui(item.cui)) {
      throw Error(ErrorCode::kInvalidCui, "invalid cui '" + item.cui + "'");
    }
    if (item.preferred_term.empty() && !item.synonyms.empty()) {
      item.preferred_term = *item.synonyms.begin();
    }
    if (item.preferred_term.empty()) {
      throw Error(ErrorCode::kMalformedLine,
                  "cui " + item.cui + " has no terms");
    }
    item.synonyms.insert(item.preferred_term);
    std::string cui = item.cui;
    auto [it, inserted] = lexicon.concepts_.emplace(cui, std::move(item));
    if (!inserted) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate cui " + cui);
    }
  }
  lexicon.BuildTermIndex();
  return lexicon;
}

void ConceptLexicon::BuildTermIndex() {
  term_index_.clear();
  for (const auto& [cui, item] : concepts_) {
    for (const std::string& term : item.synonyms) {
      term_index_[NormalizeText(term, norm_)].insert(cui);
    }
  }
}

const Concept* ConceptLexicon::Find(std::string_view cui) const {
  auto it = concepts_.find(cui);
  return it == concepts_.end() ? nullptr : &it->second;
}

std::vector<std::string> ConceptLexicon::Lookup(std::string_view term) const {
  auto it = term_index_.find(NormalizeText(term, norm_));
  if (it == term_index_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::vector<std::string> ConceptLexicon::SynonymsOf(
    std::string_view cui) const {
  const Concept* item = Find(cui);
  if (item == nullptr) return {};
  return {item->synonyms.begin(), item->synonyms.end()};
}

}  // namespace problist
