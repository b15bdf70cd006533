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

#ifndef PROBLIST_LEXICON_H_
#define PROBLIST_LEXICON_H_

#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "problist/text.h"

namespace problist {

struct Concept {
  std::string cui;
  std::string preferred_term;
  // All surface forms including the preferred term.
  std::set<std::string> synonyms;
  std::set<std::string> semantic_types;

  friend bool operator==(const Concept&, const Concept&) = default;
};

// 'C' followed by exactly seven digits.
bool IsValidCui(std::string_view cui);

// CUI-keyed concepts plus an index from normalized surface to CUIs.
// Immutable once built.
class ConceptLexicon {
 public:
  using TermIndex = std::map<std::string, std::set<std::string>, std::less<>>;

  ConceptLexicon() = default;

  // Reads cui<TAB>term<TAB>semantic_type<TAB>is_preferred lines. Blank lines
  // and lines starting with '#' are skipped. When no line of a concept is
  // marked preferred, the lexicographically first synonym is used.
  static ConceptLexicon Load(std::istream& in, const Normalization& norm = {});
  static ConceptLexicon LoadFile(const std::filesystem::path& path,
                                 const Normalization& norm = {});
  static ConceptLexicon FromConcepts(std::vector<Concept> concepts,
                                     const Normalization& norm = {});

  const std::map<std::string, Concept, std::less<>>& concepts() const {
    return concepts_;
  }
  const TermIndex& term_index() const { return term_index_; }
  const Normalization& normalization() const { return norm_; }
  bool empty() const { return concepts_.empty(); }
  std::size_t size() const { return concepts_.size(); }

  const Concept* Find(std::string_view cui) const;

  // CUIs whose synonyms normalize to the same form as `term`, sorted.
  std::vector<std::string> Lookup(std::string_view term) const;

  // Sorted surface forms of `cui`; empty for an unknown CUI.
  std::vector<std::string> SynonymsOf(std::string_view cui) const;

  friend bool operator==(const ConceptLexicon& a, const ConceptLexicon& b) {
    return a.concepts_ == b.concepts_ && a.term_index_ == b.term_index_;
  }

 private:
  void BuildTermIndex();

  std::map<std::string, Concept, std::less<>> concepts_;
  TermIndex term_index_;
  Normalization norm_;
};

}  // namespace problist

#endif  // PROBLIST_LEXICON_H_
