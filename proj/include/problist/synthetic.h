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

// Templated SOAP notes with plan annotations, for demos and tests in place
// of restricted clinical data.

#ifndef PROBLIST_SYNTHETIC_H_
#define PROBLIST_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "problist/corpus_io.h"
#include "problist/lexicon.h"

namespace problist {

struct SyntheticOptions {
  std::uint64_t seed = 7;
  std::size_t n_notes = 10;
  // Probability that an Indirect problem is left out of the assessment.
  double absent_indirect_fraction = 0.3;
  std::size_t min_problems = 1;
  std::size_t max_problems = 8;
  double neither_rate = 0.1;
  double not_relevant_rate = 0.3;

  void Validate() const;
};

// Each note embeds its Direct problems and the present Indirect problems in
// the assessment, lists every problem as a "#" plan subsection, and uses
// headers from HeaderTable::Default(). Concepts within a note have
// disjoint synonym vocabularies, so synonym swaps never change which concepts
// match. Deterministic in (options, lexicon).
std::vector<NoteRecord> GenerateSyntheticCorpus(const SyntheticOptions& options,
                                                const ConceptLexicon& lexicon);

}  // namespace problist

#endif  // PROBLIST_SYNTHETIC_H_
