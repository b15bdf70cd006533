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

#include "problist/synthetic.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <iterator>
#include <map>
#include <set>
#include <string>

#include "problist/error.h"
#include "problist/random.h"

namespace problist {
namespace {

constexpr const char* kComplaints[] = {
    "Pt does not feel better than at admission, still very fatigued and "
    "weak. No other complaints.",
    "No new complaints overnight.",
    "Pt reports feeling tired but otherwise comfortable.",
    "Resting in bed, family at bedside.",
};

constexpr const char* kAllergies[] = {
    "No Known Drug Allergies",
    "Penicillins",
    "Sulfa (Sulfonamide Antibiotics)",
};

constexpr const char* kObjective[] = {
    "Vitals stable overnight. Labs reviewed.",
    "Afebrile, heart rate regular. Exam unchanged.",
    "Tolerating diet. Lines clean and dry.",
};

constexpr const char* kActions[] = {
    "continue current management",
    "monitor closely",
    "follow up morning labs",
    "consult specialist team",
    "titrate therapy as tolerated",
    "reassess tomorrow",
};

struct NotRelevantItem {
  const char* problem;
  const char* plan;
};

constexpr NotRelevantItem kNotRelevant[] = {
    {"FEN", "regular diet, replete lytes"},
    {"Prophylaxis", "subcutaneous heparin"},
    {"Dispo", "remain in unit today"},
    {"Access", "peripheral lines"},
};

// Words the assessment templates put around problem terms.
constexpr const char* kTemplateWords[] = {
    "pt",      "is",       "a",   "y",   "o",    "female", "male",
    "with",    "h",        "who", "presents", "admitted", "year", "old",
    "history", "of",       "now", "currently", "stable", "on", "the",
    "floor",   "and"};

// Token sets of every lexicon term, tagged with the owning concept.
struct TermTokens {
  std::size_t concept_index;
  std::set<std::string> tokens;
};

struct Problem {
  std::string term;
  ProblemLabel label;
  bool in_assessment;
};

std::string JoinNatural(const std::vector<std::string>& terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) out += i + 1 == terms.size() ? " and " : ", ";
    out += terms[i];
  }
  return out;
}

std::string Assessment(Rng& rng, const std::vector<std::string>& present) {
  const std::string age = std::to_string(rng.Between(21, 94));
  const std::string sex = rng.Bernoulli(0.5) ? "female" : "male";
  const std::string& main = present.front();
  const std::vector<std::string> rest(present.begin() + 1, present.end());
  std::string text;
  switch (rng.Uniform(3)) {
    case 0:
      text = "Pt is a " + age + " y.o " + sex;
      if (!rest.empty()) text += " with h.o " + JoinNatural(rest);
      text += " who presents with " + main + ".";
      break;
    case 1:
      text = age + " y.o " + sex;
      if (!rest.empty()) text += " with " + JoinNatural(rest) + ",";
      text += " admitted with " + main + ".";
      break;
    default:
      text = age + " year old " + sex;
      if (!rest.empty()) text += " with history of " + JoinNatural(rest);
      text += " now with " + main + ".";
      break;
  }
  if (rng.Bernoulli(0.3)) text += " Currently stable on the floor.";
  return text;
}

std::set<std::string> Vocabulary(const Concept& item, const Normalization& norm) {
  std::set<std::string> out;
  for (const std::string& synonym : item.synonyms) {
    for (Token& t : Tokenize(synonym, norm)) out.insert(std::move(t.text));
  }
  return out;
}

bool IsTemplateWord(const std::string& token) {
  if (std::all_of(token.begin(), token.end(),
                  [](unsigned char c) { return std::isdigit(c); })) {
    return true;
  }
  return std::find(std::begin(kTemplateWords), std::end(kTemplateWords),
                   token) != std::end(kTemplateWords);
}

// True when some term of a concept outside `chosen` could be spelled by the
// chosen vocabularies plus template words.
bool AdmitsForeignTerm(const std::vector<TermTokens>& terms,
                       const std::set<std::size_t>& chosen,
                       const std::map<std::string, std::size_t>& owner) {
  for (const TermTokens& term : terms) {
    if (chosen.count(term.concept_index)) continue;
    bool spelled = true;
    bool touches = false;
    for (const std::string& t : term.tokens) {
      const bool owned = owner.count(t) > 0;
      touches = touches || owned;
      if (!owned && !IsTemplateWord(t)) {
        spelled = false;
        break;
      }
    }
    if (spelled && touches) return true;
  }
  return false;
}

NoteRecord GenerateNote(const SyntheticOptions& options,
                        const std::vector<const Concept*>& concepts,
                        const std::vector<std::set<std::string>>& vocabularies,
                        const std::vector<TermTokens>& terms_by_concept,
                        std::size_t ordinal) {
  char id[32];
  std::snprintf(id, sizeof(id), "synth-%06zu", ordinal);
  Rng rng(DeriveSeed(options.seed, id));

  std::vector<std::size_t> order(concepts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.Shuffle(order);

  const std::size_t max_problems =
      std::min(options.max_problems, concepts.size());
  const std::size_t wanted = static_cast<std::size_t>(rng.Between(
      static_cast<std::int64_t>(std::min(options.min_problems, max_problems)),
      static_cast<std::int64_t>(max_problems)));
  const bool with_neither = rng.Bernoulli(options.neither_rate);

  // Concepts are admitted only when their synonyms share no token with the
  // concepts already chosen and no other lexicon term can be spelled across
  // them. Any synonym swap then keeps the set of matchable concepts fixed.
  std::map<std::string, std::size_t> owner;
  std::set<std::size_t> chosen;
  std::vector<std::string> terms;
  for (std::size_t idx : order) {
    if (terms.size() == wanted + (with_neither ? 1 : 0)) break;
    const std::set<std::string>& vocabulary = vocabularies[idx];
    bool clash = false;
    for (const std::string& t : vocabulary) clash = clash || owner.count(t);
    if (clash) continue;
    std::map<std::string, std::size_t> widened = owner;
    for (const std::string& t : vocabulary) widened.emplace(t, idx);
    chosen.insert(idx);
    if (AdmitsForeignTerm(terms_by_concept, chosen, widened)) {
      chosen.erase(idx);
      continue;
    }
    owner = std::move(widened);
    const std::vector<std::string> synonyms(concepts[idx]->synonyms.begin(),
                                            concepts[idx]->synonyms.end());
    terms.push_back(rng.Pick(synonyms));
  }

  std::vector<Problem> problems;
  for (std::size_t i = 0; i < std::min(wanted, terms.size()); ++i) {
    Problem problem{terms[i], ProblemLabel::kDirect, true};
    if (i > 0 && !rng.Bernoulli(0.4)) {
      problem.label = ProblemLabel::kIndirect;
      problem.in_assessment = !rng.Bernoulli(options.absent_indirect_fraction);
    }
    problems.push_back(std::move(problem));
  }
  if (with_neither && terms.size() > wanted) {
    problems.push_back({terms.back(), ProblemLabel::kNeither, false});
  }

  std::vector<std::string> present;
  std::vector<std::string> absent_findings;
  for (const Problem& p : problems) {
    if (p.in_assessment) {
      present.push_back(p.term);
    } else if (p.label == ProblemLabel::kIndirect && rng.Bernoulli(0.5)) {
      absent_findings.push_back(p.term);
    }
  }

  struct PlanItem {
    std::string problem;
    std::string plan;
    ProblemLabel label;
  };
  std::vector<PlanItem> plan;
  for (const Problem& p : problems) {
    plan.push_back(
        {p.term, kActions[rng.Uniform(std::size(kActions))], p.label});
  }
  if (rng.Bernoulli(options.not_relevant_rate)) {
    const NotRelevantItem& item =
        kNotRelevant[rng.Uniform(std::size(kNotRelevant))];
    plan.push_back({item.problem, item.plan, ProblemLabel::kNotRelevant});
  }
  rng.Shuffle(plan);

  std::string text = "Assessment: " + Assessment(rng, present) + "\n";
  text += "Chief Complaint: " +
          std::string(kComplaints[rng.Uniform(std::size(kComplaints))]) + "\n";
  text += "Allergies: " +
          std::string(kAllergies[rng.Uniform(std::size(kAllergies))]) + "\n";
  text += "Objective: " +
          std::string(kObjective[rng.Uniform(std::size(kObjective))]);
  for (const std::string& finding : absent_findings) {
    text += " Imaging notable for " + finding + ".";
  }
  text += "\n";

  NoteRecord note;
  note.note_id = id;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    text += "# " + plan[i].problem + ": " + plan[i].plan + ".\n";
    note.annotations.push_back(
        {static_cast<int>(i), plan[i].problem, plan[i].label});
  }
  note.text = std::move(text);
  return note;
}

}  // namespace

void SyntheticOptions::Validate() const {
  if (n_notes == 0) {
    throw Error(ErrorCode::kInvalidArgument, "n_notes must be positive");
  }
  if (min_problems < 1 || min_problems > max_problems) {
    throw Error(ErrorCode::kInvalidArgument,
                "need 1 <= min_problems <= max_problems");
  }
  for (double p : {absent_indirect_fraction, neither_rate, not_relevant_rate}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "synthetic rates must lie in [0, 1]");
    }
  }
}

std::vector<NoteRecord> GenerateSyntheticCorpus(const SyntheticOptions& options,
                                                const ConceptLexicon& lexicon) {
  options.Validate();
  if (lexicon.empty()) {
    throw Error(ErrorCode::kEmptyLexicon,
                "synthetic corpus needs a non-empty lexicon");
  }
  const Normalization& norm = lexicon.normalization();
  std::vector<const Concept*> concepts;
  std::vector<std::set<std::string>> vocabularies;
  std::vector<TermTokens> terms;
  for (const auto& [cui, item] : lexicon.concepts()) {
    for (const std::string& synonym : item.synonyms) {
      TermTokens term{concepts.size(), {}};
      for (Token& t : Tokenize(synonym, norm)) {
        term.tokens.insert(std::move(t.text));
      }
      terms.push_back(std::move(term));
    }
    concepts.push_back(&item);
    vocabularies.push_back(Vocabulary(item, norm));
  }

  std::vector<NoteRecord> notes;
  notes.reserve(options.n_notes);
  for (std::size_t i = 0; i < options.n_notes; ++i) {
    notes.push_back(
        GenerateNote(options, concepts, vocabularies, terms, i));
  }
  return notes;
}

}  // namespace problist
