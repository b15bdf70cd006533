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

#include "problist/evaluation.h"

#include <algorithm>
#include <sstream>

#include "problist/corpus_io.h"
#include "problist/error.h"
#include "problist/parallel.h"

namespace problist {
namespace {

std::vector<std::string_view> Segments(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t pos = text.find(kProblemSeparator);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + kProblemSeparator.size());
  }
  return out;
}

bool Intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const std::string& x : a) {
    if (b.count(x) > 0) return true;
  }
  return false;
}

struct ExampleScore {
  bool scored = false;
  PrfScore rouge_l;
  PrfScore cui;
  std::optional<double> sent_cosine;
};

struct ExampleResult {
  std::array<ExampleScore, 4> subgroups;
  bool missing = false;
};

nlohmann::json PrfJson(const PrfScore& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

std::string FormatDouble(double v) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << v;
  return out.str();
}

}  // namespace

std::string_view SubgroupName(Subgroup subgroup) {
  switch (subgroup) {
    case Subgroup::kExplicit: return "explicit";
    case Subgroup::kDirect: return "direct";
    case Subgroup::kIndirect: return "indirect";
    case Subgroup::kAll: return "all";
  }
  return "unknown";
}

std::optional<Subgroup> SubgroupFromName(std::string_view name) {
  for (Subgroup s : kAllSubgroups) {
    if (SubgroupName(s) == name) return s;
  }
  return std::nullopt;
}

std::set<std::string> ExtractCuiSet(std::string_view text,
                                    const ConceptMatcher& matcher) {
  std::set<std::string> cuis;
  for (std::string_view segment : Segments(text)) {
    if (Trim(segment).empty()) continue;
    for (const MatchSpan& span : matcher.Extract(segment)) {
      cuis.insert(span.cuis.begin(), span.cuis.end());
    }
  }
  return cuis;
}

SubgroupViews PartitionSubgroups(const TaskExample& example,
                                 const ConceptMatcher& matcher) {
  SubgroupViews views;
  const std::set<std::string> input_cuis =
      ExtractCuiSet(example.input_text, matcher);
  for (const std::string& problem : example.reference.Problems()) {
    if (Intersects(ExtractCuiSet(problem, matcher), input_cuis)) {
      views.explicit_problems.push_back(problem);
    }
  }
  views.text[0] = Join(views.explicit_problems, kProblemSeparator);
  views.text[1] = Join(example.reference.direct, kProblemSeparator);
  views.text[2] = Join(example.reference.indirect, kProblemSeparator);
  views.text[3] = example.reference.text;
  return views;
}

std::optional<std::string> Prediction::For(Subgroup s) const {
  auto it = per_subgroup.find(s);
  if (it != per_subgroup.end()) return it->second;
  return summary;
}

PredictionTable ReadPredictions(std::istream& in) {
  PredictionTable table;
  JsonlReader reader(in);
  while (std::optional<nlohmann::json> json = reader.Next()) {
    auto fail = [&](const std::string& what) {
      return Error(ErrorCode::kSchemaViolation,
                   "line " + std::to_string(reader.line()) + ": " + what);
    };
    if (!json->is_object()) throw fail("prediction must be an object");
    auto id = json->find("note_id");
    auto summary = json->find("summary");
    if (id == json->end() || !id->is_string()) {
      throw fail("/note_id: expected string");
    }
    if (summary == json->end() || !summary->is_string()) {
      throw fail("/summary: expected string");
    }
    Prediction& p = table[id->get<std::string>()];
    auto subgroup = json->find("subgroup");
    if (subgroup != json->end()) {
      std::optional<Subgroup> s;
      if (subgroup->is_string()) s = SubgroupFromName(subgroup->get<std::string>());
      if (!s) throw fail("/subgroup: unknown subgroup");
      if (!p.per_subgroup.emplace(*s, summary->get<std::string>()).second) {
        throw fail("duplicate prediction for " + id->get<std::string>());
      }
    } else {
      if (p.summary) {
        throw fail("duplicate prediction for " + id->get<std::string>());
      }
      p.summary = summary->get<std::string>();
    }
  }
  return table;
}

std::string EvalVectorId(std::string_view note_id, Subgroup subgroup,
                         bool reference) {
  std::string id(note_id);
  id += ':';
  id += SubgroupName(subgroup);
  id += reference ? ":ref" : ":pred";
  return id;
}

EvalReport EvaluateCorpus(std::span<const TaskExample> references,
                          const PredictionTable& predictions,
                          const ConceptMatcher& matcher,
                          const VectorTable* vectors, unsigned threads) {
  std::vector<ExampleResult> results(references.size());
  ParallelFor(references.size(), threads, [&](std::size_t i) {
    const TaskExample& example = references[i];
    ExampleResult& result = results[i];
    const SubgroupViews views = PartitionSubgroups(example, matcher);
    auto prediction = predictions.find(example.note_id);
    result.missing = prediction == predictions.end();
    for (Subgroup s : kAllSubgroups) {
      const std::string& reference = views[s];
      if (Trim(reference).empty()) continue;
      std::string predicted;
      if (!result.missing) {
        predicted = prediction->second.For(s).value_or(std::string());
      }
      ExampleScore& score = result.subgroups[static_cast<std::size_t>(s)];
      score.scored = true;
      const std::vector<std::string> ref_tokens = EvalTokenize(reference);
      const std::vector<std::string> pred_tokens = EvalTokenize(predicted);
      score.rouge_l = RougeL(ref_tokens, pred_tokens);
      score.cui = CuiF(ExtractCuiSet(reference, matcher),
                       ExtractCuiSet(predicted, matcher));
      if (vectors != nullptr) {
        auto u = vectors->find(EvalVectorId(example.note_id, s, true));
        auto v = vectors->find(EvalVectorId(example.note_id, s, false));
        if (u != vectors->end() && v != vectors->end()) {
          score.sent_cosine = SentCosine(u->second, v->second);
        }
      }
    }
  });

  EvalReport report;
  report.metric = matcher.config().metric;
  report.threshold = matcher.config().threshold;
  report.max_window = matcher.config().max_window;
  report.examples = references.size();
  for (std::size_t g = 0; g < 4; ++g) {
    SubgroupScore& out = report.subgroups[g];
    PrfScore rouge_sum;
    PrfScore cui_sum;
    double cosine_sum = 0.0;
    std::size_t cosine_n = 0;
    for (const ExampleResult& r : results) {
      const ExampleScore& s = r.subgroups[g];
      if (!s.scored) continue;
      ++out.n_examples;
      rouge_sum.precision += s.rouge_l.precision;
      rouge_sum.recall += s.rouge_l.recall;
      rouge_sum.f1 += s.rouge_l.f1;
      cui_sum.precision += s.cui.precision;
      cui_sum.recall += s.cui.recall;
      cui_sum.f1 += s.cui.f1;
      if (s.sent_cosine) {
        cosine_sum += *s.sent_cosine;
        ++cosine_n;
      }
    }
    if (out.n_examples > 0) {
      const double n = static_cast<double>(out.n_examples);
      out.rouge_l = {rouge_sum.precision / n, rouge_sum.recall / n,
                     rouge_sum.f1 / n};
      out.cui = {cui_sum.precision / n, cui_sum.recall / n, cui_sum.f1 / n};
    }
    if (cosine_n > 0) out.sent_cosine = cosine_sum / cosine_n;
  }
  for (const ExampleResult& r : results) report.missing_predictions += r.missing;
  return report;
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json groups = nlohmann::json::object();
  for (Subgroup s : kAllSubgroups) {
    const SubgroupScore& score = (*this)[s];
    nlohmann::json entry{{"n_examples", score.n_examples},
                         {"rouge_l", PrfJson(score.rouge_l)},
                         {"cui", PrfJson(score.cui)},
                         {"sent_cosine", nullptr}};
    if (score.sent_cosine) entry["sent_cosine"] = *score.sent_cosine;
    groups[std::string(SubgroupName(s))] = std::move(entry);
  }
  return {{"subgroups", std::move(groups)},
          {"matcher",
           {{"metric", std::string(MetricName(metric))},
            {"threshold", threshold},
            {"max_window", max_window}}},
          {"examples", examples},
          {"missing_predictions", missing_predictions}};
}

std::string EvalReport::ToCsv() const {
  std::string csv =
      "subgroup,n_examples,rouge_l_precision,rouge_l_recall,rouge_l_f1,"
      "cui_precision,cui_recall,cui_f1,sent_cosine\n";
  for (Subgroup s : kAllSubgroups) {
    const SubgroupScore& score = (*this)[s];
    csv += std::string(SubgroupName(s)) + "," +
           std::to_string(score.n_examples) + "," +
           FormatDouble(score.rouge_l.precision) + "," +
           FormatDouble(score.rouge_l.recall) + "," +
           FormatDouble(score.rouge_l.f1) + "," +
           FormatDouble(score.cui.precision) + "," +
           FormatDouble(score.cui.recall) + "," + FormatDouble(score.cui.f1) +
           "," + (score.sent_cosine ? FormatDouble(*score.sent_cosine) : "") +
           "\n";
  }
  return csv;
}

}  // namespace problist
