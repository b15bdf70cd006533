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

#include "problist/pipeline.h"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "problist/corpus_io.h"
#include "problist/digest.h"
#include "problist/error.h"
#include "problist/evaluation.h"
#include "problist/lexicon.h"
#include "problist/metrics.h"
#include "problist/random.h"
#include "problist/text.h"

#ifndef PROBLIST_VERSION
#define PROBLIST_VERSION "0.0.0"
#endif
#ifndef PROBLIST_DATA_DIR
#define PROBLIST_DATA_DIR "data"
#endif

namespace problist {
namespace fs = std::filesystem;
namespace {

constexpr std::string_view kCommandNames[] = {
    "synth", "parse", "extract", "augment", "mask", "baseline", "evaluate"};

std::ifstream OpenInput(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

std::ofstream OpenOutput(const fs::path& path) {
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, "no --out given");
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

void CloseOutput(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

void RequireInput(const fs::path& path, std::string_view flag) {
  if (path.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "missing required " + std::string(flag));
  }
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorCode::kIoError, "input not found: " + path.string());
  }
}

nlohmann::json ReadJsonFile(const fs::path& path) {
  std::ifstream in = OpenInput(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, path.string() + ": " + e.what());
  }
}

nlohmann::json MatcherJson(const MatcherConfig& m) {
  const FeatureConfig& f = m.features;
  return {{"metric", std::string(MetricName(m.metric))},
          {"threshold", m.threshold},
          {"max_window", m.max_window},
          {"overlap_policy", std::string(OverlapPolicyName(m.overlap_policy))},
          {"split_sentences", m.split_sentences},
          {"features",
           {{"kind", f.kind == FeatureKind::kToken ? "token" : "char"},
            {"n", f.n},
            {"lowercase", f.normalization.lowercase},
            {"strip_punct", f.normalization.strip_punct},
            {"pad_boundaries", f.normalization.pad_boundaries}}}};
}

// Everything a stage needs beyond its own inputs.
class Stage {
 public:
  explicit Stage(const RunConfig& config) : config_(config) {}

  const RunConfig& config() const { return config_; }
  RunResult& result() { return result_; }
  const std::vector<fs::path>& inputs() const { return inputs_; }

  void AddInput(const fs::path& path, std::string_view flag) {
    RequireInput(path, flag);
    inputs_.push_back(path);
  }

  const ConceptLexicon& Lexicon() {
    if (!lexicon_) {
      AddInput(config_.lexicon, "--lexicon");
      lexicon_ = ConceptLexicon::LoadFile(
          config_.lexicon, config_.matcher.features.normalization);
    }
    return *lexicon_;
  }

  const ConceptMatcher& Matcher() {
    if (!matcher_) matcher_ = ConceptMatcher::Build(Lexicon(), config_.matcher);
    return *matcher_;
  }

  ParseOptions Parsing() {
    ParseOptions options;
    options.leading_kind = config_.leading_kind;
    if (!config_.headers.empty()) {
      AddInput(config_.headers, "--headers");
      options.headers = HeaderTable::FromJson(ReadJsonFile(config_.headers));
    }
    return options;
  }

  std::ofstream Create(const fs::path& path) {
    result_.artifacts.push_back(path);
    return OpenOutput(path);
  }

  void Warn(std::string message) {
    result_.warnings.push_back(std::move(message));
  }

 private:
  const RunConfig& config_;
  RunResult result_;
  std::vector<fs::path> inputs_;
  std::optional<ConceptLexicon> lexicon_;
  std::optional<ConceptMatcher> matcher_;
};

std::vector<NoteRecord> LoadNotes(Stage& stage) {
  stage.AddInput(stage.config().input, "--in");
  std::ifstream in = OpenInput(stage.config().input);
  return ReadNotes(in);
}

std::vector<TaskExample> LoadExamples(Stage& stage) {
  stage.AddInput(stage.config().input, "--in");
  std::ifstream in = OpenInput(stage.config().input);
  return ReadTaskExamples(in);
}

void RunSynth(Stage& stage) {
  const RunConfig& config = stage.config();
  SyntheticOptions options = config.synth;
  options.seed = config.seed;
  const std::vector<NoteRecord> notes =
      GenerateSyntheticCorpus(options, stage.Lexicon());
  std::ofstream out = stage.Create(config.output);
  WriteNotes(out, notes);
  CloseOutput(out, config.output);
  stage.result().counts["notes"] = notes.size();
}

void RunParse(Stage& stage) {
  const RunConfig& config = stage.config();
  const ParseOptions options = stage.Parsing();
  const std::vector<NoteRecord> notes = LoadNotes(stage);
  std::vector<TaskExample> examples;
  std::size_t truncated = 0;
  for (const NoteRecord& record : notes) {
    try {
      const ProgressNote note =
          ParseProgressNote(record.note_id, record.text, options);
      examples.push_back(BuildTaskExample(
          note, BuildReferenceSummary(record.annotations), config.mode,
          config.max_words));
      truncated += examples.back().truncated;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoSectionsFound &&
          e.code() != ErrorCode::kMissingAssessment) {
        throw;
      }
      stage.Warn(record.note_id + ": " + std::string(ErrorCodeName(e.code())) +
                 ": " + e.what());
    }
  }
  std::ofstream out = stage.Create(config.output);
  WriteTaskExamples(out, examples);
  CloseOutput(out, config.output);
  stage.result().counts = {{"notes", notes.size()},
                           {"examples", examples.size()},
                           {"skipped", notes.size() - examples.size()},
                           {"truncated", truncated}};
}

void RunExtract(Stage& stage) {
  const RunConfig& config = stage.config();
  const ConceptMatcher& matcher = stage.Matcher();
  const ParseOptions options = stage.Parsing();
  const std::vector<NoteRecord> notes = LoadNotes(stage);
  std::ofstream out = stage.Create(config.output);
  std::size_t span_count = 0;
  std::size_t skipped = 0;
  for (const NoteRecord& record : notes) {
    std::vector<MatchSpan> spans;
    if (config.scope == ExtractScope::kAll) {
      spans = matcher.Extract(record.text);
    } else {
      ProgressNote note;
      try {
        note = ParseProgressNote(record.note_id, record.text, options);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoSectionsFound) throw;
        stage.Warn(record.note_id + ": " + e.what());
        ++skipped;
        continue;
      }
      for (const Section& section : note.sections) {
        if (section.kind != SectionKind::kAssessment) continue;
        for (MatchSpan span : matcher.Extract(section.text)) {
          span.start += section.start;
          span.end += section.start;
          spans.push_back(std::move(span));
        }
      }
    }
    const CodepointOffsets offsets(record.text);
    nlohmann::json items = nlohmann::json::array();
    for (const MatchSpan& span : spans) {
      items.push_back({{"start", offsets.ToCodepoint(span.start)},
                       {"end", offsets.ToCodepoint(span.end)},
                       {"surface", span.surface},
                       {"cuis", span.cuis},
                       {"term", span.matched_term},
                       {"score", span.score}});
    }
    span_count += spans.size();
    out << DumpJsonLine({{"note_id", record.note_id}, {"spans", items}})
        << '\n';
  }
  CloseOutput(out, config.output);
  stage.result().counts = {
      {"notes", notes.size()}, {"spans", span_count}, {"skipped", skipped}};
}

void RunAugment(Stage& stage) {
  const RunConfig& config = stage.config();
  AugConfig aug = config.augment;
  aug.seed = config.seed;
  aug.Validate();
  const ConceptLexicon& lexicon = stage.Lexicon();
  const ConceptMatcher& matcher = stage.Matcher();
  const std::vector<TaskExample> examples = LoadExamples(stage);
  std::optional<VectorTable> vectors;
  if (!config.vectors.empty()) {
    stage.AddInput(config.vectors, "--vectors");
    std::ifstream in = OpenInput(config.vectors);
    vectors = LoadVectors(in);
  }

  AugmentStats stats;
  const std::vector<AugmentedPair> pairs =
      AugmentCorpus(examples, matcher, lexicon, aug, config.threads, &stats);
  std::unordered_map<std::string, const TaskExample*> by_id;
  std::unordered_map<std::string, OriginalText> originals;
  for (const TaskExample& e : examples) {
    by_id.emplace(e.note_id, &e);
    originals.emplace(e.note_id, OriginalText{e.input_text, e.reference.text});
  }
  std::ofstream out = stage.Create(config.output);
  for (const AugmentedPair& pair : pairs) {
    out << DumpJsonLine(AugmentedPairToJson(pair, *by_id.at(pair.origin_id)))
        << '\n';
  }
  CloseOutput(out, config.output);
  if (!config.report.empty()) {
    nlohmann::json report = {{"pairs", 0}};
    if (!pairs.empty()) {
      report = BuildQualityReport(pairs, originals,
                                  vectors ? &*vectors : nullptr)
                   .ToJson();
    }
    std::ofstream rep = stage.Create(config.report);
    rep << report.dump(2) << '\n';
    CloseOutput(rep, config.report);
  }
  stage.result().counts = {{"examples", stats.examples},
                           {"skipped", stats.skipped},
                           {"pairs", stats.pairs}};
}

void RunMask(Stage& stage) {
  const RunConfig& config = stage.config();
  MaskConfig mask = config.mask;
  mask.seed = config.seed;
  mask.Validate();
  const ConceptMatcher* matcher =
      mask.policy == MaskPolicy::kConceptMask ? &stage.Matcher() : nullptr;
  const ParseOptions options = stage.Parsing();
  stage.AddInput(config.input, "--in");
  std::ifstream in = OpenInput(config.input);
  NoteReader reader(in);
  std::ofstream out = stage.Create(config.output);
  const DaptStats stats = BuildDaptCorpus(
      [&] { return reader.Next(); }, options, matcher, mask,
      [&](const MaskedExample& example) {
        out << DumpJsonLine(MaskedExampleToJson(example, mask.policy)) << '\n';
      },
      config.threads);
  CloseOutput(out, config.output);
  for (const std::string& message : stats.errors) stage.Warn(message);
  const double fraction =
      stats.total_tokens == 0
          ? 0.0
          : static_cast<double>(stats.masked_tokens) / stats.total_tokens;
  stage.result().counts = {{"emitted", stats.emitted},
                           {"skipped_empty", stats.skipped_empty},
                           {"skipped_error", stats.skipped_error},
                           {"masked_tokens", stats.masked_tokens},
                           {"total_tokens", stats.total_tokens},
                           {"masked_fraction", fraction}};
}

void RunBaseline(Stage& stage) {
  const RunConfig& config = stage.config();
  const ConceptLexicon& lexicon = stage.Lexicon();
  const ConceptMatcher& matcher = stage.Matcher();
  const ParseOptions options = stage.Parsing();
  const std::vector<NoteRecord> notes = LoadNotes(stage);
  std::ofstream out = stage.Create(config.output);
  std::size_t empty = 0;
  for (const NoteRecord& record : notes) {
    std::vector<std::string> parts;
    try {
      const ProgressNote note =
          ParseProgressNote(record.note_id, record.text, options);
      for (const Section& s : note.sections) {
        if (s.kind == SectionKind::kAssessment) parts.emplace_back(Trim(s.text));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoSectionsFound) throw;
    }
    if (parts.empty()) stage.Warn(record.note_id + ": no assessment section");
    const std::string summary = RuleBasedSummarize(
        Join(parts, "\n"), matcher, lexicon, config.baseline);
    empty += summary.empty();
    out << DumpJsonLine({{"note_id", record.note_id}, {"summary", summary}})
        << '\n';
  }
  CloseOutput(out, config.output);
  stage.result().counts = {{"notes", notes.size()},
                           {"empty_summaries", empty}};
}

void RunEvaluate(Stage& stage) {
  const RunConfig& config = stage.config();
  const ConceptMatcher& matcher = stage.Matcher();
  const std::vector<TaskExample> references = LoadExamples(stage);
  stage.AddInput(config.predictions, "--predictions");
  std::ifstream pin = OpenInput(config.predictions);
  const PredictionTable predictions = ReadPredictions(pin);
  std::optional<VectorTable> vectors;
  if (!config.vectors.empty()) {
    stage.AddInput(config.vectors, "--vectors");
    std::ifstream in = OpenInput(config.vectors);
    vectors = LoadVectors(in);
  }
  const EvalReport report =
      EvaluateCorpus(references, predictions, matcher,
                     vectors ? &*vectors : nullptr, config.threads);
  for (const TaskExample& e : references) {
    if (predictions.count(e.note_id) == 0) {
      stage.Warn(e.note_id + ": no prediction, scored as empty");
    }
  }
  std::ofstream out = stage.Create(config.output);
  out << report.ToJson().dump(2) << '\n';
  CloseOutput(out, config.output);
  if (!config.csv.empty()) {
    std::ofstream csv = stage.Create(config.csv);
    csv << report.ToCsv();
    CloseOutput(csv, config.csv);
  }
  stage.result().counts = {{"examples", report.examples},
                           {"missing_predictions", report.missing_predictions}};
}

nlohmann::json DigestList(const std::vector<fs::path>& paths) {
  nlohmann::json list = nlohmann::json::array();
  for (const fs::path& p : paths) {
    list.push_back({{"path", p.string()}, {"sha256", Sha256File(p)}});
  }
  return list;
}

}  // namespace

std::string_view CommandName(Command command) {
  return kCommandNames[static_cast<std::size_t>(command)];
}

std::optional<Command> CommandFromName(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kCommandNames); ++i) {
    if (kCommandNames[i] == name) return static_cast<Command>(i);
  }
  return std::nullopt;
}

nlohmann::json RunConfig::ToJson() const {
  nlohmann::json json{
      {"command", std::string(CommandName(command))},
      {"seed", seed},
      {"threads", threads},
      {"input", input.string()},
      {"output", output.string()},
      {"lexicon", lexicon.string()},
      {"matcher", MatcherJson(matcher)},
  };
  auto path_if = [&](const char* key, const fs::path& p) {
    if (!p.empty()) json[key] = p.string();
  };
  path_if("predictions", predictions);
  path_if("vectors", vectors);
  path_if("report", report);
  path_if("csv", csv);
  path_if("headers", headers);
  switch (command) {
    case Command::kSynth:
      json["synth"] = {{"n_notes", synth.n_notes},
                       {"absent_indirect_fraction",
                        synth.absent_indirect_fraction},
                       {"min_problems", synth.min_problems},
                       {"max_problems", synth.max_problems},
                       {"neither_rate", synth.neither_rate},
                       {"not_relevant_rate", synth.not_relevant_rate}};
      break;
    case Command::kParse:
      json["parse"] = {{"mode", std::string(InputModeName(mode))},
                       {"max_words", max_words},
                       {"leading_kind",
                        std::string(SectionKindName(leading_kind))}};
      break;
    case Command::kExtract:
      json["section"] = scope == ExtractScope::kAll ? "all" : "assessment";
      break;
    case Command::kAugment:
      json["augment"] = {{"cap", augment.cap},
                         {"threshold", augment.threshold}};
      break;
    case Command::kMask:
      json["mask"] = {{"policy", std::string(MaskPolicyName(mask.policy))},
                      {"ratio", mask.ratio},
                      {"span_len", mask.mean_span_len},
                      {"sentinel_prefix", mask.sentinel_prefix}};
      break;
    case Command::kBaseline:
      json["baseline"] = {{"preferred_terms", baseline.preferred_terms},
                          {"semantic_types", baseline.semantic_types}};
      break;
    case Command::kEvaluate:
      break;
  }
  return json;
}

fs::path DefaultLexiconPath() {
  return fs::path(PROBLIST_DATA_DIR) / "toy_lexicon.tsv";
}

fs::path ManifestPath(const fs::path& output) {
  fs::path manifest = output;
  manifest += ".manifest.json";
  return manifest;
}

RunResult Run(const RunConfig& config) {
  config.matcher.Validate();
  if (config.output.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "missing required --out");
  }
  // Augmentation identifies concepts at its own threshold.
  RunConfig resolved = config;
  if (config.command == Command::kAugment) {
    resolved.matcher.threshold = config.augment.threshold;
  }
  Stage stage(resolved);
  switch (config.command) {
    case Command::kSynth: RunSynth(stage); break;
    case Command::kParse: RunParse(stage); break;
    case Command::kExtract: RunExtract(stage); break;
    case Command::kAugment: RunAugment(stage); break;
    case Command::kMask: RunMask(stage); break;
    case Command::kBaseline: RunBaseline(stage); break;
    case Command::kEvaluate: RunEvaluate(stage); break;
  }

  RunResult result = std::move(stage.result());
  const nlohmann::json manifest{
      {"tool", "problist"},
      {"version", PROBLIST_VERSION},
      {"command", std::string(CommandName(config.command))},
      {"config", resolved.ToJson()},
      {"inputs", DigestList(stage.inputs())},
      {"artifacts", DigestList(result.artifacts)},
      {"counts", result.counts},
  };
  const fs::path manifest_path = ManifestPath(config.output);
  std::ofstream out = OpenOutput(manifest_path);
  out << manifest.dump(2) << '\n';
  CloseOutput(out, manifest_path);
  result.artifacts.push_back(manifest_path);
  return result;
}

}  // namespace problist
