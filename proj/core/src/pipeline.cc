// Copyright 2026 The Falsesum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "falsesum/pipeline.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "falsesum/corpus.h"
#include "falsesum/dataset.h"
#include "falsesum/errors.h"
#include "falsesum/generation.h"
#include "falsesum/metrics.h"
#include "falsesum/parallel.h"
#include "falsesum/relations.h"

namespace falsesum {
namespace {

namespace fs = std::filesystem;

// Collects the manifest while a stage runs. Paths are recorded by file name
// so manifests do not depend on the working directory.
class Manifest {
 public:
  Manifest(std::string_view stage, const PipelineConfig &config) {
    json_["stage"] = stage;
    json_["seed"] = config.seed;
    json_["inputs"] = Json::array();
    json_["outputs"] = Json::array();
    json_["counts"] = Json::object();
  }

  void input(const fs::path &path) {
    json_["inputs"].push_back(
        Json{{"path", path.filename().string()}, {"sha256", sha256_file(path)}});
  }

  void input_directory(const fs::path &dir) {
    // Digest over the sorted (name, content digest) list.
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::string listing;
    for (const fs::path &f : files) {
      listing += f.filename().string() + '\t' + sha256_file(f) + '\n';
    }
    json_["inputs"].push_back(Json{{"path", dir.filename().string() + "/"},
                                   {"files", files.size()},
                                   {"sha256", sha256_hex(listing)}});
  }

  void output(const fs::path &path, std::size_t records) {
    json_["outputs"].push_back(Json{{"path", path.filename().string()},
                                    {"records", records},
                                    {"sha256", sha256_file(path)}});
  }

  Json &counts() { return json_["counts"]; }
  Json &operator[](const char *key) { return json_[key]; }
  const Json &json() const { return json_; }

 private:
  Json json_;
};

void require_input(const fs::path &path, std::string_view flag) {
  if (path.empty()) {
    throw UsageError("missing required path " + std::string(flag));
  }
  if (!fs::exists(path)) {
    throw UsageError("input path does not exist: " + path.string());
  }
}

void require_output(const fs::path &path, std::string_view flag) {
  if (path.empty()) {
    throw UsageError("missing required path " + std::string(flag));
  }
}

fs::path normalized(const fs::path &p) {
  return fs::weakly_canonical(fs::absolute(p));
}

void require_distinct(const std::vector<fs::path> &paths) {
  std::set<fs::path> seen;
  for (const fs::path &p : paths) {
    if (p.empty()) continue;
    if (!seen.insert(normalized(p)).second) {
      throw UsageError("path used more than once: " + p.string());
    }
  }
}

fs::path with_suffix(const fs::path &path, std::string_view suffix) {
  return fs::path(path.string() + std::string(suffix));
}

CorpusPaths corpus_paths(const PipelineConfig &config) {
  require_input(config.corpus, "--corpus");
  require_input(config.parses, "--parses");
  CorpusPaths paths = CorpusPaths::in_directory(config.corpus, config.parses);
  require_input(paths.documents, "--corpus (documents.jsonl)");
  require_input(paths.summaries, "--corpus (summaries.jsonl)");
  return paths;
}

void record_corpus_inputs(Manifest &manifest, const CorpusPaths &paths) {
  manifest.input(paths.documents);
  manifest.input(paths.summaries);
  manifest.input_directory(paths.parses);
}

std::size_t write_skip_report(const std::vector<SkipRecord> &skips,
                              const fs::path &path) {
  JsonlWriter writer(path);
  for (const SkipRecord &s : skips) {
    writer.write(Json{{"doc_id", s.doc_id}, {"reason", s.reason}});
  }
  writer.close();
  return writer.count();
}

Json reason_histogram(const std::vector<SkipRecord> &skips) {
  std::map<std::string, std::size_t> counts;
  for (const SkipRecord &s : skips) ++counts[s.reason];
  Json out = Json::object();
  for (const auto &[reason, n] : counts) out[reason] = n;
  return out;
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot open output file: " + path.string());
  out << text;
}

std::string fixed(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

// --- stages ---------------------------------------------------------------

fs::path stage_ingest(const PipelineConfig &config, Manifest &manifest) {
  CorpusPaths paths = corpus_paths(config);
  require_output(config.units_out, "--units-out");
  require_distinct({paths.documents, paths.summaries, config.units_out});
  Corpus corpus = load_corpus(paths, config.jobs);
  record_corpus_inputs(manifest, paths);

  JsonlWriter writer(config.units_out);
  for (const DocSummaryUnit &u : corpus.units) {
    writer.write(Json{{"doc_id", u.doc_id},
                      {"summary_index", u.summary_index},
                      {"summary", summary_string(u.summary)}});
  }
  writer.close();
  fs::path skips = with_suffix(config.units_out, ".skips.jsonl");
  write_skip_report(corpus.skips, skips);
  manifest.output(config.units_out, writer.count());
  manifest.output(skips, corpus.skips.size());
  manifest.counts()["summary_sentences"] = corpus.summary_sentences;
  manifest.counts()["units"] = corpus.units.size();
  manifest.counts()["skipped"] = corpus.skips.size();
  manifest["skips"] = reason_histogram(corpus.skips);
  return config.units_out;
}

fs::path stage_extract(const PipelineConfig &config, Manifest &manifest) {
  CorpusPaths paths = corpus_paths(config);
  require_output(config.tuples_out, "--tuples-out");
  Corpus corpus = load_corpus(paths, config.jobs);
  record_corpus_inputs(manifest, paths);

  // One document per distinct doc_id, in corpus order.
  std::vector<std::shared_ptr<const ParsedDocument>> documents;
  for (const DocSummaryUnit &u : corpus.units) {
    if (documents.empty() || documents.back()->doc_id != u.doc_id) {
      documents.push_back(u.document);
    }
  }
  auto per_doc = parallel_map(documents.size(), config.jobs, [&](std::size_t i) {
    const ParsedDocument &doc = *documents[i];
    Rng rng = derive_rng(config.seed, doc.doc_id, kWholeDocument,
                         stage_tag::kSelect);
    std::vector<Json> lines;
    for (const RelationTuple &t : select_document_tuples(doc, rng)) {
      lines.push_back(tuple_to_json(doc.doc_id, t,
                                    doc.sentences.at(t.predicate.sent_index)));
    }
    return lines;
  });
  JsonlWriter writer(config.tuples_out);
  for (const auto &lines : per_doc) {
    for (const Json &line : lines) writer.write(line);
  }
  writer.close();
  manifest.output(config.tuples_out, writer.count());
  manifest.counts()["documents"] = documents.size();
  manifest.counts()["tuples"] = writer.count();
  return config.tuples_out;
}

fs::path stage_format(const PipelineConfig &config, Manifest &manifest) {
  CorpusPaths paths = corpus_paths(config);
  require_output(config.train_out, "--train-out");
  require_output(config.test_out, "--test-out");
  if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
    throw UsageError("--split must lie strictly between 0 and 1");
  }
  require_distinct({paths.documents, paths.summaries, config.train_out,
                    config.test_out, config.gen_in});
  Corpus corpus = load_corpus(paths, config.jobs);
  record_corpus_inputs(manifest, paths);

  FormatOptions options{config.seed, config.force_code};
  auto results =
      parallel_map(corpus.units.size(), config.jobs, [&](std::size_t i) {
        const DocSummaryUnit &unit = corpus.units[i];
        return make_example(
            unit, split_mode(config.seed, unit, config.train_fraction), options);
      });

  JsonlWriter train(config.train_out);
  JsonlWriter test(config.test_out);
  std::vector<FormattedExample> test_examples;
  std::vector<SkipRecord> skips = corpus.skips;
  QualityReport quality;
  std::size_t intrinsic = 0;
  for (const FormatResult &r : results) {
    quality += r.quality;
    if (!r.ok()) {
      skips.push_back({r.skip().doc_id, r.skip().reason});
      continue;
    }
    const FormattedExample &e = r.example();
    intrinsic += e.code == ControlCode::kIntrinsic ? 1 : 0;
    if (e.mode == Mode::kTrain) {
      train.write(e.to_json());
    } else {
      test.write(e.to_json());
      if (!config.gen_in.empty()) test_examples.push_back(e);
    }
  }
  train.close();
  test.close();
  std::stable_sort(skips.begin(), skips.end(),
                   [](const SkipRecord &a, const SkipRecord &b) {
                     return a.doc_id < b.doc_id;
                   });
  fs::path skip_path = with_suffix(config.train_out, ".skips.jsonl");
  write_skip_report(skips, skip_path);

  manifest.output(config.train_out, train.count());
  manifest.output(config.test_out, test.count());
  if (!config.gen_in.empty()) {
    std::size_t n = write_generation_batch(test_examples, config.gen_in);
    manifest.output(config.gen_in, n);
  }
  manifest.output(skip_path, skips.size());
  auto &counts = manifest.counts();
  counts["units"] = corpus.units.size();
  counts["train"] = train.count();
  counts["test"] = test.count();
  counts["skipped_units"] = corpus.units.size() - train.count() - test.count();
  counts["intrinsic"] = intrinsic;
  counts["missing_lemmas"] = quality.missing_lemmas;
  counts["reduced_spans"] = quality.reduced_spans;
  counts["unrenderable_spans"] = quality.unrenderable_spans;
  manifest["split_fraction"] = config.train_fraction;
  manifest["force_code"] =
      config.force_code ? Json(to_string(*config.force_code)) : Json(nullptr);
  manifest["skips"] = reason_histogram(skips);
  return config.train_out;
}

fs::path stage_mock_generate(const PipelineConfig &config, Manifest &manifest) {
  require_input(config.gen_in, "--gen-in");
  require_output(config.gen_out, "--gen-out");
  require_distinct({config.gen_in, config.gen_out});
  std::vector<GenerationRequest> requests = read_generation_batch(config.gen_in);
  manifest.input(config.gen_in);
  auto records = parallel_map(requests.size(), config.jobs, [&](std::size_t i) {
    const GenerationRequest &r = requests[i];
    Rng rng = derive_rng(config.seed, r.doc_id,
                         static_cast<std::uint64_t>(r.summary_index), kMockStage);
    return mock_generate(r, rng);
  });
  JsonlWriter writer(config.gen_out);
  for (const GenerationRecord &r : records) writer.write(r.to_json());
  writer.close();
  manifest.output(config.gen_out, writer.count());
  manifest.counts()["generated"] = writer.count();
  return config.gen_out;
}

fs::path stage_emit(const PipelineConfig &config, Manifest &manifest) {
  CorpusPaths paths = corpus_paths(config);
  require_input(config.gen_out, "--gen-out");
  require_output(config.out, "--out");
  require_distinct({paths.documents, paths.summaries, config.gen_out, config.out});
  Corpus corpus = load_corpus(paths, config.jobs);
  record_corpus_inputs(manifest, paths);
  manifest.input(config.gen_out);

  std::set<std::string> known;
  for (const DocSummaryUnit &u : corpus.units) known.insert(u.doc_id);
  GenerationOutput generations = read_generation_output(config.gen_out, known);
  NliDataset dataset = emit_nli(corpus.units, generations.accepted);
  std::size_t n = write_nli(dataset, config.out);

  fs::path rejected = with_suffix(config.out, ".rejected.jsonl");
  JsonlWriter writer(rejected);
  for (const Rejection &r : generations.rejected) {
    writer.write(Json{{"line", r.line},
                      {"doc_id", r.doc_id},
                      {"summary_index", r.summary_index},
                      {"reason", r.reason}});
  }
  writer.close();

  LabelHistogram h = label_histogram(dataset);
  manifest.output(config.out, n);
  manifest.output(rejected, writer.count());
  manifest.counts()["entailment"] = h.entailment;
  manifest.counts()["non_entailment"] = h.non_entailment;
  manifest.counts()["accepted_generations"] = generations.accepted.size();
  manifest.counts()["rejected_generations"] = generations.rejected.size();
  return config.out;
}

fs::path stage_dataset_transform(std::string_view stage,
                                 const PipelineConfig &config,
                                 Manifest &manifest) {
  require_input(config.in, "--in");
  require_output(config.out, "--out");
  require_distinct({config.in, config.out, config.base});
  NliDataset input = read_nli(config.in);
  manifest.input(config.in);

  NliDataset output;
  if (stage == "ablate") {
    Ablation variant = parse_ablation(config.variant);
    Rng rng = derive_rng(config.seed, "", kWholeDocument, "ablate");
    output = ablate(input, variant, rng);
    manifest["variant"] = config.variant;
  } else if (stage == "sample") {
    if (!config.sample_size) throw UsageError("missing required value --n");
    Rng rng = derive_rng(config.seed, "", kWholeDocument, "sample");
    output = sample(input, *config.sample_size, rng);
  } else if (stage == "probe") {
    output = emit_hypothesis_only(input);
  } else {
    require_input(config.base, "--base");
    manifest.input(config.base);
    Rng rng = derive_rng(config.seed, "", kWholeDocument, "merge");
    output = merge_for_augmentation(config.base, input, rng);
  }
  std::size_t n = write_nli(output, config.out);
  LabelHistogram h = label_histogram(output);
  manifest.output(config.out, n);
  manifest.counts()["input"] = input.size();
  manifest.counts()["output"] = n;
  manifest.counts()["entailment"] = h.entailment;
  manifest.counts()["non_entailment"] = h.non_entailment;
  return config.out;
}

fs::path stage_eval(const PipelineConfig &config, Manifest &manifest) {
  require_output(config.report, "--report");
  if (config.predictions.empty() && config.ranking.empty()) {
    throw UsageError("eval needs --pred and/or --ranking files");
  }
  Json report = Json::object();
  report["threshold"] = config.threshold;
  std::ostringstream table;

  if (!config.predictions.empty()) {
    require_input(config.gold, "--gold");
    std::vector<LabeledPair> gold = read_benchmark_gold(config.gold);
    manifest.input(config.gold);
    Json runs = Json::array();
    std::vector<std::map<std::string, double>> per_run;
    table << "run\tbalanced_accuracy\n";
    for (const fs::path &p : config.predictions) {
      require_input(p, "--pred");
      manifest.input(p);
      double ba = balanced_accuracy(join_predictions(gold, read_predictions(p)),
                                    config.threshold);
      runs.push_back(Json{{"predictions", p.filename().string()},
                          {"balanced_accuracy", ba}});
      per_run.push_back({{"balanced_accuracy", ba}});
      table << p.filename().string() << '\t' << fixed(100 * ba) << '\n';
    }
    SeedSummary s = mean_over_seeds(per_run).at("balanced_accuracy");
    report["classification"] = Json{
        {"examples", gold.size()},
        {"runs", runs},
        {"balanced_accuracy", Json{{"mean", s.mean}, {"min", s.min}, {"max", s.max}}}};
    table << "mean\t" << fixed(100 * s.mean) << "\tmin " << fixed(100 * s.min)
          << "\tmax " << fixed(100 * s.max) << '\n';
  }
  if (!config.ranking.empty()) {
    Json runs = Json::array();
    std::vector<std::map<std::string, double>> per_run;
    table << "ranking run\tprecision@1\n";
    for (const fs::path &p : config.ranking) {
      require_input(p, "--ranking");
      manifest.input(p);
      double p1 = precision_at_1(read_ranking(p));
      runs.push_back(Json{{"ranking", p.filename().string()}, {"precision_at_1", p1}});
      per_run.push_back({{"precision_at_1", p1}});
      table << p.filename().string() << '\t' << fixed(100 * p1) << '\n';
    }
    SeedSummary s = mean_over_seeds(per_run).at("precision_at_1");
    report["ranking"] = Json{
        {"runs", runs},
        {"precision_at_1", Json{{"mean", s.mean}, {"min", s.min}, {"max", s.max}}}};
    table << "mean\t" << fixed(100 * s.mean) << '\n';
  }

  write_text(config.report, report.dump(2) + "\n");
  fs::path text = with_suffix(config.report, ".txt");
  write_text(text, table.str());
  manifest.output(config.report, 1);
  manifest.output(text, 1);
  return config.report;
}

fs::path stage_partition(const PipelineConfig &config, Manifest &manifest) {
  require_input(config.gold, "--gold");
  require_output(config.out_dir, "--out-dir");
  std::vector<LabeledPair> gold = read_benchmark_gold(config.gold);
  manifest.input(config.gold);
  std::map<std::string, std::map<std::string, double>> predictions;
  for (const fs::path &p : config.predictions) {
    require_input(p, "--pred");
    manifest.input(p);
    predictions[p.filename().string()] = read_predictions(p);
  }
  OverlapPartition partition =
      partition_by_overlap(gold, config.bins, predictions, config.threshold);

  fs::create_directories(config.out_dir);
  Json bins = Json::array();
  for (std::size_t b = 0; b < partition.bins.size(); ++b) {
    const OverlapBin &bin = partition.bins[b];
    fs::path path = config.out_dir / ("bin_" + std::to_string(b) + ".jsonl");
    JsonlWriter writer(path);
    for (std::size_t m : bin.members) {
      const LabeledPair &r = gold[m];
      writer.write(Json{{"example_id", r.example_id},
                        {"gold", r.consistent ? "consistent" : "inconsistent"},
                        {"premise", r.premise},
                        {"hypothesis", r.hypothesis},
                        {"overlap", partition.overlaps[m]}});
    }
    writer.close();
    manifest.output(path, writer.count());
    Json accuracy = Json::object();
    for (const auto &[name, value] : bin.balanced_accuracy) {
      accuracy[name] = value ? Json(*value) : Json(nullptr);
    }
    bins.push_back(Json{{"bin", b},
                        {"size", bin.members.size()},
                        {"median_overlap", bin.median_overlap},
                        {"min_overlap", bin.min_overlap},
                        {"max_overlap", bin.max_overlap},
                        {"balanced_accuracy", accuracy}});
  }
  fs::path report_path =
      config.report.empty() ? config.out_dir / "report.json" : config.report;
  write_text(report_path, Json{{"bins", bins}}.dump(2) + "\n");
  manifest.output(report_path, partition.bins.size());
  manifest.counts()["records"] = gold.size();
  manifest.counts()["bins"] = partition.bins.size();
  return report_path;
}

}  // namespace

bool is_stage(std::string_view name) {
  return std::find(std::begin(kStageNames), std::end(kStageNames), name) !=
         std::end(kStageNames);
}

StageResult run_stage(std::string_view name, const PipelineConfig &config) {
  if (!is_stage(name)) {
    throw UsageError("unknown stage \"" + std::string(name) + "\"");
  }
  if (config.jobs == 0) throw UsageError("--jobs must be positive");
  Manifest manifest(name, config);
  fs::path primary;
  if (name == "ingest") {
    primary = stage_ingest(config, manifest);
  } else if (name == "extract") {
    primary = stage_extract(config, manifest);
  } else if (name == "format") {
    primary = stage_format(config, manifest);
  } else if (name == "mock-generate") {
    primary = stage_mock_generate(config, manifest);
  } else if (name == "emit") {
    primary = stage_emit(config, manifest);
  } else if (name == "eval") {
    primary = stage_eval(config, manifest);
  } else if (name == "partition") {
    primary = stage_partition(config, manifest);
  } else {
    primary = stage_dataset_transform(name, config, manifest);
  }
  StageResult result;
  result.manifest = manifest.json();
  result.manifest_path = with_suffix(primary, ".manifest.json");
  write_text(result.manifest_path, result.manifest.dump(2) + "\n");
  return result;
}

int exit_status_for(const std::exception &error) {
  if (dynamic_cast<const UsageError *>(&error)) return 2;
  if (dynamic_cast<const ParseError *>(&error) ||
      dynamic_cast<const StructuralError *>(&error)) {
    return 3;
  }
  if (dynamic_cast<const ContractError *>(&error)) return 4;
  return 1;
}

Json error_record(const std::exception &error) {
  std::string kind = "error";
  if (dynamic_cast<const UsageError *>(&error)) {
    kind = "usage";
  } else if (dynamic_cast<const ParseError *>(&error)) {
    kind = "parse";
  } else if (dynamic_cast<const StructuralError *>(&error)) {
    kind = "structure";
  } else if (dynamic_cast<const ContractError *>(&error)) {
    kind = "contract";
  } else if (dynamic_cast<const InternalError *>(&error)) {
    kind = "internal";
  }
  return Json{{"error", kind}, {"message", error.what()}};
}

}  // namespace falsesum
