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

// falsesum: command-line driver for the data-generation and evaluation
// stages. Every subcommand writes its outputs plus a manifest next to the
// primary output; errors are printed to stderr as one JSON object.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "falsesum/errors.h"
#include "falsesum/perturb.h"
#include "falsesum/pipeline.h"

namespace {

using falsesum::PipelineConfig;

struct CommonFlags {
  std::string force_code;
  std::size_t sample_size = 0;
};

void add_common(CLI::App *cmd, PipelineConfig &config) {
  cmd->add_option("--seed", config.seed, "Random seed")
      ->envname("FALSESUM_SEED")
      ->capture_default_str();
  cmd->add_option("--jobs", config.jobs, "Worker threads")
      ->envname("FALSESUM_JOBS")
      ->capture_default_str();
}

void add_corpus(CLI::App *cmd, PipelineConfig &config) {
  cmd->add_option("--corpus", config.corpus,
                  "Directory with documents.jsonl and summaries.jsonl")
      ->envname("FALSESUM_CORPUS")
      ->required();
  cmd->add_option("--parses", config.parses,
                  "Directory of <doc_id>.conllu parse files")
      ->envname("FALSESUM_PARSES")
      ->required();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Falsesum NLI data generation pipeline"};
  app.require_subcommand(1);

  PipelineConfig config;
  CommonFlags flags;

  auto *ingest = app.add_subcommand("ingest", "Pair documents with summary sentences");
  add_common(ingest, config);
  add_corpus(ingest, config);
  ingest->add_option("--units-out", config.units_out, "Work-unit listing")->required();

  auto *extract = app.add_subcommand("extract", "Dump selected document tuples");
  add_common(extract, config);
  add_corpus(extract, config);
  extract->add_option("--tuples-out", config.tuples_out, "Tuple dump")->required();

  auto *format = app.add_subcommand("format", "Build seq2seq inputs and targets");
  add_common(format, config);
  add_corpus(format, config);
  format->add_option("--train-out", config.train_out)->required();
  format->add_option("--test-out", config.test_out)->required();
  format->add_option("--gen-in", config.gen_in,
                     "Also write the test split as a generation batch");
  format->add_option("--split", config.train_fraction, "Train fraction")
      ->envname("FALSESUM_SPLIT")
      ->capture_default_str();
  format->add_option("--force-code", flags.force_code, "intrinsic or extrinsic")
      ->envname("FALSESUM_FORCE_CODE")
      ->check(CLI::IsMember({"intrinsic", "extrinsic"}));

  auto *mock = app.add_subcommand("mock-generate",
                                  "Fill generation batch masks with listed spans");
  add_common(mock, config);
  mock->add_option("--gen-in", config.gen_in)->required();
  mock->add_option("--gen-out", config.gen_out)->required();

  auto *emit = app.add_subcommand("emit", "Assemble the NLI dataset");
  add_common(emit, config);
  add_corpus(emit, config);
  emit->add_option("--gen-out", config.gen_out, "Generator output")->required();
  emit->add_option("--out", config.out)->required();

  auto *ablate = app.add_subcommand("ablate", "Build an ablation variant");
  add_common(ablate, config);
  ablate->add_option("--in", config.in)->required();
  ablate->add_option("--out", config.out)->required();
  ablate->add_option("--variant", config.variant,
                     "-contrastive, -intrinsic or -extrinsic")
      ->required();

  auto *sample = app.add_subcommand("sample", "Uniform sample without replacement");
  add_common(sample, config);
  sample->add_option("--in", config.in)->required();
  sample->add_option("--out", config.out)->required();
  sample->add_option("--n", flags.sample_size)->required();

  auto *probe = app.add_subcommand("probe", "Hypothesis-only copy of a dataset");
  add_common(probe, config);
  probe->add_option("--in", config.in)->required();
  probe->add_option("--out", config.out)->required();

  auto *merge = app.add_subcommand("merge", "Merge with a binarized NLI corpus");
  add_common(merge, config);
  merge->add_option("--base", config.base, "Three-way NLI JSON Lines")->required();
  merge->add_option("--in", config.in, "Falsesum NLI JSON Lines")->required();
  merge->add_option("--out", config.out)->required();

  auto *eval = app.add_subcommand("eval", "Balanced accuracy and precision@1");
  add_common(eval, config);
  eval->add_option("--gold", config.gold, "Benchmark gold labels");
  eval->add_option("--pred", config.predictions, "Prediction files, one per seed");
  eval->add_option("--ranking", config.ranking, "Ranking files, one per seed");
  eval->add_option("--threshold", config.threshold)->capture_default_str();
  eval->add_option("--report", config.report, "Report JSON path")->required();

  auto *partition = app.add_subcommand("partition", "Overlap-ordered subsets");
  add_common(partition, config);
  partition->add_option("--gold", config.gold)->required();
  partition->add_option("--pred", config.predictions);
  partition->add_option("--k", config.bins)->capture_default_str();
  partition->add_option("--threshold", config.threshold)->capture_default_str();
  partition->add_option("--out-dir", config.out_dir)->required();
  partition->add_option("--report", config.report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  CLI::App *chosen = app.get_subcommands().front();
  try {
    if (!flags.force_code.empty()) {
      config.force_code = falsesum::parse_control_code(flags.force_code);
    }
    if (chosen == sample) config.sample_size = flags.sample_size;
    falsesum::StageResult result = falsesum::run_stage(chosen->get_name(), config);
    std::cout << result.manifest.dump(2) << std::endl;
    return result.exit_status;
  } catch (const std::exception &e) {
    std::cerr << falsesum::error_record(e).dump() << std::endl;
    return falsesum::exit_status_for(e);
  }
}
