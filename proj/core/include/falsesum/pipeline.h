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

#ifndef FALSESUM_PIPELINE_H_
#define FALSESUM_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "falsesum/jsonl.h"
#include "falsesum/perturb.h"

namespace falsesum {

inline constexpr std::string_view kStageNames[] = {
    "ingest", "extract", "format", "mock-generate", "emit", "ablate",
    "sample", "probe",   "merge",  "eval",          "partition"};

bool is_stage(std::string_view name);

// Settings shared by all stages; each stage reads only the paths it needs.
struct PipelineConfig {
  std::uint64_t seed = 11;
  std::size_t jobs = 1;
  double train_fraction = 0.6;
  std::optional<ControlCode> force_code;

  // Corpus: documents.jsonl + summaries.jsonl under `corpus`, parse files
  // under `parses`.
  std::filesystem::path corpus;
  std::filesystem::path parses;

  std::filesystem::path units_out;   // ingest
  std::filesystem::path tuples_out;  // extract
  std::filesystem::path train_out;   // format
  std::filesystem::path test_out;    // format
  std::filesystem::path gen_in;      // format writes, mock-generate reads
  std::filesystem::path gen_out;     // mock-generate writes, emit reads

  std::filesystem::path in;   // ablate, sample, probe, merge (Falsesum side)
  std::filesystem::path out;  // emit, ablate, sample, probe, merge
  std::filesystem::path base;  // merge

  std::string variant;                    // ablate
  std::optional<std::size_t> sample_size;  // sample

  std::filesystem::path gold;                      // eval, partition
  std::vector<std::filesystem::path> predictions;  // eval, partition
  std::vector<std::filesystem::path> ranking;      // eval
  std::filesystem::path report;                    // eval, partition
  std::filesystem::path out_dir;                   // partition
  std::size_t bins = 5;
  double threshold = 0.5;
};

struct StageResult {
  int exit_status = 0;
  Json manifest;
  std::filesystem::path manifest_path;
};

// Runs one stage and writes its manifest (input/output digests, seed,
// counts, skips) as <primary output>.manifest.json. Throws UsageError for
// unknown stages or missing paths; other errors propagate from the stage.
StageResult run_stage(std::string_view name, const PipelineConfig &config);

// Exit status for an exception escaping run_stage.
int exit_status_for(const std::exception &error);
// {"error": <kind>, "message": <what()>}
Json error_record(const std::exception &error);

}  // namespace falsesum

#endif  // FALSESUM_PIPELINE_H_
