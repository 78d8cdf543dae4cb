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

#ifndef FALSESUM_DATASET_H_
#define FALSESUM_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "falsesum/corpus.h"
#include "falsesum/generation.h"
#include "falsesum/jsonl.h"
#include "falsesum/rng.h"

namespace falsesum {

enum class NliLabel { kEntailment, kNonEntailment };

// Where a hypothesis came from. kBase marks records merged in from a
// sentence-level NLI corpus.
enum class Provenance { kGold, kGeneratedIntrinsic, kGeneratedExtrinsic, kBase };

std::string_view to_string(NliLabel label);
std::string_view to_string(Provenance provenance);
NliLabel parse_nli_label(std::string_view text);
Provenance parse_provenance(std::string_view text);

// {"pair_id", "premise", "hypothesis", "label", "provenance"}. The positive
// and the negative built from one unit share pair_id.
struct NliExample {
  std::string pair_id;
  std::string premise;
  std::string hypothesis;
  NliLabel label = NliLabel::kEntailment;
  Provenance provenance = Provenance::kGold;

  Json to_json() const;
  bool operator==(const NliExample &) const = default;
};

using NliDataset = std::vector<NliExample>;

std::string make_pair_id(std::string_view doc_id, int summary_index);

// For every unit with a generation: (document, gold summary, entailment) then
// (document, generated summary, non-entailment). Units without a generation
// are dropped. Throws ContractError listing generation records that match no
// unit, or units generated twice.
NliDataset emit_nli(const std::vector<DocSummaryUnit> &units,
                    const std::vector<GenerationRecord> &generations);

enum class Ablation { kNoContrastive, kNoIntrinsic, kNoExtrinsic };

// Accepts "-contrastive", "-intrinsic", "-extrinsic" (leading dash optional).
Ablation parse_ablation(std::string_view text);

// kNoContrastive keeps one uniformly chosen record per pair_id. The other two
// drop negatives generated with the named control code. Order is preserved.
NliDataset ablate(const NliDataset &dataset, Ablation variant, Rng &rng);

// Uniform sample of n records without replacement, in original order. Throws
// ContractError when n exceeds the dataset size.
NliDataset sample(const NliDataset &dataset, std::size_t n, Rng &rng);

// Same records with empty premises.
NliDataset emit_hypothesis_only(const NliDataset &dataset);

// Maps a three-way NLI label to the binary one. Throws UsageError for other
// strings.
NliLabel binarize_label(std::string_view three_way);

// Reads a sentence-level NLI file ({"premise", "hypothesis", "label"} with
// optional "pair_id"), binarizes its labels, appends the Falsesum records and
// shuffles. Throws ParseError naming the line of an unknown label.
NliDataset merge_for_augmentation(const std::filesystem::path &base,
                                  const NliDataset &falsesum, Rng &rng);

NliDataset read_nli(const std::filesystem::path &path);
std::size_t write_nli(const NliDataset &dataset, const std::filesystem::path &path);

struct LabelHistogram {
  std::size_t entailment = 0;
  std::size_t non_entailment = 0;
};
LabelHistogram label_histogram(const NliDataset &dataset);

}  // namespace falsesum

#endif  // FALSESUM_DATASET_H_
