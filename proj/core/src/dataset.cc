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

#include "falsesum/dataset.h"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "falsesum/errors.h"

namespace falsesum {

std::string_view to_string(NliLabel label) {
  return label == NliLabel::kEntailment ? "entailment" : "non-entailment";
}

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::kGold:
      return "gold";
    case Provenance::kGeneratedIntrinsic:
      return "generated-intrinsic";
    case Provenance::kGeneratedExtrinsic:
      return "generated-extrinsic";
    case Provenance::kBase:
      return "base";
  }
  return "";
}

NliLabel parse_nli_label(std::string_view text) {
  if (text == "entailment") return NliLabel::kEntailment;
  if (text == "non-entailment") return NliLabel::kNonEntailment;
  throw UsageError("unknown NLI label \"" + std::string(text) + "\"");
}

Provenance parse_provenance(std::string_view text) {
  if (text == "gold") return Provenance::kGold;
  if (text == "generated-intrinsic") return Provenance::kGeneratedIntrinsic;
  if (text == "generated-extrinsic") return Provenance::kGeneratedExtrinsic;
  if (text == "base") return Provenance::kBase;
  throw UsageError("unknown provenance \"" + std::string(text) + "\"");
}

Json NliExample::to_json() const {
  return Json{{"pair_id", pair_id},
              {"premise", premise},
              {"hypothesis", hypothesis},
              {"label", to_string(label)},
              {"provenance", to_string(provenance)}};
}

std::string make_pair_id(std::string_view doc_id, int summary_index) {
  return std::string(doc_id) + "#" + std::to_string(summary_index);
}

NliDataset emit_nli(const std::vector<DocSummaryUnit> &units,
                    const std::vector<GenerationRecord> &generations) {
  std::map<UnitKey, const GenerationRecord *> by_unit;
  std::vector<std::string> duplicates;
  for (const GenerationRecord &g : generations) {
    if (!by_unit.emplace(UnitKey{g.doc_id, g.summary_index}, &g).second) {
      duplicates.push_back(make_pair_id(g.doc_id, g.summary_index));
    }
  }
  if (!duplicates.empty()) {
    std::string ids;
    for (const auto &d : duplicates) ids += " " + d;
    throw ContractError("duplicate generation records:" + ids);
  }

  NliDataset dataset;
  std::size_t matched = 0;
  for (const DocSummaryUnit &unit : units) {
    auto it = by_unit.find({unit.doc_id, unit.summary_index});
    if (it == by_unit.end()) continue;
    ++matched;
    const GenerationRecord &g = *it->second;
    std::string pair_id = make_pair_id(unit.doc_id, unit.summary_index);
    dataset.push_back({pair_id, unit.document->raw_text,
                       summary_string(unit.summary), NliLabel::kEntailment,
                       Provenance::kGold});
    dataset.push_back({pair_id, unit.document->raw_text, g.generated,
                       NliLabel::kNonEntailment,
                       g.code == ControlCode::kIntrinsic
                           ? Provenance::kGeneratedIntrinsic
                           : Provenance::kGeneratedExtrinsic});
    by_unit.erase(it);
  }
  if (!by_unit.empty()) {
    std::string ids;
    for (const auto &[key, record] : by_unit) {
      ids += " " + make_pair_id(key.first, key.second);
    }
    throw ContractError("generation records without a matching unit:" + ids);
  }
  return dataset;
}

Ablation parse_ablation(std::string_view text) {
  if (text.starts_with('-')) text.remove_prefix(1);
  if (text == "contrastive") return Ablation::kNoContrastive;
  if (text == "intrinsic") return Ablation::kNoIntrinsic;
  if (text == "extrinsic") return Ablation::kNoExtrinsic;
  throw UsageError("unknown ablation variant \"" + std::string(text) +
                   "\" (expected -contrastive, -intrinsic or -extrinsic)");
}

NliDataset ablate(const NliDataset &dataset, Ablation variant, Rng &rng) {
  NliDataset out;
  if (variant == Ablation::kNoContrastive) {
    // Group record positions by pair in order of first appearance.
    std::unordered_map<std::string, std::size_t> group_of;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      auto [it, inserted] = group_of.emplace(dataset[i].pair_id, groups.size());
      if (inserted) groups.emplace_back();
      groups[it->second].push_back(i);
    }
    std::vector<bool> keep(dataset.size(), false);
    for (const auto &members : groups) {
      keep[members[rng.uniform_index(members.size())]] = true;
    }
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (keep[i]) out.push_back(dataset[i]);
    }
    return out;
  }
  const Provenance dropped = variant == Ablation::kNoIntrinsic
                                 ? Provenance::kGeneratedIntrinsic
                                 : Provenance::kGeneratedExtrinsic;
  for (const NliExample &e : dataset) {
    if (e.provenance != dropped) out.push_back(e);
  }
  return out;
}

NliDataset sample(const NliDataset &dataset, std::size_t n, Rng &rng) {
  if (n > dataset.size()) {
    throw ContractError("sample size " + std::to_string(n) +
                        " exceeds dataset size " +
                        std::to_string(dataset.size()));
  }
  NliDataset out;
  out.reserve(n);
  for (std::size_t i : rng.sample_indices(dataset.size(), n)) {
    out.push_back(dataset[i]);
  }
  return out;
}

NliDataset emit_hypothesis_only(const NliDataset &dataset) {
  NliDataset out = dataset;
  for (NliExample &e : out) e.premise.clear();
  return out;
}

NliLabel binarize_label(std::string_view three_way) {
  if (three_way == "entailment") return NliLabel::kEntailment;
  if (three_way == "neutral" || three_way == "contradiction") {
    return NliLabel::kNonEntailment;
  }
  throw UsageError("unknown NLI label \"" + std::string(three_way) + "\"");
}

NliDataset merge_for_augmentation(const std::filesystem::path &base,
                                  const NliDataset &falsesum, Rng &rng) {
  NliDataset merged;
  read_jsonl(base, [&](const Json &record, std::size_t line) {
    NliExample e;
    std::string label = require_string(record, "label", line);
    try {
      e.label = binarize_label(label);
    } catch (const UsageError &error) {
      throw ParseError(base.string() + ": " + error.what(), line);
    }
    e.premise = require_string(record, "premise", line);
    e.hypothesis = require_string(record, "hypothesis", line);
    auto id = record.find("pair_id");
    e.pair_id = id != record.end() && id->is_string()
                    ? id->get<std::string>()
                    : "base#" + std::to_string(line);
    e.provenance = Provenance::kBase;
    merged.push_back(std::move(e));
  });
  merged.insert(merged.end(), falsesum.begin(), falsesum.end());
  rng.shuffle(merged);
  return merged;
}

NliDataset read_nli(const std::filesystem::path &path) {
  NliDataset dataset;
  read_jsonl(path, [&](const Json &record, std::size_t line) {
    NliExample e;
    e.pair_id = require_string(record, "pair_id", line);
    e.premise = require_string(record, "premise", line);
    e.hypothesis = require_string(record, "hypothesis", line);
    try {
      e.label = parse_nli_label(require_string(record, "label", line));
      e.provenance = parse_provenance(require_string(record, "provenance", line));
    } catch (const UsageError &error) {
      throw ParseError(error.what(), line);
    }
    dataset.push_back(std::move(e));
  });
  return dataset;
}

std::size_t write_nli(const NliDataset &dataset,
                      const std::filesystem::path &path) {
  JsonlWriter writer(path);
  for (const NliExample &e : dataset) writer.write(e.to_json());
  writer.close();
  return writer.count();
}

LabelHistogram label_histogram(const NliDataset &dataset) {
  LabelHistogram h;
  for (const NliExample &e : dataset) {
    (e.label == NliLabel::kEntailment ? h.entailment : h.non_entailment)++;
  }
  return h;
}

}  // namespace falsesum
