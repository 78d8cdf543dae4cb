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

#ifndef FALSESUM_METRICS_H_
#define FALSESUM_METRICS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace falsesum {

inline constexpr double kDefaultThreshold = 0.5;

// A classifier score against a gold consistency label. The score is the
// probability of "consistent" (entailment).
struct EvalRecord {
  std::string example_id;
  bool consistent = true;
  double score = 0.0;

  bool predicted(double threshold = kDefaultThreshold) const {
    return score >= threshold;
  }
};

// Mean of the two per-class recalls. Throws ContractError when either class
// is absent from the gold labels or a score lies outside [0, 1].
double balanced_accuracy(const std::vector<EvalRecord> &records,
                         double threshold = kDefaultThreshold);

struct RankCandidate {
  std::string summary_id;
  bool consistent = false;
  double score = 0.0;
};

struct RankInstance {
  std::string instance_id;
  std::vector<RankCandidate> candidates;
};

// Fraction of instances whose top-scored candidate is consistent. Equal
// scores go to the lexicographically smallest summary_id. Throws
// ContractError for instances with fewer than two candidates or no
// consistent candidate.
double precision_at_1(const std::vector<RankInstance> &instances);

// Scores of every summary sentence (rows) against every document sentence
// (columns).
struct ScoreMatrix {
  std::vector<std::vector<double>> rows;

  std::size_t summary_sentences() const { return rows.size(); }
  std::size_t document_sentences() const {
    return rows.empty() ? 0 : rows.front().size();
  }
  // Throws ContractError on empty or ragged rows or entries outside [0, 1].
  void validate() const;
};

// Mean over summary sentences of the best document-sentence score.
double aggregate_consistency(const ScoreMatrix &matrix);

// Lowercases and splits on whitespace.
std::vector<std::string> overlap_tokens(std::string_view text);

struct Fragment {
  std::size_t summary_start = 0;
  std::size_t document_start = 0;
  std::size_t length = 0;

  bool operator==(const Fragment &) const = default;
};

// Greedy left-to-right scan of the summary: at each position take the
// longest run shared with any document position (leftmost on ties), emit it
// and continue after it; unmatched tokens advance by one.
std::vector<Fragment> extractive_fragments(
    const std::vector<std::string> &document,
    const std::vector<std::string> &summary);

struct OverlapScore {
  double density = 0.0;              // share of summary tokens in fragments
  double normalized_coverage = 0.0;  // sum of squared fragment lengths / |S|^2
  double overlap = 0.0;              // density * normalized_coverage
};

// density = 1 means every summary word is copied from the document;
// normalized_coverage = 1 means the summary is one contiguous copied slice.
// Throws ContractError for an empty summary.
OverlapScore overlap_score(std::string_view document, std::string_view summary);

struct LabeledPair {
  std::string example_id;
  bool consistent = true;
  std::string premise;
  std::string hypothesis;
};

struct OverlapBin {
  std::vector<std::size_t> members;  // indices into the input records
  double median_overlap = 0.0;
  double min_overlap = 0.0;
  double max_overlap = 0.0;
  // Balanced accuracy per prediction set; nullopt when the bin lacks a class.
  std::map<std::string, std::optional<double>> balanced_accuracy;
};

struct OverlapPartition {
  std::vector<double> overlaps;  // per input record
  std::vector<OverlapBin> bins;  // ascending overlap
};

// Sorts records by overlap (stable, so ties keep record order) and cuts them
// into k bins of equal size, the first n % k bins taking one extra record.
// `predictions` maps a prediction-set name to scores by example_id. Throws
// ContractError when there are fewer than k records or a prediction is
// missing.
OverlapPartition partition_by_overlap(
    const std::vector<LabeledPair> &records, std::size_t k,
    const std::map<std::string, std::map<std::string, double>> &predictions = {},
    double threshold = kDefaultThreshold);

struct SeedSummary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Per-key mean, min and max over runs. The sum is taken over sorted values so
// the result does not depend on report order. Throws ContractError when the
// reports do not share the same keys.
std::map<std::string, SeedSummary> mean_over_seeds(
    const std::vector<std::map<std::string, double>> &reports);

// File formats.
std::vector<LabeledPair> read_benchmark_gold(const std::filesystem::path &path);
// Accepts {"example_id", "score"} or {"example_id", "scores": [[...]]}; the
// latter is reduced with aggregate_consistency.
std::map<std::string, double> read_predictions(const std::filesystem::path &path);
std::vector<RankInstance> read_ranking(const std::filesystem::path &path);

// Joins gold labels with predictions. Throws ContractError for gold examples
// without a prediction.
std::vector<EvalRecord> join_predictions(
    const std::vector<LabeledPair> &gold,
    const std::map<std::string, double> &predictions);

}  // namespace falsesum

#endif  // FALSESUM_METRICS_H_
