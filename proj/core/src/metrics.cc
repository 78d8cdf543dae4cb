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

#include "falsesum/metrics.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "falsesum/errors.h"
#include "falsesum/jsonl.h"

namespace falsesum {
namespace {

void check_probability(double v, std::string_view what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ContractError(std::string(what) + " " + std::to_string(v) +
                        " is outside [0, 1]");
  }
}

bool parse_consistency(const Json &value, std::size_t line) {
  if (value.is_boolean()) return value.get<bool>();
  if (value.is_string()) {
    std::string s = value.get<std::string>();
    if (s == "consistent" || s == "entailment") return true;
    if (s == "inconsistent" || s == "non-entailment") return false;
  }
  throw ParseError("gold label must be \"consistent\" or \"inconsistent\"", line);
}

double median_of_sorted(const std::vector<double> &v) {
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

double balanced_accuracy(const std::vector<EvalRecord> &records,
                         double threshold) {
  std::size_t consistent = 0, inconsistent = 0;
  std::size_t consistent_hits = 0, inconsistent_hits = 0;
  for (const EvalRecord &r : records) {
    check_probability(r.score, "score of " + r.example_id);
    if (r.consistent) {
      ++consistent;
      consistent_hits += r.predicted(threshold) ? 1 : 0;
    } else {
      ++inconsistent;
      inconsistent_hits += r.predicted(threshold) ? 0 : 1;
    }
  }
  if (consistent == 0 || inconsistent == 0) {
    throw ContractError(
        "balanced accuracy is undefined when gold labels have a single class");
  }
  return (static_cast<double>(consistent_hits) / consistent +
          static_cast<double>(inconsistent_hits) / inconsistent) /
         2.0;
}

double precision_at_1(const std::vector<RankInstance> &instances) {
  if (instances.empty()) {
    throw ContractError("precision@1 needs at least one instance");
  }
  std::size_t hits = 0;
  for (const RankInstance &instance : instances) {
    const auto &c = instance.candidates;
    if (c.size() < 2) {
      throw ContractError("instance " + instance.instance_id +
                          " has fewer than two candidates");
    }
    if (std::none_of(c.begin(), c.end(),
                     [](const RankCandidate &x) { return x.consistent; })) {
      throw ContractError("instance " + instance.instance_id +
                          " has no consistent candidate");
    }
    const RankCandidate *top = &c.front();
    for (const RankCandidate &x : c) {
      check_probability(x.score, "score of " + x.summary_id);
      if (x.score > top->score ||
          (x.score == top->score && x.summary_id < top->summary_id)) {
        top = &x;
      }
    }
    hits += top->consistent ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(instances.size());
}

void ScoreMatrix::validate() const {
  if (rows.empty() || rows.front().empty()) {
    throw ContractError("score matrix must have positive dimensions");
  }
  for (const auto &row : rows) {
    if (row.size() != rows.front().size()) {
      throw ContractError("score matrix rows differ in length");
    }
    for (double v : row) check_probability(v, "matrix entry");
  }
}

double aggregate_consistency(const ScoreMatrix &matrix) {
  matrix.validate();
  double total = 0.0;
  for (const auto &row : matrix.rows) {
    total += *std::max_element(row.begin(), row.end());
  }
  return total / static_cast<double>(matrix.rows.size());
}

std::vector<std::string> overlap_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<Fragment> extractive_fragments(
    const std::vector<std::string> &document,
    const std::vector<std::string> &summary) {
  const std::size_t s = summary.size(), d = document.size();
  // common[i * (d + 1) + j]: length of the shared run starting at summary i
  // and document j.
  std::vector<std::size_t> common((s + 1) * (d + 1), 0);
  for (std::size_t i = s; i-- > 0;) {
    for (std::size_t j = d; j-- > 0;) {
      if (summary[i] == document[j]) {
        common[i * (d + 1) + j] = 1 + common[(i + 1) * (d + 1) + j + 1];
      }
    }
  }
  std::vector<Fragment> fragments;
  std::size_t i = 0;
  while (i < s) {
    Fragment best{i, 0, 0};
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t len = common[i * (d + 1) + j];
      if (len > best.length) best = {i, j, len};
    }
    if (best.length == 0) {
      ++i;
      continue;
    }
    fragments.push_back(best);
    i += best.length;
  }
  return fragments;
}

OverlapScore overlap_score(std::string_view document, std::string_view summary) {
  std::vector<std::string> summary_tokens = overlap_tokens(summary);
  if (summary_tokens.empty()) {
    throw ContractError("overlap is undefined for an empty summary");
  }
  std::vector<Fragment> fragments =
      extractive_fragments(overlap_tokens(document), summary_tokens);
  std::size_t covered = 0, squared = 0;
  for (const Fragment &f : fragments) {
    covered += f.length;
    squared += f.length * f.length;
  }
  const double n = static_cast<double>(summary_tokens.size());
  OverlapScore score;
  score.density = static_cast<double>(covered) / n;
  score.normalized_coverage = static_cast<double>(squared) / (n * n);
  score.overlap = score.density * score.normalized_coverage;
  return score;
}

OverlapPartition partition_by_overlap(
    const std::vector<LabeledPair> &records, std::size_t k,
    const std::map<std::string, std::map<std::string, double>> &predictions,
    double threshold) {
  if (k == 0 || records.size() < k) {
    throw ContractError("cannot split " + std::to_string(records.size()) +
                        " records into " + std::to_string(k) + " bins");
  }
  OverlapPartition partition;
  partition.overlaps.reserve(records.size());
  for (const LabeledPair &r : records) {
    partition.overlaps.push_back(overlap_score(r.premise, r.hypothesis).overlap);
  }
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return partition.overlaps[a] < partition.overlaps[b];
  });

  const std::size_t base = records.size() / k, extra = records.size() % k;
  std::size_t next = 0;
  for (std::size_t b = 0; b < k; ++b) {
    OverlapBin bin;
    const std::size_t size = base + (b < extra ? 1 : 0);
    bin.members.assign(order.begin() + static_cast<std::ptrdiff_t>(next),
                       order.begin() + static_cast<std::ptrdiff_t>(next + size));
    next += size;

    std::vector<double> values;
    for (std::size_t m : bin.members) values.push_back(partition.overlaps[m]);
    std::sort(values.begin(), values.end());
    bin.median_overlap = median_of_sorted(values);
    bin.min_overlap = values.front();
    bin.max_overlap = values.back();

    for (const auto &[name, scores] : predictions) {
      std::vector<LabeledPair> members;
      for (std::size_t m : bin.members) members.push_back(records[m]);
      std::vector<EvalRecord> joined = join_predictions(members, scores);
      bool has_both =
          std::any_of(joined.begin(), joined.end(),
                      [](const EvalRecord &r) { return r.consistent; }) &&
          std::any_of(joined.begin(), joined.end(),
                      [](const EvalRecord &r) { return !r.consistent; });
      bin.balanced_accuracy[name] =
          has_both ? std::optional<double>(balanced_accuracy(joined, threshold))
                   : std::nullopt;
    }
    partition.bins.push_back(std::move(bin));
  }
  return partition;
}

std::map<std::string, SeedSummary> mean_over_seeds(
    const std::vector<std::map<std::string, double>> &reports) {
  if (reports.empty()) throw ContractError("no reports to average");
  std::map<std::string, SeedSummary> summary;
  for (const auto &report : reports) {
    if (report.size() != reports.front().size() ||
        !std::equal(report.begin(), report.end(), reports.front().begin(),
                    [](const auto &a, const auto &b) { return a.first == b.first; })) {
      throw ContractError("reports do not share the same metric keys");
    }
  }
  for (const auto &[key, unused] : reports.front()) {
    std::vector<double> values;
    for (const auto &report : reports) values.push_back(report.at(key));
    std::sort(values.begin(), values.end());
    double total = 0.0;
    for (double v : values) total += v;
    summary[key] = {total / static_cast<double>(values.size()), values.front(),
                    values.back()};
  }
  return summary;
}

std::vector<LabeledPair> read_benchmark_gold(const std::filesystem::path &path) {
  std::vector<LabeledPair> records;
  std::set<std::string> seen;
  read_jsonl(path, [&](const Json &record, std::size_t line) {
    LabeledPair r;
    r.example_id = require_string(record, "example_id", line);
    r.consistent = parse_consistency(require_field(record, "gold", line), line);
    r.premise = require_string(record, "premise", line);
    r.hypothesis = require_string(record, "hypothesis", line);
    if (!seen.insert(r.example_id).second) {
      throw ParseError("duplicate example_id \"" + r.example_id + "\"", line);
    }
    records.push_back(std::move(r));
  });
  return records;
}

std::map<std::string, double> read_predictions(const std::filesystem::path &path) {
  std::map<std::string, double> scores;
  read_jsonl(path, [&](const Json &record, std::size_t line) {
    std::string id = require_string(record, "example_id", line);
    double score;
    if (auto it = record.find("scores"); it != record.end()) {
      ScoreMatrix matrix;
      try {
        matrix.rows = it->get<std::vector<std::vector<double>>>();
        score = aggregate_consistency(matrix);
      } catch (const nlohmann::json::exception &) {
        throw ParseError("\"scores\" must be a matrix of numbers", line);
      } catch (const ContractError &e) {
        throw ParseError(e.what(), line);
      }
    } else {
      const Json &v = require_field(record, "score", line);
      if (!v.is_number()) throw ParseError("\"score\" must be a number", line);
      score = v.get<double>();
    }
    if (!(score >= 0.0 && score <= 1.0)) {
      throw ParseError("score outside [0, 1]", line);
    }
    if (!scores.emplace(id, score).second) {
      throw ParseError("duplicate example_id \"" + id + "\"", line);
    }
  });
  return scores;
}

std::vector<RankInstance> read_ranking(const std::filesystem::path &path) {
  std::vector<RankInstance> instances;
  read_jsonl(path, [&](const Json &record, std::size_t line) {
    RankInstance instance;
    instance.instance_id = require_string(record, "instance_id", line);
    const Json &candidates = require_field(record, "candidates", line);
    if (!candidates.is_array()) {
      throw ParseError("\"candidates\" must be an array", line);
    }
    for (const Json &c : candidates) {
      RankCandidate candidate;
      candidate.summary_id = require_string(c, "summary_id", line);
      const Json &consistent = require_field(c, "consistent", line);
      if (!consistent.is_boolean()) {
        throw ParseError("\"consistent\" must be a boolean", line);
      }
      candidate.consistent = consistent.get<bool>();
      const Json &score = require_field(c, "score", line);
      if (!score.is_number()) throw ParseError("\"score\" must be a number", line);
      candidate.score = score.get<double>();
      instance.candidates.push_back(std::move(candidate));
    }
    instances.push_back(std::move(instance));
  });
  return instances;
}

std::vector<EvalRecord> join_predictions(
    const std::vector<LabeledPair> &gold,
    const std::map<std::string, double> &predictions) {
  std::vector<EvalRecord> records;
  records.reserve(gold.size());
  for (const LabeledPair &g : gold) {
    auto it = predictions.find(g.example_id);
    if (it == predictions.end()) {
      throw ContractError("no prediction for example " + g.example_id);
    }
    records.push_back({g.example_id, g.consistent, it->second});
  }
  return records;
}

}  // namespace falsesum
