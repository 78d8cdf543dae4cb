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

#ifndef FALSESUM_GENERATION_H_
#define FALSESUM_GENERATION_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "falsesum/perturb.h"
#include "falsesum/rng.h"

namespace falsesum {

// One line of the generation batch handed to the generator:
// {"doc_id", "summary_index", "code", "input"}.
struct GenerationRequest {
  std::string doc_id;
  int summary_index = 0;
  ControlCode code = ControlCode::kIntrinsic;
  std::string input;

  Json to_json() const;
};

// One line of generator output:
// {"doc_id", "summary_index", "code", "generated"}.
struct GenerationRecord {
  std::string doc_id;
  int summary_index = 0;
  ControlCode code = ControlCode::kIntrinsic;
  std::string generated;

  Json to_json() const;
  bool operator==(const GenerationRecord &) const = default;
};

using UnitKey = std::pair<std::string, int>;

struct Rejection {
  std::size_t line = 0;
  std::string doc_id;
  int summary_index = 0;
  std::string reason;  // "empty", "residual_mask" or "unknown_doc_id"
};

struct GenerationOutput {
  std::vector<GenerationRecord> accepted;
  std::vector<Rejection> rejected;
};

GenerationRequest to_request(const FormattedExample &example);

// Writes test-mode examples as a generation batch and returns the count.
// Throws ContractError if any example is in train mode; nothing is written
// in that case.
std::size_t write_generation_batch(const std::vector<FormattedExample> &examples,
                                   const std::filesystem::path &path);

std::vector<GenerationRequest> read_generation_batch(
    const std::filesystem::path &path);

// Reads and validates generator output. Records with empty text, residual
// <span_i> placeholders, or (when `known` is given) a doc_id outside `known`
// are rejected and listed with their reason.
GenerationOutput read_generation_output(
    const std::filesystem::path &path,
    const std::optional<std::set<std::string>> &known = std::nullopt);

// Stand-in generator: fills <span_0> with a random predicate and each other
// placeholder with a distinct random argument (with replacement once the
// arguments run out). Falls back to arguments for <span_0> when there are no
// predicates. Throws ContractError if both lists are empty while placeholders
// remain.
GenerationRecord mock_generate(const GenerationRequest &request, Rng &rng);
GenerationRecord mock_generate(const FormattedExample &example, Rng &rng);

inline constexpr std::string_view kMockStage = "mock";

}  // namespace falsesum

#endif  // FALSESUM_GENERATION_H_
