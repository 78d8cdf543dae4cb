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

#ifndef FALSESUM_PERTURB_H_
#define FALSESUM_PERTURB_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "falsesum/corpus.h"
#include "falsesum/jsonl.h"
#include "falsesum/relations.h"
#include "falsesum/rng.h"

namespace falsesum {

enum class ControlCode { kIntrinsic, kExtrinsic };
enum class Mode { kTrain, kTest };

std::string_view to_string(ControlCode code);
std::string_view to_string(Mode mode);
// Throws UsageError for anything but "intrinsic"/"extrinsic".
ControlCode parse_control_code(std::string_view text);
Mode parse_mode(std::string_view text);

// Probability that a retained gold span has its modifiers dropped.
inline constexpr double kReductionRate = 0.10;
inline constexpr double kIntrinsicRate = 0.5;

// Names of the per-unit random streams.
namespace stage_tag {
inline constexpr std::string_view kSelect = "select";
inline constexpr std::string_view kCorrupt = "corrupt";
inline constexpr std::string_view kCode = "code";
inline constexpr std::string_view kReduce = "reduce";
inline constexpr std::string_view kMask = "mask";
inline constexpr std::string_view kAssemble = "assemble";
inline constexpr std::string_view kSplit = "split";
}  // namespace stage_tag

// Counters for recoverable data-quality issues.
struct QualityReport {
  std::size_t missing_lemmas = 0;
  std::size_t reduced_spans = 0;
  std::size_t unrenderable_spans = 0;

  QualityReport &operator+=(const QualityReport &other);
};

// A processed span ready for the input lists.
struct SpanItem {
  std::string text;
  // Lowercased lemma of the root token, used for duplicate detection.
  std::string root_lemma;
  // Space-joined forms, before lemmatization or reduction.
  std::string surface;
  Span span;
  bool gold = false;

  bool operator==(const SpanItem &) const = default;
};

struct SpanLists {
  std::vector<SpanItem> predicates;
  std::vector<SpanItem> arguments;
};

struct MaskEntry {
  int mask_id = 0;
  Span gold_span;
  // Exact characters of the summary covered by gold_span.
  std::string gold_text;

  bool operator==(const MaskEntry &) const = default;
};

// Summary with <span_i> placeholders; mask_map is ordered by mask_id.
struct MaskedSummary {
  std::string text;
  std::vector<MaskEntry> mask_map;

  // Substitutes every placeholder by its gold text.
  std::string reconstruct() const;
};

std::string mask_token(int mask_id);

struct FormattedExample {
  std::string doc_id;
  int summary_index = 0;
  Mode mode = Mode::kTrain;
  ControlCode code = ControlCode::kIntrinsic;
  std::vector<std::string> predicates;
  std::vector<std::string> arguments;
  MaskedSummary masked_summary;
  std::string input_text;
  std::optional<std::string> target_text;

  // Provenance of the list entries and the gold frame, for auditing.
  SpanLists items;
  SpanLists gold;

  // Seq2seq JSON Lines record.
  Json to_json() const;
};

// Removes one uniformly chosen argument. A tuple left with no arguments still
// carries its predicate.
RelationTuple corrupt_tuple(const RelationTuple &tuple, Rng &rng);

// Span text with the root token's FORM replaced by its LEMMA. A missing lemma
// ("_" or empty) keeps the form and is counted in `report`.
std::string lemmatize_root(const Span &span, const Sentence &sentence,
                           QualityReport *report = nullptr);

// Tokens of `span` removed by modifier reduction: ADJ/ADV tokens and
// amod/advmod/acl dependents, with their subtrees inside the span. The root is
// always kept.
std::vector<bool> reduction_mask(const Span &span, const Sentence &sentence);

struct ReducedSpan {
  std::string text;
  bool selected = false;      // drawn for reduction (probability 0.10)
  std::vector<bool> keep;     // indexed by token - span.first
};

// Draws once from `rng`; on selection drops the modifiers given by
// reduction_mask, otherwise returns the span intact.
ReducedSpan reduce_span(const Span &span, const Sentence &sentence, Rng &rng);

// Renders the kept tokens of `span`, optionally with the root lemmatized.
std::string render_span(const Span &span, const Sentence &sentence,
                        const std::vector<bool> *keep, bool lemmatize,
                        QualityReport *report = nullptr);

// Intrinsic or extrinsic with probability 0.5 each. When `forced` is set the
// rng is not consumed.
ControlCode choose_code(Rng &rng,
                        std::optional<ControlCode> forced = std::nullopt);

// The summary tuple with the most arguments, earliest predicate on ties.
// nullopt when the summary yields no tuple.
std::optional<RelationTuple> choose_gold_frame(const Sentence &summary);

// summary.text, or the space-joined forms when no text is attached.
std::string summary_string(const Sentence &summary);

// Masks a uniformly random non-empty subset of the frame's slots. The
// predicate becomes <span_0>; masked arguments become <span_1>, <span_2>, ...
// in surface order. Unmasked characters are copied verbatim from
// summary.text (or the space-joined forms when text is empty). Throws
// ContractError if the forms cannot be aligned to the text.
MaskedSummary mask_summary(const Sentence &summary, const RelationTuple &frame,
                           Rng &rng);

// Same, with an explicit subset: bit 0 selects the predicate, bit i the i-th
// argument.
MaskedSummary mask_summary_subset(const Sentence &summary,
                                  const RelationTuple &frame,
                                  std::uint64_t subset);

// True if `item` survives the template round trip: non-empty and free of the
// list and section separators.
bool is_renderable_item(std::string_view item);

// Builds the predicate and argument lists. Gold spans are included only for
// intrinsic training. Otherwise they are left out together with every
// document span whose root lemma matches a gold root lemma (case-insensitive)
// or whose text matches a gold text. Both lists are shuffled.
SpanLists assemble_lists(const SpanLists &document, const SpanLists &gold,
                         Mode mode, ControlCode code, Rng &rng,
                         QualityReport *report = nullptr);

// "Predicates: p1, p2; Arguments: a1; Code: intrinsic; Summary: <masked>".
std::string render_input(const std::vector<std::string> &predicates,
                         const std::vector<std::string> &arguments,
                         ControlCode code, std::string_view masked_summary);

struct ParsedInput {
  std::vector<std::string> predicates;
  std::vector<std::string> arguments;
  ControlCode code = ControlCode::kIntrinsic;
  std::string summary;

  bool operator==(const ParsedInput &) const = default;
};

// Inverse of render_input. Throws ParseError (line 0) on malformed input.
ParsedInput parse_input(std::string_view input);

struct FormatOptions {
  std::uint64_t seed = 11;
  std::optional<ControlCode> force_code;
};

struct FormatSkip {
  std::string doc_id;
  int summary_index = 0;
  std::string reason;
};

struct FormatResult {
  std::variant<FormattedExample, FormatSkip> outcome;
  QualityReport quality;

  bool ok() const { return std::holds_alternative<FormattedExample>(outcome); }
  const FormattedExample &example() const {
    return std::get<FormattedExample>(outcome);
  }
  const FormatSkip &skip() const { return std::get<FormatSkip>(outcome); }
};

// Runs the whole formatting chain for one unit: select and corrupt document
// tuples, lemmatize, pick the control code and gold frame, reduce retained
// gold spans, mask, assemble and render. Every random step draws from its own
// stream keyed by (seed, unit, stage).
FormatResult make_example(const DocSummaryUnit &unit, Mode mode,
                          const FormatOptions &options);

// Train/test assignment from a hash of (seed, unit).
Mode split_mode(std::uint64_t seed, const DocSummaryUnit &unit,
                double train_fraction);

}  // namespace falsesum

#endif  // FALSESUM_PERTURB_H_
