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

#ifndef FALSESUM_CORPUS_H_
#define FALSESUM_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "falsesum/conllu.h"

namespace falsesum {

struct ParsedDocument {
  std::string doc_id;
  std::vector<Sentence> sentences;
  std::string raw_text;
};

// One (document, single summary sentence) work unit. Units of the same
// document share the parsed document.
struct DocSummaryUnit {
  std::string doc_id;
  std::shared_ptr<const ParsedDocument> document;
  // summary.text holds the summary sentence exactly as given in the
  // summaries file.
  Sentence summary;
  int summary_index = 0;
};

struct SkipRecord {
  std::string doc_id;
  std::string reason;

  bool operator==(const SkipRecord &) const = default;
};

struct CorpusPaths {
  std::filesystem::path documents;  // JSON Lines {"doc_id", "text"}
  std::filesystem::path summaries;  // JSON Lines {"doc_id", "sentences"}
  std::filesystem::path parses;     // directory of <doc_id>.conllu

  // documents.jsonl and summaries.jsonl inside `corpus_dir`.
  static CorpusPaths in_directory(const std::filesystem::path &corpus_dir,
                                  const std::filesystem::path &parses_dir);
};

struct Corpus {
  std::vector<DocSummaryUnit> units;  // sorted by (doc_id, summary_index)
  std::vector<SkipRecord> skips;      // in doc_id order
  std::size_t summary_sentences = 0;  // total listed in the summaries file
};

// Skip reasons written to the skip report.
namespace skip_reason {
inline constexpr std::string_view kMissingParse = "missing_parse";
inline constexpr std::string_view kMissingDocument = "missing_document";
inline constexpr std::string_view kEmptySummarySentence =
    "empty_summary_sentence";
inline constexpr std::string_view kSummaryCountMismatch =
    "summary_parse_count_mismatch";
inline constexpr std::string_view kEmptyDocumentParse = "empty_document_parse";
inline constexpr std::string_view kInvalidParse = "invalid_parse";
inline constexpr std::string_view kNoGoldFrame = "no_gold_frame";
inline constexpr std::string_view kTokenAlignment = "token_alignment_failed";
inline constexpr std::string_view kEmptySpanLists = "empty_span_lists";
}  // namespace skip_reason

// Pairs every non-empty summary sentence with its document. The parse file
// must contain one summary block per non-empty summary sentence. Per-document
// problems are recorded in Corpus::skips instead of failing the load.
Corpus load_corpus(const CorpusPaths &paths, std::size_t jobs = 1);

// Character ranges [begin, end) of each token's FORM inside `text`, found by
// scanning left to right and skipping whitespace. nullopt if some form does
// not occur where expected.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> align_tokens(
    const Sentence &sentence, std::string_view text);

}  // namespace falsesum

#endif  // FALSESUM_CORPUS_H_
