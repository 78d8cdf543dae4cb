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

#ifndef FALSESUM_CONLLU_H_
#define FALSESUM_CONLLU_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace falsesum {

// One CoNLL-U token line. Only the ID, FORM, LEMMA, UPOS, HEAD and DEPREL
// columns are retained.
struct Token {
  int index = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string upos;
  int head = 0;  // 0 = syntactic root
  std::string deprel;

  bool operator==(const Token &) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  int sent_index = 0;
  // Value of the "# text =" comment when present, empty otherwise.
  std::string text;

  std::size_t size() const { return tokens.size(); }
  // 1-based access.
  const Token &token(int index) const { return tokens.at(index - 1); }
  int root() const;

  bool operator==(const Sentence &) const = default;
};

// Universal relation without its subtype: "nsubj:pass" -> "nsubj".
std::string_view base_relation(std::string_view deprel);

// Comment line that separates document sentences from summary sentences in
// a per-document parse file.
inline constexpr std::string_view kSummaryMarker = "# falsesum-summary-begin";

// Parses a CoNLL-U stream into sentences. Multiword ranges and empty nodes
// are skipped. Throws ParseError for malformed lines and StructuralError for
// heads that do not form a single-rooted tree.
std::vector<Sentence> parse_conllu(std::istream &in);
std::vector<Sentence> parse_conllu(std::string_view text);

struct ConlluSections {
  std::vector<Sentence> document;
  std::vector<Sentence> summary;
  // Value of a "# ud_version =" comment, if any.
  std::string ud_version;
};

// Parses a parse file laid out as document sentences, the summary marker,
// then summary sentences. sent_index restarts at 0 in each section.
ConlluSections parse_conllu_sections(std::istream &in);

// Writes sentences back as CoNLL-U. Discarded columns are written as "_".
void write_conllu(std::ostream &out, const std::vector<Sentence> &sentences);
std::string to_conllu(const std::vector<Sentence> &sentences);

// Checks index contiguity, head range, single root and acyclicity. Throws
// StructuralError naming the sentence.
void validate_tree(const Sentence &sentence);

// Children of each token, indexed by head (0..n), in surface order.
std::vector<std::vector<int>> children_by_head(const Sentence &sentence);

}  // namespace falsesum

#endif  // FALSESUM_CONLLU_H_
