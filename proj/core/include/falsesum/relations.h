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

#ifndef FALSESUM_RELATIONS_H_
#define FALSESUM_RELATIONS_H_

#include <string>
#include <vector>

#include "falsesum/conllu.h"
#include "falsesum/corpus.h"
#include "falsesum/jsonl.h"
#include "falsesum/rng.h"

namespace falsesum {

enum class SpanKind { kPredicate, kArgument };
enum class SpanOrigin { kDocument, kSummary };

// Contiguous, inclusive token range [first, last] of one sentence.
struct Span {
  int sent_index = 0;
  int first = 0;
  int last = 0;
  int root = 0;
  SpanKind kind = SpanKind::kArgument;
  SpanOrigin origin = SpanOrigin::kDocument;

  int size() const { return last - first + 1; }
  bool contains(int index) const { return index >= first && index <= last; }
  bool overlaps(const Span &other) const {
    return first <= other.last && other.first <= last;
  }

  bool operator==(const Span &) const = default;
};

// (ARG0, PRED, ..., ARGn): a predicate and its arguments in surface order.
struct RelationTuple {
  Span predicate;
  std::vector<Span> arguments;

  bool operator==(const RelationTuple &) const = default;
};

// Pattern-based extraction over a dependency tree:
//
//  * Predicate heads are VERB tokens that are not adjectival modifiers or
//    function words (amod, acl, aux, cop, mark, case, fixed, flat, compound)
//    and that have not been absorbed into another predicate.
//  * A predicate span is the longest contiguous run around the head of the
//    head itself, its aux/cop/mark/part/compound:prt dependents, and its
//    xcomp complements (with their own function-word dependents), so
//    "plans to give" is one predicate.
//  * Arguments are nsubj, obj, iobj, obl and nmod dependents (plus nominal
//    ccomp) of the head or an absorbed xcomp. Each is the longest contiguous
//    run of the dependent's subtree around it, cut at "," and ";" and with
//    edge punctuation trimmed.
//  * A case marker that opens an obl/nmod argument immediately after the
//    predicate moves into the predicate ("plead guilty to" + "charges").
//
// Tuples without arguments are dropped. Output is ordered by predicate.
std::vector<RelationTuple> extract_tuples(
    const Sentence &sentence, SpanOrigin origin = SpanOrigin::kDocument);

// Sentences before this index are the only ones mined for document tuples.
inline constexpr int kMaxDocumentSentences = 15;
inline constexpr std::size_t kTuplesPerSentence = 2;

// Extracts tuples from the first kMaxDocumentSentences sentences, keeping at
// most kTuplesPerSentence per sentence, chosen uniformly without replacement.
// Output is ordered by sentence, then by predicate position.
std::vector<RelationTuple> select_document_tuples(const ParsedDocument &document,
                                                  Rng &rng);

// Space-joined FORM values of span.first..span.last. Throws InternalError if
// the span does not fit the sentence.
std::string span_text(const Span &span, const Sentence &sentence);

// Throws InternalError if the span does not address `sentence`.
void check_span(const Span &span, const Sentence &sentence);

// Debug dump record: {"doc_id", "sent_index", "pred", "args"}.
Json tuple_to_json(const std::string &doc_id, const RelationTuple &tuple,
                   const Sentence &sentence);

}  // namespace falsesum

#endif  // FALSESUM_RELATIONS_H_
