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

#include "falsesum/relations.h"

#include <algorithm>
#include <array>
#include <set>

#include "falsesum/errors.h"

namespace falsesum {
namespace {

constexpr std::array<std::string_view, 9> kNonPredicateRelations = {
    "amod", "acl", "aux", "cop", "mark", "case", "fixed", "flat", "compound"};

constexpr std::array<std::string_view, 4> kFunctionRelations = {
    "aux", "cop", "mark", "part"};

constexpr std::array<std::string_view, 5> kArgumentRelations = {
    "nsubj", "obj", "iobj", "obl", "nmod"};

template <std::size_t N>
bool one_of(std::string_view value,
            const std::array<std::string_view, N> &set) {
  return std::find(set.begin(), set.end(), value) != set.end();
}

bool is_nominal(std::string_view upos) {
  return upos == "NOUN" || upos == "PROPN" || upos == "PRON";
}

bool is_separator(const Token &t) {
  return t.upos == "PUNCT" && (t.form.find(',') != std::string::npos ||
                               t.form.find(';') != std::string::npos);
}

// Helper bundling the tree views used by the extractor.
class Tree {
 public:
  explicit Tree(const Sentence &sentence)
      : sentence_(sentence), children_(children_by_head(sentence)) {
    depth_.assign(sentence.size() + 1, 0);
    for (const Token &t : sentence.tokens) {
      int d = 0;
      for (int node = t.index; sentence.token(node).head != 0;
           node = sentence.token(node).head) {
        ++d;
      }
      depth_[t.index] = d;
    }
  }

  const Token &token(int i) const { return sentence_.token(i); }
  const std::vector<int> &children(int i) const { return children_[i]; }
  int depth(int i) const { return depth_[i]; }
  int size() const { return static_cast<int>(sentence_.size()); }

  // Membership mask over 1..n of the subtree rooted at `node`.
  std::vector<bool> subtree(int node) const {
    std::vector<bool> in(sentence_.size() + 1, false);
    std::vector<int> stack = {node};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      in[t] = true;
      for (int c : children_[t]) stack.push_back(c);
    }
    return in;
  }

 private:
  const Sentence &sentence_;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_;
};

// Longest run of `allowed` tokens around `center`.
std::pair<int, int> run_around(int center, int n,
                               const std::vector<bool> &allowed) {
  int first = center, last = center;
  while (first > 1 && allowed[first - 1]) --first;
  while (last < n && allowed[last + 1]) ++last;
  return {first, last};
}

}  // namespace

std::vector<RelationTuple> extract_tuples(const Sentence &sentence,
                                          SpanOrigin origin) {
  Tree tree(sentence);
  const int n = tree.size();

  std::vector<int> candidates;
  for (const Token &t : sentence.tokens) {
    if (t.upos == "VERB" &&
        !one_of(base_relation(t.deprel), kNonPredicateRelations)) {
      candidates.push_back(t.index);
    }
  }
  // Governors claim their xcomp complements before those are considered.
  std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return tree.depth(a) < tree.depth(b);
  });

  std::vector<bool> absorbed(n + 1, false);
  std::vector<RelationTuple> tuples;

  for (int head : candidates) {
    if (absorbed[head]) continue;

    std::vector<bool> member(n + 2, false);
    std::vector<int> complements;
    member[head] = true;
    std::vector<int> stack = {head};
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      for (int c : tree.children(node)) {
        const Token &child = tree.token(c);
        std::string_view rel = base_relation(child.deprel);
        if (one_of(rel, kFunctionRelations) || child.deprel == "compound:prt") {
          member[c] = true;
        } else if (rel == "xcomp" && !absorbed[c]) {
          member[c] = true;
          complements.push_back(c);
          stack.push_back(c);
        }
      }
    }
    auto [pred_first, pred_last] = run_around(head, n, member);

    std::vector<int> bearers = {head};
    for (int c : complements) {
      if (c >= pred_first && c <= pred_last) {
        absorbed[c] = true;
        bearers.push_back(c);
      }
    }

    Span predicate{sentence.sent_index, pred_first, pred_last, head,
                   SpanKind::kPredicate, origin};

    struct Candidate {
      Span span;
      std::string_view rel;
    };
    std::vector<Candidate> arguments;
    for (int bearer : bearers) {
      for (int c : tree.children(bearer)) {
        if (predicate.contains(c)) continue;
        const Token &child = tree.token(c);
        std::string_view rel = base_relation(child.deprel);
        bool is_argument = one_of(rel, kArgumentRelations) ||
                           (rel == "ccomp" && is_nominal(child.upos));
        if (!is_argument) continue;

        std::vector<bool> allowed = tree.subtree(c);
        allowed.push_back(false);
        for (int i = 1; i <= n; ++i) {
          if (allowed[i] && (is_separator(tree.token(i)) || predicate.contains(i))) {
            allowed[i] = false;
          }
        }
        auto [first, last] = run_around(c, n, allowed);
        while (first < c && tree.token(first).upos == "PUNCT") ++first;
        while (last > c && tree.token(last).upos == "PUNCT") --last;
        arguments.push_back(
            {Span{sentence.sent_index, first, last, c, SpanKind::kArgument,
                  origin},
             rel});
      }
    }
    if (arguments.empty()) continue;
    std::sort(arguments.begin(), arguments.end(),
              [](const Candidate &a, const Candidate &b) {
                return a.span.first < b.span.first;
              });

    for (Candidate &arg : arguments) {
      if (arg.span.first != predicate.last + 1) continue;
      if (arg.rel != "obl" && arg.rel != "nmod") continue;
      const Token &opener = tree.token(arg.span.first);
      if (base_relation(opener.deprel) == "case" &&
          opener.head == arg.span.root) {
        ++predicate.last;
        ++arg.span.first;
      }
      break;
    }

    RelationTuple tuple;
    tuple.predicate = predicate;
    for (const Candidate &arg : arguments) tuple.arguments.push_back(arg.span);
    tuples.push_back(std::move(tuple));
  }

  std::sort(tuples.begin(), tuples.end(),
            [](const RelationTuple &a, const RelationTuple &b) {
              return a.predicate.first < b.predicate.first;
            });
  return tuples;
}

std::vector<RelationTuple> select_document_tuples(const ParsedDocument &document,
                                                  Rng &rng) {
  std::vector<RelationTuple> selected;
  for (const Sentence &sentence : document.sentences) {
    if (sentence.sent_index >= kMaxDocumentSentences) continue;
    std::vector<RelationTuple> tuples =
        extract_tuples(sentence, SpanOrigin::kDocument);
    if (tuples.size() <= kTuplesPerSentence) {
      for (auto &t : tuples) selected.push_back(std::move(t));
      continue;
    }
    for (std::size_t i : rng.sample_indices(tuples.size(), kTuplesPerSentence)) {
      selected.push_back(std::move(tuples[i]));
    }
  }
  return selected;
}

void check_span(const Span &span, const Sentence &sentence) {
  const int n = static_cast<int>(sentence.size());
  if (span.first < 1 || span.last > n || span.first > span.last ||
      span.root < span.first || span.root > span.last) {
    throw InternalError("span [" + std::to_string(span.first) + ", " +
                        std::to_string(span.last) + "] root " +
                        std::to_string(span.root) +
                        " does not fit a sentence of " + std::to_string(n) +
                        " tokens");
  }
}

std::string span_text(const Span &span, const Sentence &sentence) {
  check_span(span, sentence);
  std::string text;
  for (int i = span.first; i <= span.last; ++i) {
    if (i != span.first) text += ' ';
    text += sentence.token(i).form;
  }
  return text;
}

Json tuple_to_json(const std::string &doc_id, const RelationTuple &tuple,
                   const Sentence &sentence) {
  Json args = Json::array();
  for (const Span &a : tuple.arguments) args.push_back(span_text(a, sentence));
  return Json{{"doc_id", doc_id},
              {"sent_index", tuple.predicate.sent_index},
              {"pred", span_text(tuple.predicate, sentence)},
              {"args", std::move(args)}};
}

}  // namespace falsesum
