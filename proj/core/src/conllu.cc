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

#include "falsesum/conllu.h"

#include <charconv>
#include <functional>
#include <sstream>

#include "falsesum/errors.h"

namespace falsesum {
namespace {

constexpr std::string_view kTextComment = "# text = ";
constexpr std::string_view kUdVersionComment = "# ud_version = ";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

bool parse_int(std::string_view s, int &value) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string sentence_label(const Sentence &s) {
  std::string label = "sentence " + std::to_string(s.sent_index);
  if (!s.tokens.empty()) label += " (starting \"" + s.tokens[0].form + "\")";
  return label;
}

// Streams sentences to `emit`; comment lines other than "# text =" go to
// `on_comment` together with the number of sentences emitted so far.
void scan(std::istream &in, const std::function<void(Sentence)> &emit,
          const std::function<void(std::string_view)> &on_comment) {
  Sentence current;
  bool open = false;
  std::size_t line_no = 0;
  std::size_t block_start = 0;
  std::string line;

  auto flush = [&]() {
    if (open) {
      if (current.tokens.empty()) {
        throw ParseError("sentence block has no token lines", block_start);
      }
      emit(std::move(current));
    }
    current = Sentence{};
    open = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (!open) block_start = line_no;
    if (line[0] == '#') {
      std::string_view view(line);
      if (view.starts_with(kTextComment)) {
        current.text = std::string(view.substr(kTextComment.size()));
        open = true;
      } else {
        // A comment directly before a new block belongs to that block, but
        // section markers must be seen before the block's tokens.
        on_comment(view);
      }
      continue;
    }
    open = true;
    auto fields = split_tabs(line);
    if (fields.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    std::string_view id = fields[0];
    if (id.find('-') != std::string_view::npos ||
        id.find('.') != std::string_view::npos) {
      continue;  // multiword range or empty node
    }
    Token token;
    if (!parse_int(id, token.index)) {
      throw ParseError("non-integer ID \"" + std::string(id) + "\"", line_no);
    }
    if (!parse_int(fields[6], token.head)) {
      throw ParseError("non-integer HEAD \"" + std::string(fields[6]) + "\"",
                       line_no);
    }
    token.form = std::string(fields[1]);
    token.lemma = std::string(fields[2]);
    token.upos = std::string(fields[3]);
    token.deprel = std::string(fields[7]);
    current.tokens.push_back(std::move(token));
  }
  flush();
}

}  // namespace

int Sentence::root() const {
  for (const Token &t : tokens) {
    if (t.head == 0) return t.index;
  }
  return 0;
}

std::string_view base_relation(std::string_view deprel) {
  return deprel.substr(0, deprel.find(':'));
}

void validate_tree(const Sentence &sentence) {
  const int n = static_cast<int>(sentence.tokens.size());
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token &t = sentence.tokens[i];
    if (t.index != i + 1) {
      throw StructuralError(sentence_label(sentence) +
                            ": token indices are not contiguous at position " +
                            std::to_string(i + 1));
    }
    if (t.head < 0 || t.head > n) {
      throw StructuralError(sentence_label(sentence) + ": token " +
                            std::to_string(t.index) + " has head " +
                            std::to_string(t.head) + " outside 0.." +
                            std::to_string(n));
    }
    if (t.head == t.index) {
      throw StructuralError(sentence_label(sentence) + ": token " +
                            std::to_string(t.index) + " is its own head");
    }
    if (t.head == 0) ++roots;
  }
  if (roots != 1) {
    throw StructuralError(sentence_label(sentence) + ": expected one root, found " +
                          std::to_string(roots));
  }
  // Walk up from every token; a path longer than n means a cycle.
  for (const Token &t : sentence.tokens) {
    int node = t.index;
    for (int steps = 0; node != 0; ++steps) {
      if (steps > n) {
        throw StructuralError(sentence_label(sentence) +
                              ": cyclic head structure through token " +
                              std::to_string(t.index));
      }
      node = sentence.tokens[node - 1].head;
    }
  }
}

std::vector<Sentence> parse_conllu(std::istream &in) {
  std::vector<Sentence> sentences;
  scan(
      in,
      [&](Sentence s) {
        s.sent_index = static_cast<int>(sentences.size());
        validate_tree(s);
        sentences.push_back(std::move(s));
      },
      [](std::string_view) {});
  return sentences;
}

std::vector<Sentence> parse_conllu(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_conllu(in);
}

ConlluSections parse_conllu_sections(std::istream &in) {
  ConlluSections sections;
  bool in_summary = false;
  scan(
      in,
      [&](Sentence s) {
        auto &target = in_summary ? sections.summary : sections.document;
        s.sent_index = static_cast<int>(target.size());
        validate_tree(s);
        target.push_back(std::move(s));
      },
      [&](std::string_view comment) {
        if (comment == kSummaryMarker) {
          in_summary = true;
        } else if (comment.starts_with(kUdVersionComment)) {
          sections.ud_version =
              std::string(comment.substr(kUdVersionComment.size()));
        }
      });
  return sections;
}

void write_conllu(std::ostream &out, const std::vector<Sentence> &sentences) {
  for (const Sentence &s : sentences) {
    if (!s.text.empty()) out << kTextComment << s.text << '\n';
    for (const Token &t : s.tokens) {
      out << t.index << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos
          << "\t_\t_\t" << t.head << '\t' << t.deprel << "\t_\t_\n";
    }
    out << '\n';
  }
}

std::string to_conllu(const std::vector<Sentence> &sentences) {
  std::ostringstream out;
  write_conllu(out, sentences);
  return out.str();
}

std::vector<std::vector<int>> children_by_head(const Sentence &sentence) {
  std::vector<std::vector<int>> children(sentence.tokens.size() + 1);
  for (const Token &t : sentence.tokens) {
    if (t.head >= 0 && t.head <= static_cast<int>(sentence.tokens.size())) {
      children[t.head].push_back(t.index);
    }
  }
  return children;
}

}  // namespace falsesum
