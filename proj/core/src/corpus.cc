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

#include "falsesum/corpus.h"

#include <algorithm>
#include <fstream>
#include <map>

#include "falsesum/errors.h"
#include "falsesum/jsonl.h"
#include "falsesum/parallel.h"

namespace falsesum {
namespace {

struct SummaryEntry {
  std::string doc_id;
  std::vector<std::string> sentences;
};

struct DocResult {
  std::vector<DocSummaryUnit> units;
  std::vector<SkipRecord> skips;
};

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

DocResult load_one(const SummaryEntry &entry,
                   const std::map<std::string, std::string> &documents,
                   const std::filesystem::path &parses_dir) {
  DocResult result;
  auto skip = [&](std::string_view reason) {
    result.skips.push_back({entry.doc_id, std::string(reason)});
  };

  auto doc_it = documents.find(entry.doc_id);
  if (doc_it == documents.end()) {
    skip(skip_reason::kMissingDocument);
    return result;
  }
  std::filesystem::path parse_path = parses_dir / (entry.doc_id + ".conllu");
  std::ifstream in(parse_path);
  if (!in) {
    skip(skip_reason::kMissingParse);
    return result;
  }
  ConlluSections sections;
  try {
    sections = parse_conllu_sections(in);
  } catch (const Error &) {
    skip(skip_reason::kInvalidParse);
    return result;
  }
  if (sections.document.empty()) {
    skip(skip_reason::kEmptyDocumentParse);
    return result;
  }

  std::size_t non_empty = 0;
  for (const auto &s : entry.sentences) non_empty += is_blank(s) ? 0 : 1;
  if (non_empty != sections.summary.size()) {
    skip(skip_reason::kSummaryCountMismatch);
    return result;
  }

  auto document = std::make_shared<ParsedDocument>();
  document->doc_id = entry.doc_id;
  document->raw_text = doc_it->second;
  document->sentences = std::move(sections.document);

  std::size_t block = 0;
  for (std::size_t i = 0; i < entry.sentences.size(); ++i) {
    if (is_blank(entry.sentences[i])) {
      skip(skip_reason::kEmptySummarySentence);
      continue;
    }
    DocSummaryUnit unit;
    unit.doc_id = entry.doc_id;
    unit.document = document;
    unit.summary = std::move(sections.summary[block++]);
    unit.summary.sent_index = static_cast<int>(i);
    unit.summary.text = entry.sentences[i];
    unit.summary_index = static_cast<int>(i);
    result.units.push_back(std::move(unit));
  }
  return result;
}

}  // namespace

CorpusPaths CorpusPaths::in_directory(const std::filesystem::path &corpus_dir,
                                      const std::filesystem::path &parses_dir) {
  return {corpus_dir / "documents.jsonl", corpus_dir / "summaries.jsonl",
          parses_dir};
}

Corpus load_corpus(const CorpusPaths &paths, std::size_t jobs) {
  std::map<std::string, std::string> documents;
  read_jsonl(paths.documents, [&](const Json &record, std::size_t line) {
    std::string id = require_string(record, "doc_id", line);
    std::string text = require_string(record, "text", line);
    if (!documents.emplace(id, std::move(text)).second) {
      throw ParseError(paths.documents.string() + ": duplicate doc_id \"" +
                           id + "\"",
                       line);
    }
  });
  if (!std::filesystem::is_directory(paths.parses)) {
    throw UsageError("parses directory not found: " + paths.parses.string());
  }

  std::vector<SummaryEntry> summaries;
  std::map<std::string, std::size_t> seen;
  read_jsonl(paths.summaries, [&](const Json &record, std::size_t line) {
    SummaryEntry entry;
    entry.doc_id = require_string(record, "doc_id", line);
    const Json &sentences = require_field(record, "sentences", line);
    if (!sentences.is_array()) {
      throw ParseError("field \"sentences\" must be an array", line);
    }
    for (const Json &s : sentences) {
      if (!s.is_string()) {
        throw ParseError("summary sentences must be strings", line);
      }
      entry.sentences.push_back(s.get<std::string>());
    }
    if (!seen.emplace(entry.doc_id, line).second) {
      throw ParseError(paths.summaries.string() + ": duplicate doc_id \"" +
                           entry.doc_id + "\"",
                       line);
    }
    summaries.push_back(std::move(entry));
  });
  std::sort(summaries.begin(), summaries.end(),
            [](const SummaryEntry &a, const SummaryEntry &b) {
              return a.doc_id < b.doc_id;
            });

  auto per_doc = parallel_map(summaries.size(), jobs, [&](std::size_t i) {
    return load_one(summaries[i], documents, paths.parses);
  });

  Corpus corpus;
  for (const auto &entry : summaries) {
    corpus.summary_sentences += entry.sentences.size();
  }
  for (auto &r : per_doc) {
    for (auto &u : r.units) corpus.units.push_back(std::move(u));
    for (auto &s : r.skips) corpus.skips.push_back(std::move(s));
  }
  return corpus;
}

std::optional<std::vector<std::pair<std::size_t, std::size_t>>> align_tokens(
    const Sentence &sentence, std::string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ranges.reserve(sentence.tokens.size());
  std::size_t pos = 0;
  for (const Token &t : sentence.tokens) {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
            text[pos] == '\r')) {
      ++pos;
    }
    if (t.form.empty() || text.compare(pos, t.form.size(), t.form) != 0) {
      return std::nullopt;
    }
    ranges.emplace_back(pos, pos + t.form.size());
    pos += t.form.size();
  }
  return ranges;
}

}  // namespace falsesum
