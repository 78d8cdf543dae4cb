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

#include <gtest/gtest.h>

#include <fstream>

#include "falsesum/errors.h"
#include "falsesum/jsonl.h"
#include "testing.h"

namespace falsesum {
namespace {

constexpr const char *kDocBlock =
    "1\tRain\train\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
    "2\tfell\tfall\tVERB\t_\t_\t0\troot\t_\t_\n\n";

std::string summary_block(const std::string &verb) {
  return "1\tRain\train\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
         "2\t" + verb + "\t" + verb + "\tVERB\t_\t_\t0\troot\t_\t_\n\n";
}

// Writes a tiny corpus: every listed doc gets a parse file unless its id is
// in `without_parse`.
struct TinyCorpus {
  std::filesystem::path dir;

  explicit TinyCorpus(std::string_view name) : dir(testing::scratch_dir(name)) {
    std::filesystem::create_directories(dir / "parses");
  }

  void add(const std::string &doc_id, const std::vector<std::string> &summaries,
           bool with_parse = true) {
    std::ofstream(dir / "documents.jsonl", std::ios::app)
        << R"({"doc_id":")" << doc_id << R"(","text":"Rain fell."})" << '\n';
    Json record = {{"doc_id", doc_id}, {"sentences", summaries}};
    std::ofstream(dir / "summaries.jsonl", std::ios::app) << record.dump() << '\n';
    if (!with_parse) return;
    std::ofstream parse(dir / "parses" / (doc_id + ".conllu"));
    parse << kDocBlock << kSummaryMarker << '\n';
    for (const auto &s : summaries) {
      if (s.find_first_not_of(' ') == std::string::npos) continue;
      parse << summary_block(s.substr(5, s.size() - 6));
    }
  }

  CorpusPaths paths() const {
    return CorpusPaths::in_directory(dir, dir / "parses");
  }
};

TEST(CorpusTest, OneUnitPerSummarySentence) {
  TinyCorpus c("three_sentences");
  c.add("a", {"Rain fell.", "Rain ended.", "Rain returned."});
  Corpus corpus = load_corpus(c.paths());
  ASSERT_EQ(corpus.units.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(corpus.units[i].summary_index, i);
    EXPECT_EQ(corpus.units[i].doc_id, "a");
  }
  EXPECT_EQ(corpus.units[1].summary.text, "Rain ended.");
  EXPECT_EQ(corpus.units[1].summary.token(2).form, "ended");
  // Units of one document share the parsed document.
  EXPECT_EQ(corpus.units[0].document.get(), corpus.units[2].document.get());
  EXPECT_TRUE(corpus.skips.empty());
}

TEST(CorpusTest, MissingParseIsSkipped) {
  TinyCorpus c("missing_parse");
  c.add("a", {"Rain fell."});
  c.add("b", {"Rain ended."}, /*with_parse=*/false);
  Corpus corpus = load_corpus(c.paths());
  ASSERT_EQ(corpus.units.size(), 1u);
  EXPECT_EQ(corpus.units[0].doc_id, "a");
  ASSERT_EQ(corpus.skips.size(), 1u);
  EXPECT_EQ(corpus.skips[0],
            (SkipRecord{"b", std::string(skip_reason::kMissingParse)}));
}

TEST(CorpusTest, BlankSummarySentenceIsReported) {
  TinyCorpus c("blank_sentence");
  c.add("a", {"Rain fell.", "   ", "Rain ended."});
  Corpus corpus = load_corpus(c.paths());
  ASSERT_EQ(corpus.units.size(), 2u);
  EXPECT_EQ(corpus.units[0].summary_index, 0);
  EXPECT_EQ(corpus.units[1].summary_index, 2);
  EXPECT_EQ(corpus.summary_sentences, 3u);
  ASSERT_EQ(corpus.skips.size(), 1u);
  EXPECT_EQ(corpus.skips[0].reason, skip_reason::kEmptySummarySentence);
}

TEST(CorpusTest, SummaryCountMismatchIsSkipped) {
  TinyCorpus c("count_mismatch");
  c.add("a", {"Rain fell."});
  {
    std::ofstream parse(c.dir / "parses" / "a.conllu", std::ios::app);
    parse << summary_block("ended");
  }
  Corpus corpus = load_corpus(c.paths());
  EXPECT_TRUE(corpus.units.empty());
  ASSERT_EQ(corpus.skips.size(), 1u);
  EXPECT_EQ(corpus.skips[0].reason, skip_reason::kSummaryCountMismatch);
}

TEST(CorpusTest, InvalidParseIsSkipped) {
  TinyCorpus c("invalid_parse");
  c.add("a", {"Rain fell."});
  c.add("b", {"Rain ended."});
  std::ofstream(c.dir / "parses" / "b.conllu") << "1\tx\tx\tVERB\t_\t_\t5\troot\t_\t_\n\n";
  Corpus corpus = load_corpus(c.paths());
  ASSERT_EQ(corpus.units.size(), 1u);
  ASSERT_EQ(corpus.skips.size(), 1u);
  EXPECT_EQ(corpus.skips[0].doc_id, "b");
  EXPECT_EQ(corpus.skips[0].reason, skip_reason::kInvalidParse);
}

TEST(CorpusTest, MissingDocumentIsSkipped) {
  TinyCorpus c("missing_document");
  c.add("a", {"Rain fell."});
  Json record = {{"doc_id", "z"}, {"sentences", {"Rain fell."}}};
  std::ofstream(c.dir / "summaries.jsonl", std::ios::app) << record.dump() << '\n';
  Corpus corpus = load_corpus(c.paths());
  ASSERT_EQ(corpus.skips.size(), 1u);
  EXPECT_EQ(corpus.skips[0],
            (SkipRecord{"z", std::string(skip_reason::kMissingDocument)}));
}

TEST(CorpusTest, DuplicateDocIdIsParseError) {
  TinyCorpus c("duplicate");
  c.add("a", {"Rain fell."});
  c.add("a", {"Rain fell."});
  EXPECT_THROW(load_corpus(c.paths()), ParseError);
}

TEST(CorpusTest, MissingDocumentsFileNamesPath) {
  auto dir = testing::scratch_dir("no_files");
  try {
    load_corpus(CorpusPaths::in_directory(dir, dir / "parses"));
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("documents.jsonl"), std::string::npos)
        << e.what();
  }
}

TEST(CorpusTest, FixtureCorpus) {
  const Corpus &corpus = testing::fixture_corpus();
  EXPECT_EQ(corpus.summary_sentences, 11u);
  ASSERT_EQ(corpus.units.size(), 11u);
  EXPECT_TRUE(corpus.skips.empty());
  std::vector<std::pair<std::string, int>> keys;
  for (const auto &u : corpus.units) keys.emplace_back(u.doc_id, u.summary_index);
  std::vector<std::pair<std::string, int>> expected = {
      {"d1", 0}, {"d1", 1}, {"d2", 0}, {"d2", 1}, {"d2", 2}, {"d3", 0},
      {"d3", 1}, {"d4", 0}, {"d4", 1}, {"d5", 0}, {"d5", 1}};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(corpus.units[0].summary.text,
            "Two Pennsylvania judges plead guilty to federal fraud charges.");
  EXPECT_EQ(corpus.units[0].document->sentences.size(), 4u);
}

TEST(CorpusTest, FixtureOrderStableAcrossRunsAndJobs) {
  Corpus serial = load_corpus(testing::fixture_paths(), 1);
  Corpus parallel = load_corpus(testing::fixture_paths(), 4);
  ASSERT_EQ(serial.units.size(), parallel.units.size());
  for (std::size_t i = 0; i < serial.units.size(); ++i) {
    EXPECT_EQ(serial.units[i].doc_id, parallel.units[i].doc_id);
    EXPECT_EQ(serial.units[i].summary, parallel.units[i].summary);
    EXPECT_EQ(serial.units[i].document->sentences,
              parallel.units[i].document->sentences);
  }
}

TEST(CorpusTest, AlignTokens) {
  Sentence s = testing::make_sentence(
      {"Rain rain NOUN 2 nsubj", "fell fall VERB 0 root", ". . PUNCT 2 punct"});
  auto ranges = align_tokens(s, "Rain  fell.");
  ASSERT_TRUE(ranges.has_value());
  EXPECT_EQ((*ranges)[0], (std::pair<std::size_t, std::size_t>{0, 4}));
  EXPECT_EQ((*ranges)[1], (std::pair<std::size_t, std::size_t>{6, 10}));
  EXPECT_EQ((*ranges)[2], (std::pair<std::size_t, std::size_t>{10, 11}));
  EXPECT_FALSE(align_tokens(s, "Snow fell.").has_value());
}

}  // namespace
}  // namespace falsesum
