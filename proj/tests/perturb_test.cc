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

#include "falsesum/perturb.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "falsesum/errors.h"
#include "testing.h"

namespace falsesum {
namespace {

using testing::make_sentence;

const DocSummaryUnit &judges_unit() { return testing::fixture_corpus().units[0]; }

Sentence plans_sentence() {
  return make_sentence({"Jo Jo PROPN 2 nsubj", "plans plan VERB 0 root",
                        "to to PART 4 mark", "give give VERB 2 xcomp",
                        "Alex Alex PROPN 4 iobj", "apples apple NOUN 4 obj"});
}

// Summary text built from the forms with irregular spacing, so that masking
// has to copy the original characters rather than re-join tokens.
std::string irregular_text(const Sentence &s, Rng &rng) {
  static constexpr const char *kGaps[] = {"", " ", "  ", "\t", " "};
  std::string text;
  for (const Token &t : s.tokens) {
    if (t.index > 1) text += kGaps[rng.uniform_index(5)];
    text += t.form;
  }
  return text;
}

TEST(PerturbTest, ControlCodeStrings) {
  EXPECT_EQ(to_string(ControlCode::kIntrinsic), "intrinsic");
  EXPECT_EQ(parse_control_code("extrinsic"), ControlCode::kExtrinsic);
  EXPECT_THROW(parse_control_code("Intrinsic"), UsageError);
  EXPECT_EQ(parse_mode("test"), Mode::kTest);
  EXPECT_THROW(parse_mode("dev"), UsageError);
}

TEST(PerturbTest, CorruptDropsChosenArgument) {
  Sentence s = plans_sentence();
  RelationTuple tuple = extract_tuples(s).at(0);
  ASSERT_EQ(tuple.arguments.size(), 3u);
  // Find a seed whose first draw picks index 2 ("apples").
  for (std::uint64_t seed = 0;; ++seed) {
    Rng probe(seed);
    if (probe.uniform_index(3) != 2) continue;
    Rng rng(seed);
    RelationTuple out = corrupt_tuple(tuple, rng);
    ASSERT_EQ(out.arguments.size(), 2u);
    EXPECT_EQ(lemmatize_root(out.predicate, s), "plan to give");
    EXPECT_EQ(span_text(out.arguments[0], s), "Jo");
    EXPECT_EQ(span_text(out.arguments[1], s), "Alex");
    EXPECT_EQ(out.predicate, tuple.predicate);
    break;
  }
}

TEST(PerturbTest, CorruptSingleArgumentKeepsPredicate) {
  Sentence s = make_sentence({"Jo Jo PROPN 2 nsubj", "ran run VERB 0 root"});
  RelationTuple tuple = extract_tuples(s).at(0);
  Rng rng(3);
  RelationTuple out = corrupt_tuple(tuple, rng);
  EXPECT_TRUE(out.arguments.empty());
  EXPECT_EQ(out.predicate, tuple.predicate);
}

TEST(PerturbTest, CorruptIsDeterministic) {
  Sentence s = plans_sentence();
  RelationTuple tuple = extract_tuples(s).at(0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng a = derive_rng(seed, "d", 0, stage_tag::kCorrupt);
    Rng b = derive_rng(seed, "d", 0, stage_tag::kCorrupt);
    EXPECT_EQ(corrupt_tuple(tuple, a), corrupt_tuple(tuple, b));
  }
}

TEST(PerturbTest, Lemmatize) {
  Sentence s = plans_sentence();
  QualityReport report;
  EXPECT_EQ(lemmatize_root(Span{0, 2, 4, 2}, s, &report), "plan to give");
  EXPECT_EQ(lemmatize_root(Span{0, 6, 6, 6}, s, &report), "apple");
  EXPECT_EQ(lemmatize_root(Span{0, 1, 1, 1}, s, &report), "Jo");
  EXPECT_EQ(report.missing_lemmas, 0u);

  Sentence missing = make_sentence({"Jo _ PROPN 2 nsubj", "ran _ VERB 0 root"});
  EXPECT_EQ(lemmatize_root(Span{0, 2, 2, 2}, missing, &report), "ran");
  EXPECT_EQ(report.missing_lemmas, 1u);
}

TEST(PerturbTest, ReductionKeepsHeadNoun) {
  // Fixture summary "The recently elected prime minister visited a farm."
  const Sentence &s = testing::fixture_corpus().units[2].summary;
  Span minister{0, 2, 5, 5};
  ASSERT_EQ(span_text(minister, s), "recently elected prime minister");
  auto keep = reduction_mask(minister, s);
  EXPECT_EQ(render_span(minister, s, &keep, false), "minister");

  Span with_det{0, 1, 5, 5};
  keep = reduction_mask(with_det, s);
  EXPECT_EQ(render_span(with_det, s, &keep, false), "The minister");
}

TEST(PerturbTest, ReductionWithoutModifiersIsIdentity) {
  const Sentence &s = judges_unit().summary;
  Span judges{0, 1, 3, 3};
  auto keep = reduction_mask(judges, s);
  EXPECT_TRUE(std::all_of(keep.begin(), keep.end(), [](bool k) { return k; }));
  // Force selection by scanning seeds.
  for (std::uint64_t seed = 0;; ++seed) {
    Rng probe(seed);
    if (!probe.bernoulli(kReductionRate)) continue;
    Rng rng(seed);
    ReducedSpan r = reduce_span(judges, s, rng);
    EXPECT_TRUE(r.selected);
    EXPECT_EQ(r.text, "Two Pennsylvania judges");
    break;
  }
}

TEST(PerturbTest, ReductionRate) {
  const Sentence &s = testing::fixture_corpus().units[2].summary;
  Span minister{0, 1, 5, 5};
  std::size_t reduced = 0;
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) {
    Rng rng = derive_rng(11, "span" + std::to_string(i), 0, stage_tag::kReduce);
    ReducedSpan r = reduce_span(minister, s, rng);
    if (r.selected) {
      ++reduced;
      EXPECT_EQ(r.text, "The minister");
    } else {
      EXPECT_EQ(r.text, "The recently elected prime minister");
    }
  }
  EXPECT_NEAR(static_cast<double>(reduced) / kDraws, 0.10, 0.01);
}

TEST(PerturbTest, CodeRate) {
  std::size_t intrinsic = 0;
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) {
    Rng rng = derive_rng(11, "unit" + std::to_string(i), 0, stage_tag::kCode);
    if (choose_code(rng) == ControlCode::kIntrinsic) ++intrinsic;
  }
  EXPECT_NEAR(static_cast<double>(intrinsic) / kDraws, 0.50, 0.02);
}

TEST(PerturbTest, CodeIsDeterministic) {
  for (int i = 0; i < 20; ++i) {
    Rng a = derive_rng(11, "d1", i, stage_tag::kCode);
    Rng b = derive_rng(11, "d1", i, stage_tag::kCode);
    EXPECT_EQ(choose_code(a), choose_code(b));
  }
}

TEST(PerturbTest, ForcedCodeConsumesNoRandomness) {
  Rng used(5), fresh(5);
  EXPECT_EQ(choose_code(used, ControlCode::kExtrinsic), ControlCode::kExtrinsic);
  EXPECT_EQ(choose_code(used, ControlCode::kIntrinsic), ControlCode::kIntrinsic);
  EXPECT_EQ(used.next(), fresh.next());
}

TEST(PerturbTest, GoldFramePrefersMoreArguments) {
  // "Jo slept , and Ann gave Bo apples ."
  Sentence s = make_sentence({"Jo Jo PROPN 2 nsubj", "slept sleep VERB 0 root",
                              ", , PUNCT 6 punct", "and and CCONJ 6 cc",
                              "Ann Ann PROPN 6 nsubj", "gave give VERB 2 conj",
                              "Bo Bo PROPN 6 iobj", "apples apple NOUN 6 obj",
                              ". . PUNCT 2 punct"});
  auto frame = choose_gold_frame(s);
  ASSERT_TRUE(frame.has_value());
  EXPECT_EQ(span_text(frame->predicate, s), "gave");
  EXPECT_EQ(frame->arguments.size(), 3u);
}

TEST(PerturbTest, GoldFrameTieGoesToEarlierPredicate) {
  Sentence s = make_sentence({"Jo Jo PROPN 2 nsubj", "saw see VERB 0 root",
                              "Bo Bo PROPN 2 obj", "and and CCONJ 6 cc",
                              "Ann Ann PROPN 6 nsubj", "met meet VERB 2 conj",
                              "Cy Cy PROPN 6 obj"});
  auto frame = choose_gold_frame(s);
  ASSERT_TRUE(frame.has_value());
  EXPECT_EQ(span_text(frame->predicate, s), "saw");
}

TEST(PerturbTest, GoldFrameAbsentForVerblessSummary) {
  // "The farm is famous."
  EXPECT_FALSE(choose_gold_frame(testing::fixture_corpus().units[4].summary));
}

TEST(PerturbTest, FixtureGoldFramesGolden) {
  std::string dump;
  for (const auto &unit : testing::fixture_corpus().units) {
    auto frame = choose_gold_frame(unit.summary);
    Json record = {{"doc_id", unit.doc_id},
                   {"summary_index", unit.summary_index}};
    record["frame"] = frame ? tuple_to_json(unit.doc_id, *frame, unit.summary)
                            : Json(nullptr);
    dump += record.dump() + "\n";
  }
  EXPECT_EQ(testing::check_golden("gold_frames.jsonl", dump), "");
}

TEST(PerturbTest, JudgesExampleMask) {
  const Sentence &s = judges_unit().summary;
  auto frame = choose_gold_frame(s);
  ASSERT_TRUE(frame.has_value());
  // Predicate and first argument.
  MaskedSummary m = mask_summary_subset(s, *frame, 0b011);
  EXPECT_EQ(m.text, "<span_1> <span_0> federal fraud charges.");
  ASSERT_EQ(m.mask_map.size(), 2u);
  EXPECT_EQ(m.mask_map[0].mask_id, 0);
  EXPECT_EQ(m.mask_map[0].gold_text, "plead guilty to");
  EXPECT_EQ(m.mask_map[1].mask_id, 1);
  EXPECT_EQ(m.mask_map[1].gold_text, "Two Pennsylvania judges");
  EXPECT_EQ(m.reconstruct(), s.text);
}

TEST(PerturbTest, MaskPredicateOnly) {
  const Sentence &s = judges_unit().summary;
  MaskedSummary m = mask_summary_subset(s, *choose_gold_frame(s), 0b001);
  EXPECT_EQ(m.text, "Two Pennsylvania judges <span_0> federal fraud charges.");
}

TEST(PerturbTest, ArgumentIdsFollowSurfaceOrder) {
  const Sentence &s = judges_unit().summary;
  MaskedSummary m = mask_summary_subset(s, *choose_gold_frame(s), 0b100);
  EXPECT_EQ(m.text, "Two Pennsylvania judges plead guilty to <span_1>.");
}

TEST(PerturbTest, MaskRejectsMisalignedText) {
  Sentence s = judges_unit().summary;
  s.text = "Two judges plead guilty.";
  EXPECT_THROW(mask_summary_subset(s, *choose_gold_frame(s), 1), ContractError);
}

// Reconstruction and id discipline over random summaries with irregular
// spacing and random mask subsets.
TEST(PerturbTest, ReconstructionOracle) {
  Rng gen(31);
  int checked = 0;
  while (checked < 1000) {
    Sentence s = testing::random_sentence(
        gen, 2 + static_cast<int>(gen.uniform_index(20)));
    s.text = irregular_text(s, gen);
    auto frame = choose_gold_frame(s);
    if (!frame) continue;
    Rng rng = derive_rng(11, "r", checked, stage_tag::kMask);
    MaskedSummary m = mask_summary(s, *frame, rng);
    ASSERT_EQ(m.reconstruct(), s.text) << m.text;
    ASSERT_FALSE(m.mask_map.empty());
    // <span_0> only for the predicate; argument ids 1..k in surface order.
    int expected_id = m.mask_map.front().mask_id == 0 ? 0 : 1;
    int last_first = -1;
    for (const MaskEntry &e : m.mask_map) {
      ASSERT_EQ(e.mask_id, expected_id++);
      ASSERT_EQ(e.gold_span.kind,
                e.mask_id == 0 ? SpanKind::kPredicate : SpanKind::kArgument);
      if (e.mask_id > 0) {
        ASSERT_GT(e.gold_span.first, last_first);
        last_first = e.gold_span.first;
      }
      ASSERT_NE(m.text.find(mask_token(e.mask_id)), std::string::npos);
    }
    ++checked;
  }
}

TEST(PerturbTest, RenderJudgesExampleInput) {
  EXPECT_EQ(render_input({"caught", "plead guilty to"}, {"the corruption scandal"},
                         ControlCode::kIntrinsic,
                         "<span_1> <span_0> federal fraud charges."),
            "Predicates: caught, plead guilty to; Arguments: the corruption "
            "scandal; Code: intrinsic; Summary: <span_1> <span_0> federal "
            "fraud charges.");
}

TEST(PerturbTest, RenderEmptyArguments) {
  std::string input = render_input({"face"}, {}, ControlCode::kExtrinsic, "x");
  EXPECT_EQ(input, "Predicates: face; Arguments: ; Code: extrinsic; Summary: x");
  ParsedInput parsed = parse_input(input);
  EXPECT_TRUE(parsed.arguments.empty());
  EXPECT_EQ(parsed.predicates, std::vector<std::string>{"face"});
}

TEST(PerturbTest, RenderRejectsSeparators) {
  EXPECT_THROW(render_input({"a, b"}, {}, ControlCode::kIntrinsic, "x"),
               ContractError);
  EXPECT_THROW(render_input({}, {"a; b"}, ControlCode::kIntrinsic, "x"),
               ContractError);
  EXPECT_THROW(render_input({""}, {}, ControlCode::kIntrinsic, "x"),
               ContractError);
}

TEST(PerturbTest, ParseInputErrors) {
  EXPECT_THROW(parse_input("Preds: a; Arguments: ; Code: intrinsic; Summary: x"),
               ParseError);
  EXPECT_THROW(parse_input("Predicates: a; Code: intrinsic; Summary: x"),
               ParseError);
  EXPECT_THROW(parse_input("Predicates: a; Arguments: ; Code: both; Summary: x"),
               ParseError);
}

TEST(PerturbTest, RenderParseRoundTripRandom) {
  Rng rng(8);
  auto word = [&] {
    static constexpr const char *kPieces[] = {"fraud", "a,b", "x;", "plead",
                                              "to", "<span_3>", ":", "Code"};
    std::string w;
    int parts = 1 + static_cast<int>(rng.uniform_index(3));
    for (int i = 0; i < parts; ++i) {
      if (i) w += ' ';
      w += kPieces[rng.uniform_index(8)];
    }
    return w;
  };
  int tested = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    ParsedInput x;
    x.code = rng.bernoulli(0.5) ? ControlCode::kIntrinsic : ControlCode::kExtrinsic;
    for (int i = static_cast<int>(rng.uniform_index(5)); i > 0; --i) {
      x.predicates.push_back(word());
    }
    for (int i = static_cast<int>(rng.uniform_index(5)); i > 0; --i) {
      x.arguments.push_back(word());
    }
    // The summary is the tail of the input and may contain anything.
    x.summary = word() + "; Summary: " + word();
    bool renderable = true;
    for (const auto *l : {&x.predicates, &x.arguments}) {
      for (const auto &item : *l) renderable &= is_renderable_item(item);
    }
    if (!renderable) continue;
    std::string input = render_input(x.predicates, x.arguments, x.code, x.summary);
    ASSERT_EQ(parse_input(input), x) << input;
    ++tested;
  }
  EXPECT_GT(tested, 200);
}

SpanItem item(std::string text, std::string root_lemma, bool gold = false) {
  SpanItem i;
  i.surface = text;
  i.text = std::move(text);
  i.root_lemma = std::move(root_lemma);
  i.gold = gold;
  return i;
}

SpanLists judges_document_items() {
  SpanLists doc;
  doc.predicates = {item("catch", "catch"), item("face", "face"),
                    item("appear before", "appear")};
  doc.arguments = {item("Many child", "child"), item("the two judge", "judge"),
                   item("a corruption scandal", "scandal"),
                   item("The U.S. attorney", "attorney")};
  return doc;
}

SpanLists judges_gold_items() {
  SpanLists gold;
  gold.predicates = {item("plead guilty to", "plead", true)};
  gold.arguments = {item("Two Pennsylvania judge", "judge", true),
                    item("federal fraud charge", "charge", true)};
  return gold;
}

std::set<std::string> texts_of(const std::vector<SpanItem> &items) {
  std::set<std::string> out;
  for (const auto &i : items) out.insert(i.text);
  return out;
}

TEST(PerturbTest, AssembleTrainIntrinsicKeepsGold) {
  Rng rng(1);
  SpanLists lists = assemble_lists(judges_document_items(), judges_gold_items(),
                                   Mode::kTrain, ControlCode::kIntrinsic, rng);
  EXPECT_TRUE(texts_of(lists.predicates).count("plead guilty to"));
  EXPECT_TRUE(texts_of(lists.arguments).count("Two Pennsylvania judge"));
  EXPECT_EQ(lists.predicates.size(), 4u);
  EXPECT_EQ(lists.arguments.size(), 6u);
}

TEST(PerturbTest, AssembleTestRemovesGoldAndSharedRoots) {
  for (ControlCode code : {ControlCode::kIntrinsic, ControlCode::kExtrinsic}) {
    Rng rng(1);
    SpanLists lists = assemble_lists(judges_document_items(), judges_gold_items(),
                                     Mode::kTest, code, rng);
    auto args = texts_of(lists.arguments);
    EXPECT_FALSE(texts_of(lists.predicates).count("plead guilty to"));
    EXPECT_FALSE(args.count("Two Pennsylvania judge"));
    EXPECT_FALSE(args.count("the two judge"));  // shares root "judge"
    EXPECT_TRUE(args.count("Many child"));
    EXPECT_EQ(lists.predicates.size(), 3u);
    EXPECT_EQ(lists.arguments.size(), 3u);
  }
}

TEST(PerturbTest, AssembleTrainExtrinsicRemovesGold) {
  Rng rng(1);
  SpanLists lists = assemble_lists(judges_document_items(), judges_gold_items(),
                                   Mode::kTrain, ControlCode::kExtrinsic, rng);
  EXPECT_FALSE(texts_of(lists.predicates).count("plead guilty to"));
  EXPECT_EQ(lists.arguments.size(), 3u);
}

TEST(PerturbTest, AssembleDeduplicatesCaseInsensitively) {
  SpanLists doc;
  doc.arguments = {item("The Queen of England", "queen"), item("the palace", "palace")};
  SpanLists gold;
  gold.arguments = {item("The queen", "Queen", true)};
  gold.arguments[0].root_lemma = "queen";
  Rng rng(1);
  SpanLists lists = assemble_lists(doc, gold, Mode::kTest, ControlCode::kIntrinsic, rng);
  EXPECT_EQ(texts_of(lists.arguments), std::set<std::string>{"the palace"});
}

TEST(PerturbTest, AssembleDropsUnrenderableItems) {
  SpanLists doc;
  doc.arguments = {item("apples, pears", "apple"), item("pears", "pear")};
  QualityReport report;
  Rng rng(1);
  SpanLists lists = assemble_lists(doc, SpanLists{}, Mode::kTest,
                                   ControlCode::kExtrinsic, rng, &report);
  EXPECT_EQ(texts_of(lists.arguments), std::set<std::string>{"pears"});
  EXPECT_EQ(report.unrenderable_spans, 1u);
}

TEST(PerturbTest, AssembleShuffleIsDeterministic) {
  Rng a = derive_rng(11, "d1", 0, stage_tag::kAssemble);
  Rng b = derive_rng(11, "d1", 0, stage_tag::kAssemble);
  auto first = assemble_lists(judges_document_items(), judges_gold_items(),
                              Mode::kTrain, ControlCode::kIntrinsic, a);
  auto second = assemble_lists(judges_document_items(), judges_gold_items(),
                               Mode::kTrain, ControlCode::kIntrinsic, b);
  EXPECT_EQ(first.predicates, second.predicates);
  EXPECT_EQ(first.arguments, second.arguments);
}

TEST(PerturbTest, MakeExampleTrainGolden) {
  FormatResult r = make_example(judges_unit(), Mode::kTrain, FormatOptions{});
  ASSERT_TRUE(r.ok());
  const FormattedExample &e = r.example();
  EXPECT_EQ(e.target_text, judges_unit().summary.text);
  EXPECT_EQ(e.input_text, render_input(e.predicates, e.arguments, e.code,
                                       e.masked_summary.text));
  EXPECT_EQ(testing::check_golden("format_d1_0_train_seed11.json",
                                  e.to_json().dump(2) + "\n"),
            "");
}

TEST(PerturbTest, MakeExampleIntrinsicTrainShowsGoldSpans) {
  FormatOptions options;
  options.force_code = ControlCode::kIntrinsic;
  FormatResult r = make_example(judges_unit(), Mode::kTrain, options);
  ASSERT_TRUE(r.ok());
  const FormattedExample &e = r.example();
  ParsedInput parsed = parse_input(e.input_text);
  EXPECT_EQ(parsed.code, ControlCode::kIntrinsic);
  EXPECT_EQ(parsed.predicates, e.predicates);
  // Gold predicate (possibly reduced) and lemmatized gold subject.
  for (const SpanItem &g : e.gold.predicates) {
    EXPECT_NE(std::find(e.predicates.begin(), e.predicates.end(), g.text),
              e.predicates.end());
  }
  EXPECT_NE(std::find(e.arguments.begin(), e.arguments.end(),
                      "Two Pennsylvania judge"),
            e.arguments.end());
}

TEST(PerturbTest, MakeExampleTestModeHasNoTarget) {
  for (const auto &unit : testing::fixture_corpus().units) {
    for (ControlCode code : {ControlCode::kIntrinsic, ControlCode::kExtrinsic}) {
      FormatOptions options;
      options.force_code = code;
      FormatResult r = make_example(unit, Mode::kTest, options);
      if (!r.ok()) continue;
      const FormattedExample &e = r.example();
      EXPECT_FALSE(e.target_text.has_value());
      EXPECT_TRUE(e.to_json()["target"].is_null());
      std::set<std::string> gold_roots;
      for (const auto *l : {&e.gold.predicates, &e.gold.arguments}) {
        for (const SpanItem &g : *l) {
          gold_roots.insert(g.root_lemma);
          for (const auto *list : {&e.predicates, &e.arguments}) {
            EXPECT_EQ(std::count(list->begin(), list->end(), g.text), 0)
                << unit.doc_id << " " << g.text;
            EXPECT_EQ(std::count(list->begin(), list->end(), g.surface), 0);
          }
        }
      }
      for (const auto *l : {&e.items.predicates, &e.items.arguments}) {
        for (const SpanItem &i : *l) {
          EXPECT_FALSE(i.gold);
          EXPECT_FALSE(gold_roots.count(i.root_lemma)) << i.text;
        }
      }
    }
  }
}

TEST(PerturbTest, MakeExampleSkipsVerblessSummary) {
  FormatResult r =
      make_example(testing::fixture_corpus().units[4], Mode::kTrain, FormatOptions{});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.skip().reason, skip_reason::kNoGoldFrame);
}

TEST(PerturbTest, ConservationOverSplit) {
  const auto &units = testing::fixture_corpus().units;
  std::size_t train = 0, test = 0, skipped = 0;
  for (const auto &unit : units) {
    FormatResult r = make_example(unit, split_mode(11, unit, 0.6), FormatOptions{});
    if (!r.ok()) {
      ++skipped;
    } else if (r.example().mode == Mode::kTrain) {
      ++train;
    } else {
      ++test;
    }
  }
  EXPECT_EQ(train + test + skipped, units.size());
  EXPECT_EQ(skipped, 1u);
}

TEST(PerturbTest, SplitFraction) {
  Rng gen(4);
  std::size_t train = 0;
  constexpr int kUnits = 10000;
  for (int i = 0; i < kUnits; ++i) {
    DocSummaryUnit unit;
    unit.doc_id = "doc" + std::to_string(i);
    if (split_mode(11, unit, 0.6) == Mode::kTrain) ++train;
  }
  EXPECT_NEAR(static_cast<double>(train) / kUnits, 0.6, 0.02);
  DocSummaryUnit unit;
  unit.doc_id = "x";
  EXPECT_EQ(split_mode(11, unit, 0.0), Mode::kTest);
  EXPECT_EQ(split_mode(11, unit, 1.0), Mode::kTrain);
}

TEST(PerturbTest, MakeExampleDeterministic) {
  Rng gen(17);
  for (int i = 0; i < 50; ++i) {
    DocSummaryUnit unit = testing::random_unit(gen, "u" + std::to_string(i), 6, 3, 15);
    for (Mode mode : {Mode::kTrain, Mode::kTest}) {
      FormatResult a = make_example(unit, mode, FormatOptions{});
      FormatResult b = make_example(unit, mode, FormatOptions{});
      ASSERT_EQ(a.ok(), b.ok());
      if (a.ok()) {
        EXPECT_EQ(a.example().to_json(), b.example().to_json());
      }
    }
  }
}

}  // namespace
}  // namespace falsesum
