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

#include <algorithm>
#include <cctype>
#include <set>

#include "falsesum/errors.h"

namespace falsesum {
namespace {

constexpr std::string_view kPredicatesLabel = "Predicates: ";
constexpr std::string_view kArgumentsLabel = "; Arguments: ";
constexpr std::string_view kCodeLabel = "; Code: ";
constexpr std::string_view kSummaryLabel = "; Summary: ";
constexpr std::string_view kItemSeparator = ", ";
constexpr std::string_view kMaskPrefix = "<span_";

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool has_lemma(const Token &t) { return !t.lemma.empty() && t.lemma != "_"; }

std::string join(const std::vector<std::string> &items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> split_items(std::string_view list) {
  std::vector<std::string> items;
  if (list.empty()) return items;
  std::size_t start = 0;
  while (true) {
    std::size_t at = list.find(kItemSeparator, start);
    if (at == std::string_view::npos) {
      items.emplace_back(list.substr(start));
      break;
    }
    items.emplace_back(list.substr(start, at - start));
    start = at + kItemSeparator.size();
  }
  return items;
}

bool is_modifier(const Token &t) {
  std::string_view rel = base_relation(t.deprel);
  return t.upos == "ADJ" || t.upos == "ADV" || rel == "amod" ||
         rel == "advmod" || rel == "acl";
}

SpanItem make_item(const Span &span, const Sentence &sentence,
                   const std::vector<bool> *keep, bool gold,
                   QualityReport *report) {
  SpanItem item;
  item.text = render_span(span, sentence, keep, /*lemmatize=*/true, report);
  item.span = span;
  item.gold = gold;
  const Token &root = sentence.token(span.root);
  item.root_lemma = lowercase(has_lemma(root) ? root.lemma : root.form);
  item.surface = span_text(span, sentence);
  return item;
}

}  // namespace

QualityReport &QualityReport::operator+=(const QualityReport &other) {
  missing_lemmas += other.missing_lemmas;
  reduced_spans += other.reduced_spans;
  unrenderable_spans += other.unrenderable_spans;
  return *this;
}

std::string_view to_string(ControlCode code) {
  return code == ControlCode::kIntrinsic ? "intrinsic" : "extrinsic";
}

std::string_view to_string(Mode mode) {
  return mode == Mode::kTrain ? "train" : "test";
}

ControlCode parse_control_code(std::string_view text) {
  if (text == "intrinsic") return ControlCode::kIntrinsic;
  if (text == "extrinsic") return ControlCode::kExtrinsic;
  throw UsageError("unknown control code \"" + std::string(text) + "\"");
}

Mode parse_mode(std::string_view text) {
  if (text == "train") return Mode::kTrain;
  if (text == "test") return Mode::kTest;
  throw UsageError("unknown mode \"" + std::string(text) + "\"");
}

std::string mask_token(int mask_id) {
  return std::string(kMaskPrefix) + std::to_string(mask_id) + ">";
}

std::string MaskedSummary::reconstruct() const {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t at = text.find(kMaskPrefix, pos);
    if (at == std::string::npos) break;
    std::size_t digits = at + kMaskPrefix.size();
    std::size_t close = text.find('>', digits);
    int id = -1;
    if (close != std::string::npos && close > digits) {
      std::string_view number(text.data() + digits, close - digits);
      if (std::all_of(number.begin(), number.end(),
                      [](char c) { return c >= '0' && c <= '9'; })) {
        id = std::stoi(std::string(number));
      }
    }
    auto entry = std::find_if(mask_map.begin(), mask_map.end(),
                              [&](const MaskEntry &e) { return e.mask_id == id; });
    if (entry == mask_map.end()) {
      out.append(text, pos, digits - pos);
      pos = digits;
      continue;
    }
    out.append(text, pos, at - pos);
    out += entry->gold_text;
    pos = close + 1;
  }
  out.append(text, std::min(pos, text.size()));
  return out;
}

Json FormattedExample::to_json() const {
  Json masks = Json::array();
  for (const MaskEntry &m : masked_summary.mask_map) {
    masks.push_back(Json::array({m.mask_id, m.gold_text}));
  }
  return Json{{"doc_id", doc_id},
              {"summary_index", summary_index},
              {"mode", to_string(mode)},
              {"code", to_string(code)},
              {"input", input_text},
              {"target", target_text ? Json(*target_text) : Json(nullptr)},
              {"mask_map", std::move(masks)}};
}

RelationTuple corrupt_tuple(const RelationTuple &tuple, Rng &rng) {
  RelationTuple out = tuple;
  if (out.arguments.empty()) return out;
  std::size_t drop = rng.uniform_index(out.arguments.size());
  out.arguments.erase(out.arguments.begin() + static_cast<std::ptrdiff_t>(drop));
  return out;
}

std::string render_span(const Span &span, const Sentence &sentence,
                        const std::vector<bool> *keep, bool lemmatize,
                        QualityReport *report) {
  check_span(span, sentence);
  if (keep && keep->size() != static_cast<std::size_t>(span.size())) {
    throw InternalError("keep mask does not match span length");
  }
  std::string text;
  for (int i = span.first; i <= span.last; ++i) {
    if (keep && !(*keep)[i - span.first]) continue;
    const Token &t = sentence.token(i);
    if (!text.empty()) text += ' ';
    if (lemmatize && i == span.root) {
      if (has_lemma(t)) {
        text += t.lemma;
      } else {
        text += t.form;
        if (report) ++report->missing_lemmas;
      }
    } else {
      text += t.form;
    }
  }
  return text;
}

std::string lemmatize_root(const Span &span, const Sentence &sentence,
                           QualityReport *report) {
  return render_span(span, sentence, nullptr, /*lemmatize=*/true, report);
}

std::vector<bool> reduction_mask(const Span &span, const Sentence &sentence) {
  check_span(span, sentence);
  std::vector<bool> keep(span.size(), true);
  for (int i = span.first; i <= span.last; ++i) {
    for (int node = i; span.contains(node) && node != span.root;
         node = sentence.token(node).head) {
      if (is_modifier(sentence.token(node))) {
        keep[i - span.first] = false;
        break;
      }
    }
  }
  return keep;
}

ReducedSpan reduce_span(const Span &span, const Sentence &sentence, Rng &rng) {
  ReducedSpan result;
  result.selected = rng.bernoulli(kReductionRate);
  result.keep = result.selected ? reduction_mask(span, sentence)
                                : std::vector<bool>(span.size(), true);
  result.text = render_span(span, sentence, &result.keep, /*lemmatize=*/false);
  return result;
}

ControlCode choose_code(Rng &rng, std::optional<ControlCode> forced) {
  if (forced) return *forced;
  return rng.bernoulli(kIntrinsicRate) ? ControlCode::kIntrinsic
                                       : ControlCode::kExtrinsic;
}

std::optional<RelationTuple> choose_gold_frame(const Sentence &summary) {
  std::vector<RelationTuple> tuples =
      extract_tuples(summary, SpanOrigin::kSummary);
  if (tuples.empty()) return std::nullopt;
  // extract_tuples orders by predicate position, so the first maximum wins.
  auto best = tuples.begin();
  for (auto it = tuples.begin(); it != tuples.end(); ++it) {
    if (it->arguments.size() > best->arguments.size()) best = it;
  }
  return *best;
}

std::string summary_string(const Sentence &summary) {
  if (!summary.text.empty()) return summary.text;
  std::string text;
  for (const Token &t : summary.tokens) {
    if (!text.empty()) text += ' ';
    text += t.form;
  }
  return text;
}

MaskedSummary mask_summary_subset(const Sentence &summary,
                                  const RelationTuple &frame,
                                  std::uint64_t subset) {
  const std::string text = summary_string(summary);
  auto ranges = align_tokens(summary, text);
  if (!ranges) {
    throw ContractError("summary tokens do not align with the summary text");
  }

  struct Masked {
    Span span;
    int id;
  };
  std::vector<Masked> masked;
  if (subset & 1) masked.push_back({frame.predicate, 0});
  int next_id = 1;
  for (std::size_t i = 0; i < frame.arguments.size(); ++i) {
    if (subset & (std::uint64_t{1} << (i + 1))) {
      masked.push_back({frame.arguments[i], next_id++});
    }
  }
  std::sort(masked.begin(), masked.end(), [](const Masked &a, const Masked &b) {
    return a.span.first < b.span.first;
  });

  MaskedSummary result;
  std::size_t pos = 0;
  for (const Masked &m : masked) {
    check_span(m.span, summary);
    std::size_t begin = (*ranges)[m.span.first - 1].first;
    std::size_t end = (*ranges)[m.span.last - 1].second;
    result.text.append(text, pos, begin - pos);
    result.text += mask_token(m.id);
    result.mask_map.push_back({m.id, m.span, text.substr(begin, end - begin)});
    pos = end;
  }
  result.text.append(text, pos);
  std::sort(result.mask_map.begin(), result.mask_map.end(),
            [](const MaskEntry &a, const MaskEntry &b) {
              return a.mask_id < b.mask_id;
            });
  return result;
}

MaskedSummary mask_summary(const Sentence &summary, const RelationTuple &frame,
                           Rng &rng) {
  const std::size_t slots = frame.arguments.size() + 1;
  if (slots >= 64) throw InternalError("gold frame has too many arguments");
  const std::uint64_t subsets = (std::uint64_t{1} << slots) - 1;
  return mask_summary_subset(summary, frame, 1 + rng.uniform_index(subsets));
}

bool is_renderable_item(std::string_view item) {
  return !item.empty() && item.find(';') == std::string_view::npos &&
         item.find(kItemSeparator) == std::string_view::npos;
}

SpanLists assemble_lists(const SpanLists &document, const SpanLists &gold,
                         Mode mode, ControlCode code, Rng &rng,
                         QualityReport *report) {
  const bool include_gold =
      mode == Mode::kTrain && code == ControlCode::kIntrinsic;

  std::set<std::string> gold_roots;
  std::set<std::string> gold_texts;
  for (const auto *list : {&gold.predicates, &gold.arguments}) {
    for (const SpanItem &g : *list) {
      gold_roots.insert(g.root_lemma);
      gold_texts.insert(lowercase(g.text));
      gold_texts.insert(lowercase(g.surface));
    }
  }

  auto keep_document_item = [&](const SpanItem &item) {
    if (include_gold) return true;
    return !gold_roots.count(item.root_lemma) &&
           !gold_texts.count(lowercase(item.text)) &&
           !gold_texts.count(lowercase(item.surface));
  };

  auto build = [&](const std::vector<SpanItem> &doc_items,
                   const std::vector<SpanItem> &gold_items) {
    std::vector<SpanItem> out;
    std::set<std::string> seen;
    auto add = [&](const SpanItem &item) {
      if (!is_renderable_item(item.text)) {
        if (report) ++report->unrenderable_spans;
        return;
      }
      // Repeated strings add nothing to the list; gold goes first so a
      // repeat of a gold span keeps its gold flag.
      if (seen.insert(lowercase(item.text)).second) out.push_back(item);
    };
    if (include_gold) {
      for (const SpanItem &item : gold_items) add(item);
    }
    for (const SpanItem &item : doc_items) {
      if (keep_document_item(item)) add(item);
    }
    return out;
  };

  SpanLists lists;
  lists.predicates = build(document.predicates, gold.predicates);
  lists.arguments = build(document.arguments, gold.arguments);
  rng.shuffle(lists.predicates);
  rng.shuffle(lists.arguments);
  return lists;
}

std::string render_input(const std::vector<std::string> &predicates,
                         const std::vector<std::string> &arguments,
                         ControlCode code, std::string_view masked_summary) {
  for (const auto *list : {&predicates, &arguments}) {
    for (const std::string &item : *list) {
      if (!is_renderable_item(item)) {
        throw ContractError("list item \"" + item +
                            "\" is empty or contains a separator");
      }
    }
  }
  std::string out(kPredicatesLabel);
  out += join(predicates, kItemSeparator);
  out += kArgumentsLabel;
  out += join(arguments, kItemSeparator);
  out += kCodeLabel;
  out += to_string(code);
  out += kSummaryLabel;
  out += masked_summary;
  return out;
}

ParsedInput parse_input(std::string_view input) {
  if (!input.starts_with(kPredicatesLabel)) {
    throw ParseError("input does not start with \"Predicates: \"", 0);
  }
  std::size_t args_at = input.find(kArgumentsLabel, kPredicatesLabel.size());
  if (args_at == std::string_view::npos) {
    throw ParseError("input has no Arguments section", 0);
  }
  std::size_t args_begin = args_at + kArgumentsLabel.size();
  std::size_t code_at = input.find(kCodeLabel, args_begin);
  if (code_at == std::string_view::npos) {
    throw ParseError("input has no Code section", 0);
  }
  std::size_t code_begin = code_at + kCodeLabel.size();
  std::size_t summary_at = input.find(kSummaryLabel, code_begin);
  if (summary_at == std::string_view::npos) {
    throw ParseError("input has no Summary section", 0);
  }

  ParsedInput parsed;
  parsed.predicates = split_items(input.substr(
      kPredicatesLabel.size(), args_at - kPredicatesLabel.size()));
  parsed.arguments = split_items(input.substr(args_begin, code_at - args_begin));
  std::string_view code = input.substr(code_begin, summary_at - code_begin);
  if (code != "intrinsic" && code != "extrinsic") {
    throw ParseError("unknown control code \"" + std::string(code) + "\"", 0);
  }
  parsed.code = parse_control_code(code);
  parsed.summary = std::string(input.substr(summary_at + kSummaryLabel.size()));
  return parsed;
}

Mode split_mode(std::uint64_t seed, const DocSummaryUnit &unit,
                double train_fraction) {
  return unit_hash_fraction(seed, unit.doc_id,
                            static_cast<std::uint64_t>(unit.summary_index),
                            stage_tag::kSplit) < train_fraction
             ? Mode::kTrain
             : Mode::kTest;
}

FormatResult make_example(const DocSummaryUnit &unit, Mode mode,
                          const FormatOptions &options) {
  FormatResult result;
  QualityReport &quality = result.quality;
  const std::uint64_t seed = options.seed;
  const auto index = static_cast<std::uint64_t>(unit.summary_index);
  const ParsedDocument &document = *unit.document;
  auto skip = [&](std::string_view reason) {
    result.outcome = FormatSkip{unit.doc_id, unit.summary_index,
                                std::string(reason)};
    return result;
  };

  Rng select_rng =
      derive_rng(seed, unit.doc_id, kWholeDocument, stage_tag::kSelect);
  Rng corrupt_rng = derive_rng(seed, unit.doc_id, index, stage_tag::kCorrupt);
  SpanLists document_items;
  for (const RelationTuple &tuple :
       select_document_tuples(document, select_rng)) {
    RelationTuple corrupted = corrupt_tuple(tuple, corrupt_rng);
    const Sentence &sentence =
        document.sentences.at(corrupted.predicate.sent_index);
    document_items.predicates.push_back(
        make_item(corrupted.predicate, sentence, nullptr, false, &quality));
    for (const Span &arg : corrupted.arguments) {
      document_items.arguments.push_back(
          make_item(arg, sentence, nullptr, false, &quality));
    }
  }

  Rng code_rng = derive_rng(seed, unit.doc_id, index, stage_tag::kCode);
  const ControlCode code = choose_code(code_rng, options.force_code);

  std::optional<RelationTuple> frame = choose_gold_frame(unit.summary);
  if (!frame) return skip(skip_reason::kNoGoldFrame);
  if (!unit.summary.text.empty() &&
      !align_tokens(unit.summary, unit.summary.text)) {
    return skip(skip_reason::kTokenAlignment);
  }

  const bool retain_gold = mode == Mode::kTrain && code == ControlCode::kIntrinsic;
  Rng reduce_rng = derive_rng(seed, unit.doc_id, index, stage_tag::kReduce);
  auto gold_item = [&](const Span &span) {
    if (!retain_gold) {
      return make_item(span, unit.summary, nullptr, true, &quality);
    }
    ReducedSpan reduced = reduce_span(span, unit.summary, reduce_rng);
    if (reduced.selected) ++quality.reduced_spans;
    return make_item(span, unit.summary, &reduced.keep, true, &quality);
  };
  SpanLists gold;
  gold.predicates.push_back(gold_item(frame->predicate));
  for (const Span &arg : frame->arguments) gold.arguments.push_back(gold_item(arg));

  Rng mask_rng = derive_rng(seed, unit.doc_id, index, stage_tag::kMask);
  MaskedSummary masked = mask_summary(unit.summary, *frame, mask_rng);

  Rng assemble_rng = derive_rng(seed, unit.doc_id, index, stage_tag::kAssemble);
  SpanLists lists =
      assemble_lists(document_items, gold, mode, code, assemble_rng, &quality);
  if (lists.predicates.empty() && lists.arguments.empty()) {
    return skip(skip_reason::kEmptySpanLists);
  }

  FormattedExample example;
  example.doc_id = unit.doc_id;
  example.summary_index = unit.summary_index;
  example.mode = mode;
  example.code = code;
  for (const SpanItem &p : lists.predicates) example.predicates.push_back(p.text);
  for (const SpanItem &a : lists.arguments) example.arguments.push_back(a.text);
  example.input_text =
      render_input(example.predicates, example.arguments, code, masked.text);
  if (mode == Mode::kTrain) example.target_text = summary_string(unit.summary);
  example.masked_summary = std::move(masked);
  example.items = std::move(lists);
  example.gold = std::move(gold);
  result.outcome = std::move(example);
  return result;
}

}  // namespace falsesum
