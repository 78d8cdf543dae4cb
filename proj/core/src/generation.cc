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

#include "falsesum/generation.h"

#include <algorithm>
#include <map>

#include "falsesum/errors.h"
#include "falsesum/jsonl.h"

namespace falsesum {
namespace {

constexpr std::string_view kMaskPrefix = "<span_";

bool has_residual_mask(std::string_view text) {
  return text.find(kMaskPrefix) != std::string_view::npos;
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

// Placeholder ids in order of appearance.
struct Placeholder {
  std::size_t begin;
  std::size_t end;
  int id;
};

std::vector<Placeholder> find_placeholders(std::string_view text) {
  std::vector<Placeholder> found;
  std::size_t pos = 0;
  while ((pos = text.find(kMaskPrefix, pos)) != std::string_view::npos) {
    std::size_t digits = pos + kMaskPrefix.size();
    std::size_t end = digits;
    while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
    if (end > digits && end < text.size() && text[end] == '>') {
      found.push_back(
          {pos, end + 1, std::stoi(std::string(text.substr(digits, end - digits)))});
      pos = end + 1;
    } else {
      pos = digits;
    }
  }
  return found;
}

}  // namespace

Json GenerationRequest::to_json() const {
  return Json{{"doc_id", doc_id},
              {"summary_index", summary_index},
              {"code", to_string(code)},
              {"input", input}};
}

Json GenerationRecord::to_json() const {
  return Json{{"doc_id", doc_id},
              {"summary_index", summary_index},
              {"code", to_string(code)},
              {"generated", generated}};
}

GenerationRequest to_request(const FormattedExample &example) {
  return {example.doc_id, example.summary_index, example.code,
          example.input_text};
}

std::size_t write_generation_batch(const std::vector<FormattedExample> &examples,
                                   const std::filesystem::path &path) {
  for (const FormattedExample &e : examples) {
    if (e.mode != Mode::kTest) {
      throw ContractError("generation batch received a train-mode example (" +
                          e.doc_id + ", " + std::to_string(e.summary_index) +
                          ")");
    }
  }
  JsonlWriter writer(path);
  for (const FormattedExample &e : examples) writer.write(to_request(e).to_json());
  writer.close();
  return writer.count();
}

std::vector<GenerationRequest> read_generation_batch(
    const std::filesystem::path &path) {
  std::vector<GenerationRequest> requests;
  read_jsonl(path, [&](const Json &record, std::size_t line) {
    GenerationRequest r;
    r.doc_id = require_string(record, "doc_id", line);
    r.summary_index = static_cast<int>(require_int(record, "summary_index", line));
    r.code = parse_control_code(require_string(record, "code", line));
    r.input = require_string(record, "input", line);
    requests.push_back(std::move(r));
  });
  return requests;
}

GenerationOutput read_generation_output(
    const std::filesystem::path &path,
    const std::optional<std::set<std::string>> &known) {
  GenerationOutput output;
  read_jsonl(path, [&](const Json &record, std::size_t line) {
    GenerationRecord r;
    r.doc_id = require_string(record, "doc_id", line);
    r.summary_index = static_cast<int>(require_int(record, "summary_index", line));
    r.code = parse_control_code(require_string(record, "code", line));
    r.generated = require_string(record, "generated", line);
    auto reject = [&](std::string reason) {
      output.rejected.push_back({line, r.doc_id, r.summary_index, std::move(reason)});
    };
    if (is_blank(r.generated)) {
      reject("empty");
    } else if (has_residual_mask(r.generated)) {
      reject("residual_mask");
    } else if (known && !known->count(r.doc_id)) {
      reject("unknown_doc_id");
    } else {
      output.accepted.push_back(std::move(r));
    }
  });
  return output;
}

GenerationRecord mock_generate(const GenerationRequest &request, Rng &rng) {
  ParsedInput parsed = parse_input(request.input);
  std::vector<Placeholder> holes = find_placeholders(parsed.summary);

  const auto &predicates = parsed.predicates;
  const auto &arguments = parsed.arguments;
  if (!holes.empty() && predicates.empty() && arguments.empty()) {
    throw ContractError("mock generator has no spans to fill for (" +
                        request.doc_id + ", " +
                        std::to_string(request.summary_index) + ")");
  }

  std::map<int, std::string> fills;
  std::vector<int> argument_ids;
  for (const Placeholder &h : holes) {
    if (h.id == 0) {
      if (!fills.count(0)) {
        const auto &pool = predicates.empty() ? arguments : predicates;
        fills[0] = pool[rng.uniform_index(pool.size())];
      }
    } else if (std::find(argument_ids.begin(), argument_ids.end(), h.id) ==
               argument_ids.end()) {
      argument_ids.push_back(h.id);
    }
  }
  std::sort(argument_ids.begin(), argument_ids.end());
  if (!argument_ids.empty()) {
    const auto &pool = arguments.empty() ? predicates : arguments;
    if (pool.size() >= argument_ids.size()) {
      std::vector<std::size_t> order(pool.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      rng.shuffle(order);
      for (std::size_t k = 0; k < argument_ids.size(); ++k) {
        fills[argument_ids[k]] = pool[order[k]];
      }
    } else {
      for (int id : argument_ids) fills[id] = pool[rng.uniform_index(pool.size())];
    }
  }

  std::string generated;
  std::size_t pos = 0;
  for (const Placeholder &h : holes) {
    generated.append(parsed.summary, pos, h.begin - pos);
    generated += fills.at(h.id);
    pos = h.end;
  }
  generated.append(parsed.summary, pos);
  return {request.doc_id, request.summary_index, request.code,
          std::move(generated)};
}

GenerationRecord mock_generate(const FormattedExample &example, Rng &rng) {
  if (example.mode != Mode::kTest) {
    throw ContractError("mock generator expects test-mode examples");
  }
  return mock_generate(to_request(example), rng);
}

}  // namespace falsesum
