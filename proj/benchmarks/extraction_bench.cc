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

#include <benchmark/benchmark.h>

#include "falsesum/relations.h"
#include "testing.h"

namespace falsesum {
namespace {

void BM_ExtractTuples(benchmark::State &state) {
  Rng rng(7);
  std::vector<Sentence> sentences;
  for (int i = 0; i < 64; ++i) {
    sentences.push_back(testing::random_sentence(rng, static_cast<int>(state.range(0))));
  }
  std::size_t i = 0, tuples = 0;
  for (auto _ : state) {
    auto out = extract_tuples(sentences[i++ % sentences.size()], SpanOrigin::kDocument);
    tuples += out.size();
    benchmark::DoNotOptimize(out);
  }
  state.counters["tuples/sentence"] =
      benchmark::Counter(static_cast<double>(tuples) / state.iterations());
}
BENCHMARK(BM_ExtractTuples)->Arg(10)->Arg(25)->Arg(60);

void BM_SelectDocumentTuples(benchmark::State &state) {
  Rng rng(8);
  DocSummaryUnit unit = testing::random_unit(
      rng, "bench", static_cast<int>(state.range(0)), 8, 30);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng select = derive_rng(++seed, unit.doc_id, kWholeDocument, "select");
    benchmark::DoNotOptimize(select_document_tuples(*unit.document, select));
  }
}
BENCHMARK(BM_SelectDocumentTuples)->Arg(5)->Arg(15)->Arg(40);

}  // namespace
}  // namespace falsesum
