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

#ifndef FALSESUM_RNG_H_
#define FALSESUM_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace falsesum {

// Summary index used for streams that belong to a whole document or a whole
// dataset rather than to one summary sentence.
inline constexpr std::uint64_t kWholeDocument = ~std::uint64_t{0};

// Deterministic random stream. All bounded draws are implemented here rather
// than through <random> distributions, whose output differs between standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform_real();

  bool bernoulli(double p) { return uniform_real() < p; }

  template <typename T>
  void shuffle(std::vector<T> &items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  // k distinct indices from [0, n), returned in increasing order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// 64-bit hash of (seed, doc_id, summary_index, tag). Stable across platforms.
std::uint64_t stream_key(std::uint64_t seed, std::string_view doc_id,
                         std::uint64_t summary_index, std::string_view tag);

// Independent stream per (unit, stage). Distinct tags give distinct keys, so
// streams never share state.
Rng derive_rng(std::uint64_t seed, std::string_view doc_id,
               std::uint64_t summary_index, std::string_view tag);

// Maps stream_key to [0, 1); used for hash-based splitting.
double unit_hash_fraction(std::uint64_t seed, std::string_view doc_id,
                          std::uint64_t summary_index, std::string_view tag);

}  // namespace falsesum

#endif  // FALSESUM_RNG_H_
