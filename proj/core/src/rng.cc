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

#include "falsesum/rng.h"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace falsesum {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void mix_bytes(std::uint64_t &h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
}

void mix_u64(std::uint64_t &h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % n + 1) % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v > limit);
  return v % n;
}

double Rng::uniform_real() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> Rng::sample_indices(std::size_t n, std::size_t k) {
  // Partial Fisher-Yates over a sparse permutation.
  std::unordered_map<std::size_t, std::size_t> swapped;
  auto at = [&](std::size_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<std::size_t> picked;
  picked.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + uniform_index(n - i);
    std::size_t vi = at(i), vj = at(j);
    swapped[i] = vj;
    swapped[j] = vi;
    picked.push_back(vj);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::uint64_t stream_key(std::uint64_t seed, std::string_view doc_id,
                         std::uint64_t summary_index, std::string_view tag) {
  std::uint64_t h = kFnvOffset;
  mix_u64(h, seed);
  mix_u64(h, doc_id.size());
  mix_bytes(h, doc_id);
  mix_u64(h, summary_index);
  mix_u64(h, tag.size());
  mix_bytes(h, tag);
  return splitmix64(h);
}

Rng derive_rng(std::uint64_t seed, std::string_view doc_id,
               std::uint64_t summary_index, std::string_view tag) {
  return Rng(stream_key(seed, doc_id, summary_index, tag));
}

double unit_hash_fraction(std::uint64_t seed, std::string_view doc_id,
                          std::uint64_t summary_index, std::string_view tag) {
  return static_cast<double>(stream_key(seed, doc_id, summary_index, tag) >>
                             11) *
         0x1.0p-53;
}

}  // namespace falsesum
