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

#ifndef FALSESUM_JSONL_H_
#define FALSESUM_JSONL_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace falsesum {

using Json = nlohmann::ordered_json;

// Calls `visit` for every non-blank line of a JSON Lines file with the parsed
// object and its 1-based line number. Throws UsageError if the file cannot be
// opened and ParseError on invalid JSON.
void read_jsonl(const std::filesystem::path &path,
                const std::function<void(const Json &, std::size_t)> &visit);

// Parses JSON Lines held in memory.
void read_jsonl_string(std::string_view text,
                       const std::function<void(const Json &, std::size_t)> &visit);

// Writes one compact JSON object per line.
class JsonlWriter {
 public:
  explicit JsonlWriter(const std::filesystem::path &path);

  void write(const Json &record);
  std::size_t count() const { return count_; }
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t count_ = 0;
};

// Serialization used for every JSON Lines output line.
std::string dump_line(const Json &record);

// Typed field access with a ParseError that names the field and line.
const Json &require_field(const Json &record, std::string_view key,
                          std::size_t line);
std::string require_string(const Json &record, std::string_view key,
                           std::size_t line);
std::int64_t require_int(const Json &record, std::string_view key,
                         std::size_t line);

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path &path);
std::string sha256_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path &path);

}  // namespace falsesum

#endif  // FALSESUM_JSONL_H_
