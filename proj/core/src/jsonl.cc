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

#include "falsesum/jsonl.h"

#include <openssl/evp.h>

#include <array>
#include <sstream>

#include "falsesum/errors.h"

namespace falsesum {
namespace {

void visit_lines(std::istream &in,
                 const std::function<void(const Json &, std::size_t)> &visit) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!record.is_object()) {
      throw ParseError("expected a JSON object", line_no);
    }
    visit(record, line_no);
  }
}

std::string to_hex(const unsigned char *data, std::size_t size) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(size * 2);
  for (std::size_t i = 0; i < size; ++i) {
    hex.push_back(kDigits[data[i] >> 4]);
    hex.push_back(kDigits[data[i] & 0xf]);
  }
  return hex;
}

}  // namespace

void read_jsonl(const std::filesystem::path &path,
                const std::function<void(const Json &, std::size_t)> &visit) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file: " + path.string());
  try {
    visit_lines(in, visit);
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

void read_jsonl_string(
    std::string_view text,
    const std::function<void(const Json &, std::size_t)> &visit) {
  std::istringstream in{std::string(text)};
  visit_lines(in, visit);
}

JsonlWriter::JsonlWriter(const std::filesystem::path &path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw UsageError("cannot open output file: " + path.string());
}

void JsonlWriter::write(const Json &record) {
  out_ << dump_line(record) << '\n';
  ++count_;
}

void JsonlWriter::close() {
  out_.close();
  if (out_.fail()) throw Error("failed writing " + path_.string());
}

std::string dump_line(const Json &record) {
  return record.dump(-1, ' ', false, Json::error_handler_t::strict);
}

const Json &require_field(const Json &record, std::string_view key,
                          std::size_t line) {
  auto it = record.find(std::string(key));
  if (it == record.end()) {
    throw ParseError("missing field \"" + std::string(key) + "\"", line);
  }
  return *it;
}

std::string require_string(const Json &record, std::string_view key,
                           std::size_t line) {
  const Json &v = require_field(record, key, line);
  if (!v.is_string()) {
    throw ParseError("field \"" + std::string(key) + "\" must be a string",
                     line);
  }
  return v.get<std::string>();
}

std::int64_t require_int(const Json &record, std::string_view key,
                         std::size_t line) {
  const Json &v = require_field(record, key, line);
  if (!v.is_number_integer()) {
    throw ParseError("field \"" + std::string(key) + "\" must be an integer",
                     line);
  }
  return v.get<std::int64_t>();
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int size = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest.data(), &size, EVP_sha256(),
             nullptr);
  return to_hex(digest.data(), size);
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string sha256_file(const std::filesystem::path &path) {
  return sha256_hex(read_file(path));
}

}  // namespace falsesum
