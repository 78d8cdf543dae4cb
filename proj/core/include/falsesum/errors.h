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

#ifndef FALSESUM_ERRORS_H_
#define FALSESUM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace falsesum {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (CoNLL-U, JSON Lines). Carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a structural invariant (e.g. a cyclic
// dependency tree).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A caller broke an interface contract: wrong mode in a batch, orphan
// generation records, undefined metric input.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Bad command-line or configuration values.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Indicates a bug upstream of the failing call (e.g. span indices outside
// their sentence).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace falsesum

#endif  // FALSESUM_ERRORS_H_
