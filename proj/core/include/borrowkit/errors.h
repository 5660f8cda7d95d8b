// Copyright 2025 The Borrowkit Authors
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

#ifndef BORROWKIT_ERRORS_H_
#define BORROWKIT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace borrowkit {

// Base class for all borrowkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A malformed input line in a text format (CSV, BIO, gazetteer, model file).
// Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(message + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  explicit ParseError(const std::string& message) : Error(message) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// A token tag outside the supported BIO scheme (O, B-X, I-X).
class UnknownTagSchemeError : public ParseError {
 public:
  using ParseError::ParseError;
};

// A span whose normalized form is the empty string.
class EmptySpanError : public Error {
 public:
  EmptySpanError() : Error("span is empty after normalization") {}
  explicit EmptySpanError(const std::string& raw)
      : Error("span '" + raw + "' is empty after normalization") {}
};

// A span that has no occurrence in its sentence.
class UnlocatableSpanError : public Error {
 public:
  using Error::Error;
};

// A training set with fewer than two classes.
class DegenerateDatasetError : public Error {
 public:
  using Error::Error;
};

// Gold and prediction corpora of different lengths.
class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace borrowkit

#endif  // BORROWKIT_ERRORS_H_
