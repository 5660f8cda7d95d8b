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
//
// Deterministic tokenization, span normalization, and span location for
// Spanish sentences. All offsets are codepoint offsets into the sentence
// text; Sentence keeps the codepoint-to-byte map so slices are exact.

#ifndef BORROWKIT_TEXT_H_
#define BORROWKIT_TEXT_H_

#include <cstddef>
#include <string>
#include <vector>

#include "borrowkit/errors.h"
#include "borrowkit/unicode.h"

namespace borrowkit {

// One token of a sentence. [start, end) are codepoint offsets.
struct Token {
  std::string surface;
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t index = 0;
};

// Half-open range of codepoint offsets.
struct CharRange {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const CharRange&) const = default;
};

// Inclusive range of token indices.
struct TokenSpan {
  std::size_t first = 0;
  std::size_t last = 0;

  bool operator==(const TokenSpan&) const = default;
};

// Splits on whitespace; every quote character and every splitting
// punctuation character (. , ; : ! ? ¿ ¡ ( ) [ ] —) becomes a
// single-character token, except that an apostrophe or period flanked on
// both sides by word characters stays inside its word token. So
// "Pepper's" is one token while "Sgt." splits into "Sgt" and ".".
// Tokens are ordered, non-overlapping, and cover all non-gap characters:
// joining surfaces with the skipped inter-token characters reconstructs
// the input exactly.
std::vector<Token> tokenize(const std::string& text);

// Canonical comparison form of a span: leading/trailing quote characters
// and surrounding whitespace are stripped (iterated to a fixpoint), the
// result is casefolded, and internal whitespace runs collapse to a single
// space. Idempotent. Throws EmptySpanError if nothing is left.
std::string normalize_span(const std::string& raw);

// A sentence with a stable id and cached tokenization.
class Sentence {
 public:
  Sentence() = default;
  Sentence(std::string id, std::string text);

  const std::string& id() const { return id_; }
  const std::string& text() const { return text_; }
  const std::vector<Token>& tokens() const { return tokens_; }

  std::size_t num_chars() const { return chars_.size(); }
  std::size_t num_tokens() const { return tokens_.size(); }

  // UTF-8 substring for a codepoint range.
  std::string slice(CharRange range) const;

  bool is_quote_token(std::size_t index) const;
  bool is_word_token(std::size_t index) const;

  // Casefolded token surface, cached.
  const std::string& folded_token(std::size_t index) const;

  CharRange token_chars(TokenSpan span) const;

 private:
  std::string id_;
  std::string text_;
  std::u32string chars_;
  std::vector<std::size_t> char_to_byte_;  // size num_chars() + 1
  std::vector<Token> tokens_;
  std::vector<std::string> folded_;
};

// Every occurrence of the normalized span in the sentence, matched
// casefold-insensitively at token granularity and ordered by start. Quote
// tokens inside a candidate region are transparent: "marketing online"
// matches the tokens of «“Marketing” “Online”». Returned spans begin and
// end on non-quote tokens. Throws EmptySpanError if the span normalizes
// to nothing.
std::vector<TokenSpan> locate_span_tokens(const Sentence& sentence,
                                          const std::string& span);

// Same occurrences as codepoint ranges.
std::vector<CharRange> locate_span(const Sentence& sentence,
                                   const std::string& span);

// Non-quote token indices covered by a located span.
std::vector<std::size_t> covered_tokens(const Sentence& sentence,
                                        TokenSpan span);

// True when b starts after a ends and only quote tokens lie between them.
bool spans_adjacent(const Sentence& sentence, TokenSpan a, TokenSpan b);

}  // namespace borrowkit

#endif  // BORROWKIT_TEXT_H_
