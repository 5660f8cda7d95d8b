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

#include "borrowkit/text.h"

#include <utility>

namespace borrowkit {

namespace {

// A conditional character (period, apostrophe) stays word-internal only
// when flanked by word characters on both sides.
bool splits_here(const std::u32string& cps, std::size_t i) {
  const char32_t cp = cps[i];
  if (uni::is_quote(cp) || uni::is_splitter(cp)) {
    if (!uni::is_conditional(cp)) return true;
  }
  if (uni::is_conditional(cp)) {
    const bool left = i > 0 && uni::is_word_char(cps[i - 1]);
    const bool right = i + 1 < cps.size() && uni::is_word_char(cps[i + 1]);
    return !(left && right);
  }
  return false;
}

std::vector<Token> tokenize_cps(const std::u32string& cps) {
  std::vector<Token> tokens;
  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    if (uni::is_space(cps[i])) {
      i++;
      continue;
    }
    std::size_t start = i;
    if (splits_here(cps, i)) {
      i++;
    } else {
      while (i < n && !uni::is_space(cps[i]) && !splits_here(cps, i)) i++;
    }
    Token tok;
    tok.surface = uni::encode_utf8(
        std::u32string_view(cps).substr(start, i - start));
    tok.start = start;
    tok.end = i;
    tok.index = tokens.size();
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

}  // namespace

std::vector<Token> tokenize(const std::string& text) {
  return tokenize_cps(uni::decode_utf8(text));
}

std::string normalize_span(const std::string& raw) {
  std::u32string cps = uni::decode_utf8(raw);
  // Strip quotes and whitespace from both ends until stable, so that
  // mixed shells like  " 'smart' "  reduce completely.
  std::size_t lo = 0;
  std::size_t hi = cps.size();
  while (lo < hi &&
         (uni::is_space(cps[lo]) || uni::is_quote(cps[lo]))) {
    lo++;
  }
  while (hi > lo &&
         (uni::is_space(cps[hi - 1]) || uni::is_quote(cps[hi - 1]))) {
    hi--;
  }
  std::u32string folded;
  folded.reserve(hi - lo);
  bool pending_space = false;
  for (std::size_t i = lo; i < hi; i++) {
    if (uni::is_space(cps[i])) {
      pending_space = true;
      continue;
    }
    if (pending_space) {
      folded.push_back(' ');
      pending_space = false;
    }
    uni::fold_append(cps[i], &folded);
  }
  if (folded.empty()) throw EmptySpanError(raw);
  return uni::encode_utf8(folded);
}

Sentence::Sentence(std::string id, std::string text)
    : id_(std::move(id)), text_(std::move(text)) {
  uni::decode_utf8(text_, &chars_, &char_to_byte_);
  tokens_ = tokenize_cps(chars_);
  folded_.reserve(tokens_.size());
  for (const Token& tok : tokens_) folded_.push_back(uni::casefold(tok.surface));
}

std::string Sentence::slice(CharRange range) const {
  const std::size_t b0 = char_to_byte_[range.start];
  const std::size_t b1 = char_to_byte_[range.end];
  return text_.substr(b0, b1 - b0);
}

bool Sentence::is_quote_token(std::size_t index) const {
  const Token& tok = tokens_[index];
  return tok.end - tok.start == 1 && uni::is_quote(chars_[tok.start]);
}

bool Sentence::is_word_token(std::size_t index) const {
  const Token& tok = tokens_[index];
  for (std::size_t i = tok.start; i < tok.end; i++) {
    if (uni::is_word_char(chars_[i])) return true;
  }
  return false;
}

const std::string& Sentence::folded_token(std::size_t index) const {
  return folded_[index];
}

CharRange Sentence::token_chars(TokenSpan span) const {
  return CharRange{tokens_[span.first].start, tokens_[span.last].end};
}

std::vector<TokenSpan> locate_span_tokens(const Sentence& sentence,
                                          const std::string& span) {
  const std::string normalized = normalize_span(span);
  std::vector<std::string> query;
  for (const Token& tok : tokenize(normalized)) {
    std::u32string cps = uni::decode_utf8(tok.surface);
    if (cps.size() == 1 && uni::is_quote(cps[0])) continue;
    query.push_back(tok.surface);
  }
  std::vector<TokenSpan> found;
  if (query.empty()) return found;

  const std::size_t n = sentence.num_tokens();
  for (std::size_t i = 0; i < n; i++) {
    if (sentence.is_quote_token(i)) continue;
    std::size_t j = i;
    std::size_t last = i;
    bool ok = true;
    for (std::size_t k = 0; k < query.size(); k++) {
      if (k > 0) {
        while (j < n && sentence.is_quote_token(j)) j++;
      }
      if (j >= n || sentence.folded_token(j) != query[k]) {
        ok = false;
        break;
      }
      last = j;
      j++;
    }
    if (ok) found.push_back(TokenSpan{i, last});
  }
  return found;
}

std::vector<CharRange> locate_span(const Sentence& sentence,
                                   const std::string& span) {
  std::vector<CharRange> ranges;
  for (TokenSpan ts : locate_span_tokens(sentence, span)) {
    ranges.push_back(sentence.token_chars(ts));
  }
  return ranges;
}

std::vector<std::size_t> covered_tokens(const Sentence& sentence,
                                        TokenSpan span) {
  std::vector<std::size_t> covered;
  for (std::size_t t = span.first; t <= span.last; t++) {
    if (!sentence.is_quote_token(t)) covered.push_back(t);
  }
  return covered;
}

bool spans_adjacent(const Sentence& sentence, TokenSpan a, TokenSpan b) {
  if (b.first <= a.last) return false;
  for (std::size_t t = a.last + 1; t < b.first; t++) {
    if (!sentence.is_quote_token(t)) return false;
  }
  return true;
}

}  // namespace borrowkit
