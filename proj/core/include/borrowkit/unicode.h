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
// Minimal Unicode support for Spanish/English text: UTF-8 codec, character
// classes used by the tokenizer, and case mapping over the Latin ranges
// (ASCII, Latin-1 Supplement, Latin Extended-A). Codepoints outside those
// ranges are passed through unchanged. Folding handles the one-to-many
// special cases that matter here (ß and ẞ fold to "ss", ſ folds to "s").

#ifndef BORROWKIT_UNICODE_H_
#define BORROWKIT_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace borrowkit {
namespace uni {

// Decodes UTF-8 into codepoints. Invalid sequences decode to U+FFFD, one
// replacement per offending byte. If byte_offsets is non-null it receives
// the byte offset of each codepoint plus a final sentinel equal to the
// input size, so byte_offsets->size() == cps->size() + 1.
void decode_utf8(std::string_view text, std::u32string* cps,
                 std::vector<std::size_t>* byte_offsets = nullptr);
std::u32string decode_utf8(std::string_view text);

void append_utf8(std::string* out, char32_t cp);
std::string encode_utf8(std::u32string_view cps);

// Character classes. The quote set and the splitting punctuation set are
// fixed; see tokenize() in text.h for how they interact.
bool is_space(char32_t cp);
bool is_quote(char32_t cp);        // " ' “ ” ‘ ’ « »
bool is_splitter(char32_t cp);     // , ; : ! ? ¿ ¡ ( ) [ ] — (unconditional)
bool is_conditional(char32_t cp);  // . ' ’ : split unless flanked by word chars
bool is_word_char(char32_t cp);    // anything not space/quote/splitter/cond.
bool is_digit(char32_t cp);
bool is_letter(char32_t cp);       // Latin ranges only
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
bool is_cased(char32_t cp);

// 1:1 case maps; codepoints without a mapping are returned unchanged.
char32_t simple_lower(char32_t cp);
char32_t simple_upper(char32_t cp);

// Full maps, appending one or more codepoints (ß uppercases to "SS").
void fold_append(char32_t cp, std::u32string* out);
void upper_append(char32_t cp, std::u32string* out);

// Whole-string conversions over UTF-8.
std::string casefold(std::string_view text);
std::string to_lower(std::string_view text);
std::string to_upper(std::string_view text);

// Maps accented Latin vowels to their base letter (á → a); everything else
// unchanged. Used for final-letter phonotactics, not for matching.
char32_t strip_accent(char32_t cp);

}  // namespace uni
}  // namespace borrowkit

#endif  // BORROWKIT_UNICODE_H_
