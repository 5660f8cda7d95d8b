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
// Corpus exchange formats.
//
// CSV, semicolon-separated: one record per line, first field the sentence,
// remaining fields the annotated spans. Fields containing ';', '"', or a
// newline are written quoted RFC-4180 style ('"' doubled). On read, a
// field starting with '"' is parsed as a quoted field when the closing
// quote is followed by ';' or end of record; otherwise the field is taken
// literally, so naive lines like  "CASUAL LOOKS" CON BUFANDA;...  survive.
// An unterminated quoted field raises ParseError at its starting line.
//
// BIO: token<TAB>tag lines, blank line between sentences. Tags are O or
// B-X/I-X. A dangling I-X (no preceding B-X/I-X run of the same label) is
// repaired to B-X with a warning. Sentence text reconstructs as the tokens
// joined by single spaces.

#ifndef BORROWKIT_CORPUS_H_
#define BORROWKIT_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "borrowkit/errors.h"
#include "borrowkit/text.h"

namespace borrowkit {

inline constexpr const char* kDefaultLabel = "ENG";

// One annotated span: verbatim surface, label, and, once located, its
// occurrences as codepoint ranges in the sentence.
struct SpanAnnotation {
  std::string surface;
  std::string label = kDefaultLabel;
  std::vector<CharRange> located;
};

struct AnnotatedSentence {
  Sentence sentence;
  std::vector<SpanAnnotation> spans;
};

struct ReadWarning {
  std::size_t line = 0;
  std::string message;
};

// Streaming CSV reader; memory use is bounded by the largest record.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in);

  // Next record, or nullopt at end of input. Throws ParseError.
  std::optional<AnnotatedSentence> next();

  const std::vector<ReadWarning>& warnings() const { return warnings_; }
  std::size_t records_read() const { return records_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t records_ = 0;
  bool checked_bom_ = false;
  std::vector<ReadWarning> warnings_;
};

std::vector<AnnotatedSentence> read_csv(std::istream& in,
                                        std::vector<ReadWarning>* warnings
                                        = nullptr);

// One CSV line for a record, without the trailing newline.
std::string format_csv_record(const AnnotatedSentence& record);
void write_csv(std::ostream& out,
               const std::vector<AnnotatedSentence>& records);

// Span validation policy applied after parsing.
enum class SpanValidation {
  kNone,     // keep everything as read
  kWarn,     // drop empty-normalized spans, warn on unlocatable ones
  kEnforce,  // throw EmptySpanError / UnlocatableSpanError
};

// Locates every span (filling SpanAnnotation::located) under the given
// policy. Gold data should use kEnforce, predictions kWarn.
std::vector<ReadWarning> validate_records(
    std::vector<AnnotatedSentence>* records, SpanValidation policy);
void validate_record(AnnotatedSentence* record, SpanValidation policy,
                     std::vector<ReadWarning>* warnings);

// Streaming BIO reader.
class BioReader {
 public:
  explicit BioReader(std::istream& in);

  // Next sentence, or nullopt at end of input. Throws ParseError /
  // UnknownTagSchemeError.
  std::optional<AnnotatedSentence> next();

  const std::vector<ReadWarning>& warnings() const { return warnings_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t sentences_ = 0;
  bool checked_bom_ = false;
  std::vector<ReadWarning> warnings_;
};

std::vector<AnnotatedSentence> read_bio(std::istream& in,
                                        std::vector<ReadWarning>* warnings
                                        = nullptr);

// (token, tag) rows for a record. Each span is assigned its earliest
// occurrence whose tokens are still untagged; its tokens get B-label /
// I-label. Throws UnlocatableSpanError when a span has no such occurrence.
std::vector<std::pair<std::string, std::string>> spans_to_bio(
    const AnnotatedSentence& record);

// Writes one sentence in BIO form (rows plus a trailing blank line).
void write_bio(std::ostream& out, const AnnotatedSentence& record);

}  // namespace borrowkit

#endif  // BORROWKIT_CORPUS_H_
