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

#include "borrowkit/corpus.h"

#include <istream>
#include <ostream>

#include "borrowkit/unicode.h"

namespace borrowkit {

namespace {

// Reads one physical line, stripping a trailing '\r'. Returns false at
// end of input.
bool get_line(std::istream& in, std::string* line) {
  if (!std::getline(in, *line)) return false;
  if (!line->empty() && line->back() == '\r') line->pop_back();
  return true;
}

void strip_bom(std::string* line) {
  if (line->size() >= 3 && (*line)[0] == '\xEF' && (*line)[1] == '\xBB' &&
      (*line)[2] == '\xBF') {
    line->erase(0, 3);
  }
}

std::string record_id(std::size_t ordinal) {
  return "s" + std::to_string(ordinal);
}

}  // namespace

CsvReader::CsvReader(std::istream& in) : in_(in) {}

std::optional<AnnotatedSentence> CsvReader::next() {
  std::string buf;
  while (true) {
    if (!get_line(in_, &buf)) return std::nullopt;
    line_++;
    if (!checked_bom_) {
      strip_bom(&buf);
      checked_bom_ = true;
    }
    if (!buf.empty()) break;
  }
  const std::size_t first_line = line_;

  std::vector<std::string> fields;
  std::size_t pos = 0;
  bool at_record_end = false;
  while (!at_record_end) {
    std::string field;
    if (pos < buf.size() && buf[pos] == '"') {
      // Quoted-field attempt; fall back to a literal field if the closing
      // quote is not followed by a separator.
      std::string content;
      std::size_t j = pos + 1;
      bool closed = false;
      while (!closed) {
        if (j >= buf.size()) {
          // Quoted fields may span physical lines.
          std::string more;
          if (!get_line(in_, &more)) {
            throw ParseError("unterminated quoted field", first_line);
          }
          line_++;
          buf += '\n';
          buf += more;
        }
        if (buf[j] == '"') {
          if (j + 1 < buf.size() && buf[j + 1] == '"') {
            content += '"';
            j += 2;
          } else {
            closed = true;
          }
        } else {
          content += buf[j];
          j++;
        }
      }
      if (j + 1 >= buf.size() || buf[j + 1] == ';') {
        field = content;
        pos = j + 1;
      } else {
        // Literal field including its quote characters.
        std::size_t end = buf.find(';', pos);
        if (end == std::string::npos) end = buf.size();
        field = buf.substr(pos, end - pos);
        pos = end;
      }
    } else {
      std::size_t end = buf.find(';', pos);
      if (end == std::string::npos) end = buf.size();
      field = buf.substr(pos, end - pos);
      pos = end;
    }
    fields.push_back(std::move(field));
    if (pos >= buf.size()) {
      at_record_end = true;
    } else {
      pos++;  // skip ';'
    }
  }

  records_++;
  AnnotatedSentence record;
  record.sentence = Sentence(record_id(records_), fields[0]);
  for (std::size_t i = 1; i < fields.size(); i++) {
    if (fields[i].empty()) continue;  // tolerate trailing semicolons
    SpanAnnotation span;
    span.surface = fields[i];
    record.spans.push_back(std::move(span));
  }
  return record;
}

std::vector<AnnotatedSentence> read_csv(std::istream& in,
                                        std::vector<ReadWarning>* warnings) {
  CsvReader reader(in);
  std::vector<AnnotatedSentence> records;
  while (auto record = reader.next()) records.push_back(std::move(*record));
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), reader.warnings().begin(),
                     reader.warnings().end());
  }
  return records;
}

namespace {

std::string csv_field(const std::string& value) {
  bool needs_quoting = false;
  for (char c : value) {
    if (c == ';' || c == '"' || c == '\n' || c == '\r') {
      needs_quoting = true;
      break;
    }
  }
  if (!needs_quoting) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string format_csv_record(const AnnotatedSentence& record) {
  std::string line = csv_field(record.sentence.text());
  for (const SpanAnnotation& span : record.spans) {
    line += ';';
    line += csv_field(span.surface);
  }
  return line;
}

void write_csv(std::ostream& out,
               const std::vector<AnnotatedSentence>& records) {
  for (const AnnotatedSentence& record : records) {
    out << format_csv_record(record) << '\n';
  }
}

void validate_record(AnnotatedSentence* record, SpanValidation policy,
                     std::vector<ReadWarning>* warnings) {
  if (policy == SpanValidation::kNone) return;
  std::vector<SpanAnnotation> kept;
  kept.reserve(record->spans.size());
  for (SpanAnnotation& span : record->spans) {
    std::vector<TokenSpan> occurrences;
    try {
      occurrences = locate_span_tokens(record->sentence, span.surface);
    } catch (const EmptySpanError&) {
      if (policy == SpanValidation::kEnforce) throw;
      if (warnings != nullptr) {
        warnings->push_back(
            {0, "sentence " + record->sentence.id() + ": span '" +
                    span.surface + "' is empty after normalization, dropped"});
      }
      continue;
    }
    if (occurrences.empty()) {
      if (policy == SpanValidation::kEnforce) {
        throw UnlocatableSpanError("sentence " + record->sentence.id() +
                                   ": span '" + span.surface +
                                   "' does not occur in the sentence");
      }
      if (warnings != nullptr) {
        warnings->push_back({0, "sentence " + record->sentence.id() +
                                    ": span '" + span.surface +
                                    "' does not occur in the sentence"});
      }
    }
    span.located.clear();
    for (TokenSpan ts : occurrences) {
      span.located.push_back(record->sentence.token_chars(ts));
    }
    kept.push_back(std::move(span));
  }
  record->spans = std::move(kept);
}

std::vector<ReadWarning> validate_records(
    std::vector<AnnotatedSentence>* records, SpanValidation policy) {
  std::vector<ReadWarning> warnings;
  for (AnnotatedSentence& record : *records) {
    validate_record(&record, policy, &warnings);
  }
  return warnings;
}

BioReader::BioReader(std::istream& in) : in_(in) {}

std::optional<AnnotatedSentence> BioReader::next() {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  std::string line;
  bool saw_any = false;
  while (get_line(in_, &line)) {
    line_++;
    if (!checked_bom_) {
      strip_bom(&line);
      checked_bom_ = true;
    }
    if (line.empty()) {
      if (saw_any) break;
      continue;  // leading or repeated blank lines
    }
    saw_any = true;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("expected token<TAB>tag", line_);
    }
    std::string token = line.substr(0, tab);
    std::string tag = line.substr(tab + 1);
    if (token.empty()) throw ParseError("empty token", line_);
    if (tag != "O") {
      if (tag.size() < 3 || (tag[0] != 'B' && tag[0] != 'I') || tag[1] != '-') {
        throw UnknownTagSchemeError("unknown tag '" + tag + "'", line_);
      }
    }
    // Repair a dangling I-X to B-X.
    if (tag[0] == 'I') {
      const std::string label = tag.substr(2);
      bool continues = false;
      if (!tags.empty()) {
        const std::string& prev = tags.back();
        if (prev != "O" && prev.substr(2) == label) continues = true;
      }
      if (!continues) {
        warnings_.push_back({line_, "dangling I-" + label + " repaired to B-" +
                                        label});
        tag = "B-" + label;
      }
    }
    tokens.push_back(std::move(token));
    tags.push_back(std::move(tag));
  }
  if (!saw_any) return std::nullopt;

  // Join tokens with single spaces, tracking codepoint offsets.
  std::string text;
  std::vector<std::size_t> starts(tokens.size());
  std::vector<std::size_t> ends(tokens.size());
  std::size_t offset = 0;
  for (std::size_t i = 0; i < tokens.size(); i++) {
    if (i > 0) {
      text += ' ';
      offset++;
    }
    starts[i] = offset;
    offset += uni::decode_utf8(tokens[i]).size();
    ends[i] = offset;
    text += tokens[i];
  }

  sentences_++;
  AnnotatedSentence record;
  record.sentence = Sentence(record_id(sentences_), text);
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (tags[i][0] != 'B') {
      i++;
      continue;
    }
    const std::string label = tags[i].substr(2);
    std::size_t j = i + 1;
    while (j < tokens.size() && tags[j][0] == 'I' && tags[j].substr(2) == label) {
      j++;
    }
    SpanAnnotation span;
    for (std::size_t k = i; k < j; k++) {
      if (k > i) span.surface += ' ';
      span.surface += tokens[k];
    }
    span.label = label;
    span.located.push_back(CharRange{starts[i], ends[j - 1]});
    record.spans.push_back(std::move(span));
    i = j;
  }
  return record;
}

std::vector<AnnotatedSentence> read_bio(std::istream& in,
                                        std::vector<ReadWarning>* warnings) {
  BioReader reader(in);
  std::vector<AnnotatedSentence> records;
  while (auto record = reader.next()) records.push_back(std::move(*record));
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), reader.warnings().begin(),
                     reader.warnings().end());
  }
  return records;
}

std::vector<std::pair<std::string, std::string>> spans_to_bio(
    const AnnotatedSentence& record) {
  const Sentence& sentence = record.sentence;
  std::vector<std::string> tags(sentence.num_tokens(), "O");
  for (const SpanAnnotation& span : record.spans) {
    const std::vector<TokenSpan> occurrences =
        locate_span_tokens(sentence, span.surface);
    const TokenSpan* chosen = nullptr;
    for (const TokenSpan& ts : occurrences) {
      bool free = true;
      for (std::size_t t = ts.first; t <= ts.last; t++) {
        if (tags[t] != "O") {
          free = false;
          break;
        }
      }
      if (free) {
        chosen = &ts;
        break;
      }
    }
    if (chosen == nullptr) {
      throw UnlocatableSpanError(
          "sentence " + sentence.id() + ": span '" + span.surface +
          "' has no unclaimed occurrence");
    }
    for (std::size_t t = chosen->first; t <= chosen->last; t++) {
      tags[t] = (t == chosen->first ? "B-" : "I-") + span.label;
    }
  }
  std::vector<std::pair<std::string, std::string>> rows;
  rows.reserve(sentence.num_tokens());
  for (std::size_t t = 0; t < sentence.num_tokens(); t++) {
    rows.emplace_back(sentence.tokens()[t].surface, tags[t]);
  }
  return rows;
}

void write_bio(std::ostream& out, const AnnotatedSentence& record) {
  for (const auto& [token, tag] : spans_to_bio(record)) {
    out << token << '\t' << tag << '\n';
  }
  out << '\n';
}

}  // namespace borrowkit
