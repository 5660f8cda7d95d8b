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
// Gazetteer-driven detection. Matching is casefold-insensitive,
// token-contiguous, longest-first: at each position the longest entry
// (capped at max_phrase_tokens) fires and the scan continues past it, so
// with unconditional entries the output is the leftmost-longest
// non-overlapping cover. Exclusion phrases beat entries: a match lying
// wholly inside an exclusion occurrence never fires. Ambiguous entries
// fire only in a supporting context: enclosed in quote tokens, adjacent
// to a non-ambiguous fired match (ignoring intervening quote tokens), or
// capitalized mid-sentence while the sentence itself is neither all-caps
// nor title-cased. Context resolution is two-pass: non-ambiguous entries
// fire first, then ambiguous candidates are scanned over the remaining
// tokens against that context.

#ifndef BORROWKIT_RULES_H_
#define BORROWKIT_RULES_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "borrowkit/corpus.h"

namespace borrowkit {

struct RuleConfig {
  bool require_context_for_ambiguous = true;
  bool use_exclusions = true;
  std::size_t max_phrase_tokens = 5;
  // Individual context triggers, for ablation.
  bool trigger_quotes = true;
  bool trigger_adjacency = true;
  bool trigger_capitalization = true;
};

class Gazetteer {
 public:
  // Adds an entry phrase; duplicate phrases merge, an entry is ambiguous
  // if any duplicate was flagged. Throws EmptySpanError for phrases that
  // normalize to nothing.
  void add_entry(const std::string& phrase, bool ambiguous = false);
  void add_exclusion(const std::string& phrase);

  // Entry file: one phrase per line, optionally followed by a tab and
  // the flag "ambiguous". Exclusion file: one phrase per line. Blank
  // lines are skipped. Throws ParseError with the offending line number.
  static Gazetteer load(std::istream& entries, std::istream* exclusions);

  std::size_t num_entries() const { return entries_.size(); }
  std::size_t num_exclusions() const { return exclusions_.size(); }
  bool empty() const { return entries_.empty(); }
  bool has_ambiguous() const { return has_ambiguous_; }
  std::size_t max_entry_tokens() const { return max_entry_tokens_; }

  // Entry lookup by canonical key (folded tokens joined by one space);
  // returns nullptr when absent.
  const bool* find(const std::string& key) const;

  const std::vector<std::vector<std::string>>& exclusion_tokens() const {
    return exclusions_;
  }

 private:
  std::map<std::string, bool> entries_;  // key -> ambiguous
  std::vector<std::vector<std::string>> exclusions_;
  std::size_t max_entry_tokens_ = 0;
  bool has_ambiguous_ = false;
};

// Detected spans in sentence order, non-overlapping, each carrying the
// original sentence surface and its located range.
std::vector<SpanAnnotation> detect(const Sentence& sentence,
                                   const Gazetteer& gazetteer,
                                   const RuleConfig& config = {});

}  // namespace borrowkit

#endif  // BORROWKIT_RULES_H_
