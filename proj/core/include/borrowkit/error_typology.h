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
// Span error typology. Classification runs in four steps:
//   1. gold spans and deduplicated predictions whose normalized value (and
//      label) agree are exact matches and produce no record, mirroring the
//      scorer's true positives;
//   2. the remaining spans are located as token ranges, each span claiming
//      its earliest occurrence whose tokens are unclaimed on its own side;
//   3. connected components of the gold/prediction overlap graph are
//      classified: Split (one gold, several predictions inside it), Fused
//      (several adjacent golds, one prediction across them), Missegmented
//      (adjacent golds vs adjacent predictions with the same total extent
//      but shifted boundaries), Type (same range, different label), and
//      partial one-to-one overlaps, which yield OverlapMissing when gold
//      tokens are uncovered and OverlapSpurious when extra tokens are
//      covered; larger tangles decompose greedily left to right;
//   4. leftover golds are Missing, leftover predictions Spurious.
// Adjacency means consecutive token indices ignoring quote tokens.

#ifndef BORROWKIT_ERROR_TYPOLOGY_H_
#define BORROWKIT_ERROR_TYPOLOGY_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "borrowkit/corpus.h"

namespace borrowkit {

enum class ErrorType {
  kMissing,
  kSpurious,
  kType,
  kOverlapMissing,
  kOverlapSpurious,
  kSplit,
  kFused,
  kMissegmented,
};

inline constexpr std::size_t kNumErrorTypes = 8;

const char* error_type_name(ErrorType type);
std::optional<ErrorType> parse_error_type(const std::string& name);

// One classified disagreement. Involved spans carry their claimed
// occurrence in `located` (empty for unlocatable predictions).
struct ErrorRecord {
  std::string sentence_id;
  std::vector<SpanAnnotation> gold;
  std::vector<SpanAnnotation> predicted;
  ErrorType type = ErrorType::kMissing;
};

struct AlignmentResult {
  std::vector<ErrorRecord> records;
  // Gold occurrences matched exactly; equals the scorer's tp for the
  // same sentence pair.
  std::size_t exact_matches = 0;
};

// Classifies one sentence pair. Gold spans should be locatable in the
// sentence; predictions may be arbitrary surfaces. The result does not
// depend on the order of the predicted list.
AlignmentResult align_and_classify(const AnnotatedSentence& gold,
                                   const std::vector<SpanAnnotation>& predicted);

std::map<ErrorType, std::size_t> error_histogram(
    const std::vector<ErrorRecord>& records);

// Error report line: sentence_id;gold_spans;predicted_spans;error_type
// with multiple spans joined by '|'. Fields follow CSV quoting rules.
void write_error_csv(std::ostream& out,
                     const std::vector<ErrorRecord>& records);

std::string format_histogram(const std::map<ErrorType, std::size_t>& counts);

}  // namespace borrowkit

#endif  // BORROWKIT_ERROR_TYPOLOGY_H_
