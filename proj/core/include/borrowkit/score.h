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
// Strict-span scoring. Spans compare by normalized surface: casing and
// surrounding quote characters carry no weight. Gold spans form a
// multiset, predictions a deduplicated set; a gold value that occurs
// twice in the sentence counts twice as soon as the value is predicted
// once. Each predicted value not backed by any gold occurrence is one
// false positive.

#ifndef BORROWKIT_SCORE_H_
#define BORROWKIT_SCORE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "borrowkit/corpus.h"

namespace borrowkit {

struct MatchCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  MatchCounts& operator+=(const MatchCounts& other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    return *this;
  }
  bool operator==(const MatchCounts&) const = default;
};

struct ScoreReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // Ratios with the zero-denominator convention: an empty denominator
  // scores 0, so an empty prediction set has precision 0.
  static ScoreReport from_counts(const MatchCounts& counts);
};

// Sentence-level counts. Gold spans and predicted surfaces must be
// normalizable; tp + fn always equals the number of gold spans.
MatchCounts match_sentence(const std::vector<SpanAnnotation>& gold,
                           const std::vector<std::string>& predicted);

struct ScoreWarning {
  std::size_t index = 0;  // 0-based corpus position
  std::string message;
};

struct CorpusScore {
  ScoreReport report;
  std::vector<ScoreWarning> warnings;
};

// Pairs gold and predictions by position and sums sentence counts.
// Throws LengthMismatchError when the corpora have different lengths;
// sentence-text mismatches (compared after whitespace normalization)
// are reported as warnings and scoring continues.
CorpusScore score_corpus(const std::vector<AnnotatedSentence>& gold,
                         const std::vector<AnnotatedSentence>& predicted);

// Report renderers; ratios print with 4 decimal places.
std::string format_report_table(const ScoreReport& report);
std::string format_report_kv(const ScoreReport& report);

}  // namespace borrowkit

#endif  // BORROWKIT_SCORE_H_
