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
// Orthotypographic variant generation: rewrite an annotated sentence under
// a casing mode and a quote mode (quote characters wrapped around each gold
// span's claimed occurrence), keeping the gold spans locatable. A
// consistency report scores a detector per variant and flags specs whose
// F1 drifts from the baseline spec by more than a delta.

#ifndef BORROWKIT_VARIANTS_H_
#define BORROWKIT_VARIANTS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "borrowkit/corpus.h"
#include "borrowkit/errors.h"
#include "borrowkit/score.h"

namespace borrowkit {

enum class Casing { kOriginal, kLower, kUpper, kTitle };
enum class QuoteMode { kNone, kAsciiDouble, kCurlyDouble, kAngled };

inline constexpr std::size_t kNumCasings = 4;
inline constexpr std::size_t kNumQuoteModes = 4;

const char* casing_name(Casing casing);        // "original" ... "title"
const char* quote_mode_name(QuoteMode mode);   // "none" ... "angled"

struct VariantSpec {
  Casing casing = Casing::kOriginal;
  QuoteMode quotes = QuoteMode::kNone;

  // "original-none", "upper-ascii-double", ...
  std::string suffix() const;

  bool operator==(const VariantSpec&) const = default;
};

bool operator<(const VariantSpec& a, const VariantSpec& b);

// All 16 specs, casing-major: original-none, original-ascii-double, ...
std::vector<VariantSpec> all_variant_specs();

// Inverse of VariantSpec::suffix(). Throws ParseError.
VariantSpec parse_variant_suffix(const std::string& text);

// "<base>#<suffix>".
std::string variant_id(const std::string& base_id, const VariantSpec& spec);

struct SplitVariantId {
  std::string base;
  VariantSpec spec;
};

// Splits at the last '#'; the tail must parse as a spec suffix. Throws
// ParseError when there is no '#' or the tail is not a spec.
SplitVariantId split_variant_id(const std::string& id);

// Applies the casing mode to UTF-8 text. Title casing upper-cases the
// first letter of every token and lower-cases the rest.
std::string apply_casing(const std::string& text, Casing casing);

// One variant of a record. Each gold span claims its earliest occurrence
// not claimed by an earlier span (falling back to the earliest occurrence
// when all are claimed); the quote mode wraps each claimed occurrence in a
// quote pair, then the casing mode is applied to the whole text and to
// every gold surface. The output id is variant_id(record id, spec).
// Throws UnlocatableSpanError when a gold span has no occurrence.
AnnotatedSentence gen_variant(const AnnotatedSentence& record,
                              const VariantSpec& spec);

std::vector<AnnotatedSentence> gen_variants(
    const AnnotatedSentence& record, const std::vector<VariantSpec>& specs);

// One per-spec slice of a variant corpus, paired gold and predictions.
struct VariantSlice {
  VariantSpec spec;
  std::vector<AnnotatedSentence> gold;
  std::vector<AnnotatedSentence> predicted;
};

struct VariantScore {
  VariantSpec spec;
  ScoreReport report;
  bool flagged = false;
};

struct ConsistencyReport {
  std::vector<VariantScore> scores;  // slice order preserved
  VariantSpec baseline;
  double baseline_f1 = 0.0;
  double delta = 0.05;
};

// Scores every slice and flags specs with |F1 - baseline F1| > delta. The
// baseline is the original-none slice when present, otherwise the first
// slice. Empty input yields an empty report.
ConsistencyReport consistency_report(const std::vector<VariantSlice>& slices,
                                     double delta = 0.05);

// One line per spec ("<suffix> tp .. fp .. fn .. precision .. recall ..
// f1 .." plus " flagged"), then a baseline line.
std::string format_consistency_report(const ConsistencyReport& report);

}  // namespace borrowkit

#endif  // BORROWKIT_VARIANTS_H_
