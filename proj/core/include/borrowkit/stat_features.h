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
// Binary token features for borrowing detection, and the span assembly
// step that turns per-token probabilities into multi-word spans. The
// feature registry is fixed: models serialize against these names.

#ifndef BORROWKIT_STAT_FEATURES_H_
#define BORROWKIT_STAT_FEATURES_H_

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "borrowkit/corpus.h"
#include "borrowkit/logreg.h"

namespace borrowkit {

enum FeatureIndex {
  kHasKOrW = 0,
  kHasNonSpanishCharSequence,
  kEndsInInvalidSpanishCoda,
  kInEnglishLexicon,
  kInSpanishLexicon,
  kInBothLexicons,
  kEnglishBigramScoreHigh,
  kIsCapitalizedMidSentence,
  kAllCapsToken,
  kQuoteAdjacent,
  kSentenceInitial,
  kPrevTokenInEnglishLexicon,
  kNextTokenInEnglishLexicon,
  kStemInSpanish,
  kStemInEnglish,
  kPosTagSlot,
  kFeatureCount,
};

inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "has_k_or_w",
    "has_non_spanish_char_sequence",
    "ends_in_invalid_spanish_coda",
    "in_english_lexicon",
    "in_spanish_lexicon",
    "in_both_lexicons",
    "english_bigram_score_high",
    "is_capitalized_mid_sentence",
    "all_caps_token",
    "quote_adjacent",
    "sentence_initial",
    "prev_token_in_english_lexicon",
    "next_token_in_english_lexicon",
    "stem_in_spanish",
    "stem_in_english",
    "pos_tag_slot",
};

std::vector<std::string> feature_name_list();

using FeatureVector = std::array<double, kFeatureCount>;

// Wordlists, stored casefolded. Lookup casefolds the query.
struct Lexicons {
  std::set<std::string> spanish;
  std::set<std::string> english;

  // One word per line; blank lines skipped.
  static Lexicons from_streams(std::istream& spanish_words,
                               std::istream& english_words);

  bool in_spanish(const std::string& folded) const {
    return spanish.count(folded) > 0;
  }
  bool in_english(const std::string& folded) const {
    return english.count(folded) > 0;
  }
};

// Hook for an external part-of-speech signal; the default slot value is
// constant 0.
using PosTagProvider =
    std::function<double(const Sentence&, std::size_t token_index)>;

// All features are 0/1 valued and depend only on the sentence, the token
// index, and the lexicons (same input, same vector). String features read
// the casefolded surface; the casing features read the original.
FeatureVector extract_features(const Sentence& sentence, std::size_t index,
                               const Lexicons& lexicons,
                               const PosTagProvider& pos_tag = nullptr);

// Per-token borrowing probabilities. The model's feature names must be a
// permutation of the registry; throws Error otherwise.
std::vector<double> predict_tokens(const Model& model,
                                   const Sentence& sentence,
                                   const Lexicons& lexicons,
                                   const PosTagProvider& pos_tag = nullptr);

struct MergeConfig {
  double threshold = 0.5;
  // Absorb one non-positive function word (de, of, and, the, 's) between
  // two positive neighbors.
  bool bridge_function_words = true;
};

// Maximal runs of positive tokens become spans; quote tokens never join a
// span. Output is ordered and non-overlapping, surfaces cut from the
// original sentence.
std::vector<SpanAnnotation> merge_multiword(const Sentence& sentence,
                                            const std::vector<double>& probs,
                                            const MergeConfig& config = {});

}  // namespace borrowkit

#endif  // BORROWKIT_STAT_FEATURES_H_
