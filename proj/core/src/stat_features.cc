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

#include "borrowkit/stat_features.h"

#include <istream>

#include "borrowkit/unicode.h"

namespace borrowkit {

std::vector<std::string> feature_name_list() {
  return std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());
}

Lexicons Lexicons::from_streams(std::istream& spanish_words,
                                std::istream& english_words) {
  Lexicons lexicons;
  std::string line;
  while (std::getline(spanish_words, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lexicons.spanish.insert(uni::casefold(line));
  }
  while (std::getline(english_words, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lexicons.english.insert(uni::casefold(line));
  }
  return lexicons;
}

namespace {

bool is_vowel(char32_t cp) {
  switch (uni::strip_accent(cp)) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return true;
    default:
      return false;
  }
}

// Letters Spanish words may end with; accented vowels count as vowels.
bool valid_spanish_coda(char32_t cp) {
  switch (uni::strip_accent(cp)) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
    case 'n': case 's': case 'r': case 'l': case 'd': case 'z': case 'y':
      return true;
    default:
      return false;
  }
}

bool has_bigram(const std::u32string& cps, char32_t a, char32_t b) {
  for (std::size_t i = 0; i + 1 < cps.size(); i++) {
    if (cps[i] == a && cps[i + 1] == b) return true;
  }
  return false;
}

bool ends_with(const std::u32string& cps, std::u32string_view suffix) {
  if (cps.size() < suffix.size()) return false;
  return std::u32string_view(cps).substr(cps.size() - suffix.size()) == suffix;
}

std::size_t first_word_token(const Sentence& sentence) {
  for (std::size_t t = 0; t < sentence.num_tokens(); t++) {
    if (sentence.is_word_token(t)) return t;
  }
  return sentence.num_tokens();
}

}  // namespace

FeatureVector extract_features(const Sentence& sentence, std::size_t index,
                               const Lexicons& lexicons,
                               const PosTagProvider& pos_tag) {
  FeatureVector fv{};
  const std::string& surface = sentence.tokens()[index].surface;
  const std::string& folded = sentence.folded_token(index);
  const std::u32string cps = uni::decode_utf8(folded);
  const std::u32string raw_cps = uni::decode_utf8(surface);

  for (char32_t cp : cps) {
    if (cp == 'k' || cp == 'w') {
      fv[kHasKOrW] = 1.0;
      break;
    }
  }

  bool odd_sequence = has_bigram(cps, 's', 'h') || has_bigram(cps, 'o', 'o') ||
                      has_bigram(cps, 'e', 'e') ||
                      ends_with(cps, U"ing") || ends_with(cps, U"ck");
  if (!odd_sequence && cps.size() >= 2 && cps.back() == 'y') {
    const char32_t before = cps[cps.size() - 2];
    if (uni::is_letter(before) && !is_vowel(before)) odd_sequence = true;
  }
  fv[kHasNonSpanishCharSequence] = odd_sequence ? 1.0 : 0.0;

  if (!cps.empty() && uni::is_letter(cps.back()) &&
      !valid_spanish_coda(cps.back())) {
    fv[kEndsInInvalidSpanishCoda] = 1.0;
  }

  const bool in_english = lexicons.in_english(folded);
  const bool in_spanish = lexicons.in_spanish(folded);
  fv[kInEnglishLexicon] = in_english ? 1.0 : 0.0;
  fv[kInSpanishLexicon] = in_spanish ? 1.0 : 0.0;
  fv[kInBothLexicons] = (in_english && in_spanish) ? 1.0 : 0.0;

  if (has_bigram(cps, 'w', 'h') || has_bigram(cps, 'g', 'h') ||
      has_bigram(cps, 's', 'h') || has_bigram(cps, 'c', 'k') ||
      has_bigram(cps, 'o', 'o') || has_bigram(cps, 'e', 'e') ||
      has_bigram(cps, 'n', 'g')) {
    fv[kEnglishBigramScoreHigh] = 1.0;
  }

  const std::size_t initial = first_word_token(sentence);
  const bool sentence_initial = index == initial;
  fv[kSentenceInitial] = sentence_initial ? 1.0 : 0.0;

  bool starts_upper = false;
  bool any_cased = false;
  bool all_upper = true;
  bool seen_first_cased = false;
  for (char32_t cp : raw_cps) {
    if (uni::is_cased(cp)) {
      if (!seen_first_cased) {
        starts_upper = uni::is_upper(cp);
        seen_first_cased = true;
      }
      any_cased = true;
      if (!uni::is_upper(cp)) all_upper = false;
    }
  }
  if (starts_upper && !sentence_initial) fv[kIsCapitalizedMidSentence] = 1.0;
  if (any_cased && all_upper) fv[kAllCapsToken] = 1.0;

  if ((index > 0 && sentence.is_quote_token(index - 1)) ||
      (index + 1 < sentence.num_tokens() &&
       sentence.is_quote_token(index + 1))) {
    fv[kQuoteAdjacent] = 1.0;
  }

  if (index > 0 &&
      lexicons.in_english(sentence.folded_token(index - 1))) {
    fv[kPrevTokenInEnglishLexicon] = 1.0;
  }
  if (index + 1 < sentence.num_tokens() &&
      lexicons.in_english(sentence.folded_token(index + 1))) {
    fv[kNextTokenInEnglishLexicon] = 1.0;
  }

  if (!cps.empty() && cps.back() == 's') {
    const std::string stem_s = uni::encode_utf8(
        std::u32string_view(cps).substr(0, cps.size() - 1));
    bool hit = !stem_s.empty() && lexicons.in_spanish(stem_s);
    if (!hit && ends_with(cps, U"es")) {
      const std::string stem_es = uni::encode_utf8(
          std::u32string_view(cps).substr(0, cps.size() - 2));
      hit = !stem_es.empty() && lexicons.in_spanish(stem_es);
    }
    if (hit) fv[kStemInSpanish] = 1.0;
    if (!stem_s.empty() && lexicons.in_english(stem_s)) {
      fv[kStemInEnglish] = 1.0;
    }
  }

  if (pos_tag) fv[kPosTagSlot] = pos_tag(sentence, index);
  return fv;
}

std::vector<double> predict_tokens(const Model& model,
                                   const Sentence& sentence,
                                   const Lexicons& lexicons,
                                   const PosTagProvider& pos_tag) {
  if (model.feature_names.size() != kFeatureCount) {
    throw Error("model has " + std::to_string(model.feature_names.size()) +
                " features, expected " + std::to_string(kFeatureCount));
  }
  std::array<std::size_t, kFeatureCount> order{};
  std::array<bool, kFeatureCount> seen{};
  for (std::size_t j = 0; j < model.feature_names.size(); j++) {
    bool found = false;
    for (std::size_t k = 0; k < kFeatureCount; k++) {
      if (model.feature_names[j] == kFeatureNames[k]) {
        if (seen[k]) throw Error("duplicate model feature '" +
                                 model.feature_names[j] + "'");
        seen[k] = true;
        order[k] = j;
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error("unknown model feature '" + model.feature_names[j] + "'");
    }
  }

  std::vector<double> probs(sentence.num_tokens(), 0.0);
  for (std::size_t t = 0; t < sentence.num_tokens(); t++) {
    const FeatureVector fv = extract_features(sentence, t, lexicons, pos_tag);
    double z = model.bias;
    for (std::size_t k = 0; k < kFeatureCount; k++) {
      z += model.weights[order[k]] * fv[k];
    }
    probs[t] = sigmoid(z);
  }
  return probs;
}

namespace {

bool is_bridge_word(const std::string& folded) {
  return folded == "de" || folded == "of" || folded == "and" ||
         folded == "the" || folded == "'s" || folded == "’s";
}

}  // namespace

std::vector<SpanAnnotation> merge_multiword(const Sentence& sentence,
                                            const std::vector<double>& probs,
                                            const MergeConfig& config) {
  const std::size_t n = sentence.num_tokens();
  std::vector<char> positive(n, 0);
  for (std::size_t t = 0; t < n; t++) {
    positive[t] = probs[t] >= config.threshold && !sentence.is_quote_token(t);
  }
  std::vector<SpanAnnotation> spans;
  std::size_t i = 0;
  while (i < n) {
    if (!positive[i]) {
      i++;
      continue;
    }
    std::size_t j = i;
    while (true) {
      while (j + 1 < n && positive[j + 1]) j++;
      if (config.bridge_function_words && j + 2 < n && !positive[j + 1] &&
          !sentence.is_quote_token(j + 1) &&
          is_bridge_word(sentence.folded_token(j + 1)) && positive[j + 2]) {
        j += 2;
        continue;
      }
      break;
    }
    SpanAnnotation span;
    const CharRange range = sentence.token_chars(TokenSpan{i, j});
    span.surface = sentence.slice(range);
    span.located.push_back(range);
    spans.push_back(std::move(span));
    i = j + 1;
  }
  return spans;
}

}  // namespace borrowkit
