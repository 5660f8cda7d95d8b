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

#include "borrowkit/rules.h"

#include <algorithm>
#include <istream>
#include <set>

#include "borrowkit/unicode.h"

namespace borrowkit {

namespace {

// Canonical key and token sequence for a phrase: normalized, tokenized,
// quote tokens dropped, tokens joined by one space.
std::vector<std::string> phrase_tokens(const std::string& phrase) {
  const std::string normalized = normalize_span(phrase);
  std::vector<std::string> tokens;
  for (const Token& tok : tokenize(normalized)) {
    const std::u32string cps = uni::decode_utf8(tok.surface);
    if (cps.size() == 1 && uni::is_quote(cps[0])) continue;
    tokens.push_back(tok.surface);
  }
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens,
                        std::size_t first, std::size_t count) {
  std::string key;
  for (std::size_t i = 0; i < count; i++) {
    if (i > 0) key += ' ';
    key += tokens[first + i];
  }
  return key;
}

}  // namespace

void Gazetteer::add_entry(const std::string& phrase, bool ambiguous) {
  const std::vector<std::string> tokens = phrase_tokens(phrase);
  if (tokens.empty()) throw EmptySpanError(phrase);
  const std::string key = join_tokens(tokens, 0, tokens.size());
  auto [it, inserted] = entries_.emplace(key, ambiguous);
  if (!inserted) it->second = it->second || ambiguous;
  if (it->second) has_ambiguous_ = true;
  max_entry_tokens_ = std::max(max_entry_tokens_, tokens.size());
}

void Gazetteer::add_exclusion(const std::string& phrase) {
  std::vector<std::string> tokens = phrase_tokens(phrase);
  if (tokens.empty()) throw EmptySpanError(phrase);
  for (const auto& existing : exclusions_) {
    if (existing == tokens) return;
  }
  exclusions_.push_back(std::move(tokens));
}

Gazetteer Gazetteer::load(std::istream& entries, std::istream* exclusions) {
  Gazetteer gazetteer;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(entries, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    std::string phrase = line.substr(0, tab == std::string::npos ? line.size() : tab);
    bool ambiguous = false;
    if (tab != std::string::npos) {
      const std::string flag = line.substr(tab + 1);
      if (flag != "ambiguous") {
        throw ParseError("unknown gazetteer flag '" + flag + "'", lineno);
      }
      ambiguous = true;
    }
    try {
      gazetteer.add_entry(phrase, ambiguous);
    } catch (const EmptySpanError&) {
      throw ParseError("empty gazetteer phrase", lineno);
    }
  }
  if (exclusions != nullptr) {
    lineno = 0;
    while (std::getline(*exclusions, line)) {
      lineno++;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      try {
        gazetteer.add_exclusion(line);
      } catch (const EmptySpanError&) {
        throw ParseError("empty exclusion phrase", lineno);
      }
    }
  }
  return gazetteer;
}

const bool* Gazetteer::find(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  return &it->second;
}

namespace {

struct Match {
  TokenSpan tokens;
  bool ambiguous = false;
};

struct Scanner {
  const Sentence& sentence;
  const Gazetteer& gazetteer;
  const RuleConfig& config;
  std::vector<TokenSpan> exclusion_spans;
  std::vector<char> covered;

  Scanner(const Sentence& s, const Gazetteer& g, const RuleConfig& c)
      : sentence(s), gazetteer(g), config(c),
        covered(s.num_tokens(), 0) {
    if (config.use_exclusions) find_exclusions();
  }

  void find_exclusions() {
    const std::size_t n = sentence.num_tokens();
    for (const auto& phrase : gazetteer.exclusion_tokens()) {
      if (phrase.empty() || phrase.size() > n) continue;
      for (std::size_t i = 0; i + phrase.size() <= n; i++) {
        bool ok = true;
        for (std::size_t k = 0; k < phrase.size(); k++) {
          if (sentence.is_quote_token(i + k) ||
              sentence.folded_token(i + k) != phrase[k]) {
            ok = false;
            break;
          }
        }
        if (ok) exclusion_spans.push_back(TokenSpan{i, i + phrase.size() - 1});
      }
    }
  }

  bool inside_exclusion(TokenSpan span) const {
    for (TokenSpan occ : exclusion_spans) {
      if (occ.first <= span.first && span.last <= occ.last) return true;
    }
    return false;
  }

  // Longest entry match starting at pos, or no match. Candidate windows
  // never contain quote or covered tokens. A match suppressed by an
  // exclusion ends the attempt: shorter windows at the same position lie
  // inside the same occurrence.
  bool try_match(std::size_t pos, bool include_ambiguous, Match* match) const {
    const std::size_t n = sentence.num_tokens();
    if (sentence.is_quote_token(pos) || covered[pos]) return false;
    std::size_t kmax =
        std::min(config.max_phrase_tokens, gazetteer.max_entry_tokens());
    kmax = std::min(kmax, n - pos);
    for (std::size_t k = kmax; k >= 1; k--) {
      bool clean = true;
      for (std::size_t t = pos; t < pos + k; t++) {
        if (sentence.is_quote_token(t) || covered[t]) {
          clean = false;
          break;
        }
      }
      if (!clean) continue;
      std::string key;
      for (std::size_t t = pos; t < pos + k; t++) {
        if (t > pos) key += ' ';
        key += sentence.folded_token(t);
      }
      const bool* ambiguous = gazetteer.find(key);
      if (ambiguous == nullptr) continue;
      if (!include_ambiguous && *ambiguous) continue;
      const TokenSpan span{pos, pos + k - 1};
      if (config.use_exclusions && inside_exclusion(span)) return false;
      match->tokens = span;
      match->ambiguous = *ambiguous;
      return true;
    }
    return false;
  }

  void mark(TokenSpan span) {
    for (std::size_t t = span.first; t <= span.last; t++) covered[t] = 1;
  }

  bool enclosed_in_quotes(TokenSpan span) const {
    if (span.first == 0 || span.last + 1 >= sentence.num_tokens()) return false;
    return sentence.is_quote_token(span.first - 1) &&
           sentence.is_quote_token(span.last + 1);
  }

  bool adjacent_to_any(TokenSpan span, const std::vector<Match>& fired) const {
    for (const Match& m : fired) {
      if (m.ambiguous) continue;
      if (spans_adjacent(sentence, m.tokens, span) ||
          spans_adjacent(sentence, span, m.tokens)) {
        return true;
      }
    }
    return false;
  }

  std::size_t first_word_token() const {
    for (std::size_t t = 0; t < sentence.num_tokens(); t++) {
      if (sentence.is_word_token(t)) return t;
    }
    return sentence.num_tokens();
  }

  bool token_starts_upper(std::size_t t) const {
    const std::u32string cps = uni::decode_utf8(sentence.tokens()[t].surface);
    for (char32_t cp : cps) {
      if (uni::is_cased(cp)) return uni::is_upper(cp);
    }
    return false;
  }

  bool sentence_all_caps() const {
    bool any = false;
    const std::u32string cps = uni::decode_utf8(sentence.text());
    for (char32_t cp : cps) {
      if (uni::is_cased(cp)) {
        if (!uni::is_upper(cp)) return false;
        any = true;
      }
    }
    return any;
  }

  bool sentence_title_cased() const {
    bool any = false;
    for (std::size_t t = 0; t < sentence.num_tokens(); t++) {
      if (!sentence.is_word_token(t)) continue;
      const std::u32string cps = uni::decode_utf8(sentence.tokens()[t].surface);
      for (char32_t cp : cps) {
        if (uni::is_cased(cp)) {
          if (!uni::is_upper(cp)) return false;
          any = true;
          break;
        }
      }
    }
    return any;
  }

  bool capitalized_mid_sentence(TokenSpan span) const {
    if (span.first == first_word_token()) return false;
    if (sentence_all_caps() || sentence_title_cased()) return false;
    for (std::size_t t = span.first; t <= span.last; t++) {
      if (!sentence.is_word_token(t)) continue;
      if (!token_starts_upper(t)) return false;
    }
    return true;
  }

  bool triggered(TokenSpan span, const std::vector<Match>& fired) const {
    if (config.trigger_quotes && enclosed_in_quotes(span)) return true;
    if (config.trigger_adjacency && adjacent_to_any(span, fired)) return true;
    if (config.trigger_capitalization && capitalized_mid_sentence(span)) {
      return true;
    }
    return false;
  }
};

}  // namespace

std::vector<SpanAnnotation> detect(const Sentence& sentence,
                                   const Gazetteer& gazetteer,
                                   const RuleConfig& config) {
  std::vector<SpanAnnotation> output;
  if (gazetteer.empty() || sentence.num_tokens() == 0) return output;

  Scanner scanner(sentence, gazetteer, config);
  const std::size_t n = sentence.num_tokens();
  std::vector<Match> fired;

  // Pass 1: unconditional entries, leftmost-longest.
  const bool include_ambiguous = !config.require_context_for_ambiguous;
  std::size_t pos = 0;
  while (pos < n) {
    Match match;
    if (scanner.try_match(pos, include_ambiguous, &match)) {
      scanner.mark(match.tokens);
      fired.push_back(match);
      pos = match.tokens.last + 1;
    } else {
      pos++;
    }
  }

  // Pass 2: ambiguous candidates over the remaining tokens, firing only
  // in a supporting context.
  if (config.require_context_for_ambiguous && gazetteer.has_ambiguous()) {
    pos = 0;
    while (pos < n) {
      Match match;
      if (scanner.try_match(pos, true, &match) &&
          (!match.ambiguous || scanner.triggered(match.tokens, fired))) {
        scanner.mark(match.tokens);
        fired.push_back(match);
        pos = match.tokens.last + 1;
      } else {
        pos++;
      }
    }
  }

  std::sort(fired.begin(), fired.end(), [](const Match& a, const Match& b) {
    return a.tokens.first < b.tokens.first;
  });
  for (const Match& match : fired) {
    SpanAnnotation span;
    const CharRange range = sentence.token_chars(match.tokens);
    span.surface = sentence.slice(range);
    span.located.push_back(range);
    output.push_back(std::move(span));
  }
  return output;
}

}  // namespace borrowkit
