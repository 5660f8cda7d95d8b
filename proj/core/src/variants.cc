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

#include "borrowkit/variants.h"

#include <algorithm>
#include <cstdio>

#include "borrowkit/text.h"
#include "borrowkit/unicode.h"

namespace borrowkit {

const char* casing_name(Casing casing) {
  switch (casing) {
    case Casing::kOriginal: return "original";
    case Casing::kLower: return "lower";
    case Casing::kUpper: return "upper";
    case Casing::kTitle: return "title";
  }
  return "original";
}

const char* quote_mode_name(QuoteMode mode) {
  switch (mode) {
    case QuoteMode::kNone: return "none";
    case QuoteMode::kAsciiDouble: return "ascii-double";
    case QuoteMode::kCurlyDouble: return "curly-double";
    case QuoteMode::kAngled: return "angled";
  }
  return "none";
}

std::string VariantSpec::suffix() const {
  std::string out = casing_name(casing);
  out += '-';
  out += quote_mode_name(quotes);
  return out;
}

bool operator<(const VariantSpec& a, const VariantSpec& b) {
  if (a.casing != b.casing) {
    return static_cast<int>(a.casing) < static_cast<int>(b.casing);
  }
  return static_cast<int>(a.quotes) < static_cast<int>(b.quotes);
}

std::vector<VariantSpec> all_variant_specs() {
  static constexpr Casing kCasings[] = {Casing::kOriginal, Casing::kLower,
                                        Casing::kUpper, Casing::kTitle};
  static constexpr QuoteMode kModes[] = {
      QuoteMode::kNone, QuoteMode::kAsciiDouble, QuoteMode::kCurlyDouble,
      QuoteMode::kAngled};
  std::vector<VariantSpec> specs;
  specs.reserve(kNumCasings * kNumQuoteModes);
  for (Casing casing : kCasings) {
    for (QuoteMode mode : kModes) {
      specs.push_back(VariantSpec{casing, mode});
    }
  }
  return specs;
}

VariantSpec parse_variant_suffix(const std::string& text) {
  const std::size_t dash = text.find('-');
  if (dash == std::string::npos) {
    throw ParseError("variant suffix '" + text + "' lacks '-'");
  }
  const std::string casing_part = text.substr(0, dash);
  const std::string quote_part = text.substr(dash + 1);
  VariantSpec spec;
  if (casing_part == "original") {
    spec.casing = Casing::kOriginal;
  } else if (casing_part == "lower") {
    spec.casing = Casing::kLower;
  } else if (casing_part == "upper") {
    spec.casing = Casing::kUpper;
  } else if (casing_part == "title") {
    spec.casing = Casing::kTitle;
  } else {
    throw ParseError("unknown casing mode '" + casing_part + "'");
  }
  if (quote_part == "none") {
    spec.quotes = QuoteMode::kNone;
  } else if (quote_part == "ascii-double") {
    spec.quotes = QuoteMode::kAsciiDouble;
  } else if (quote_part == "curly-double") {
    spec.quotes = QuoteMode::kCurlyDouble;
  } else if (quote_part == "angled") {
    spec.quotes = QuoteMode::kAngled;
  } else {
    throw ParseError("unknown quote mode '" + quote_part + "'");
  }
  return spec;
}

std::string variant_id(const std::string& base_id, const VariantSpec& spec) {
  return base_id + "#" + spec.suffix();
}

SplitVariantId split_variant_id(const std::string& id) {
  const std::size_t hash = id.rfind('#');
  if (hash == std::string::npos) {
    throw ParseError("variant id '" + id + "' lacks '#'");
  }
  SplitVariantId split;
  split.base = id.substr(0, hash);
  split.spec = parse_variant_suffix(id.substr(hash + 1));
  return split;
}

namespace {

std::pair<char32_t, char32_t> quote_pair(QuoteMode mode) {
  switch (mode) {
    case QuoteMode::kNone: return {0, 0};
    case QuoteMode::kAsciiDouble: return {U'"', U'"'};
    case QuoteMode::kCurlyDouble: return {U'“', U'”'};
    case QuoteMode::kAngled: return {U'«', U'»'};
  }
  return {0, 0};
}

std::string title_case(const std::string& text) {
  std::u32string cps = uni::decode_utf8(text);
  for (const Token& token : tokenize(text)) {
    for (std::size_t p = token.start; p < token.end; p++) {
      cps[p] = p == token.start ? uni::simple_upper(cps[p])
                                : uni::simple_lower(cps[p]);
    }
  }
  return uni::encode_utf8(cps);
}

}  // namespace

std::string apply_casing(const std::string& text, Casing casing) {
  switch (casing) {
    case Casing::kOriginal:
      return text;
    case Casing::kLower:
      return uni::to_lower(text);
    case Casing::kUpper:
      return uni::to_upper(text);
    case Casing::kTitle:
      return title_case(text);
  }
  return text;
}

AnnotatedSentence gen_variant(const AnnotatedSentence& record,
                              const VariantSpec& spec) {
  // Each span claims one occurrence; a duplicated gold value claims
  // successive occurrences so that each copy gets its own quote pair.
  std::vector<CharRange> claimed;
  for (const SpanAnnotation& span : record.spans) {
    const std::vector<CharRange> found =
        locate_span(record.sentence, span.surface);
    if (found.empty()) {
      throw UnlocatableSpanError("span '" + span.surface +
                                 "' not found in sentence '" +
                                 record.sentence.id() + "'");
    }
    const CharRange* pick = nullptr;
    for (const CharRange& range : found) {
      if (std::find(claimed.begin(), claimed.end(), range) == claimed.end()) {
        pick = &range;
        break;
      }
    }
    claimed.push_back(pick != nullptr ? *pick : found.front());
  }

  std::string text = record.sentence.text();
  if (spec.quotes != QuoteMode::kNone) {
    const auto [open, close] = quote_pair(spec.quotes);
    const std::u32string cps = uni::decode_utf8(text);
    std::u32string out;
    out.reserve(cps.size() + 2 * claimed.size());
    for (std::size_t p = 0; p <= cps.size(); p++) {
      // Closes before opens at the same offset; inner ranges close first
      // and outer ranges open first, so nested claims nest properly.
      std::vector<std::size_t> closes, opens;
      for (std::size_t c = 0; c < claimed.size(); c++) {
        if (claimed[c].end == p) closes.push_back(c);
        if (claimed[c].start == p) opens.push_back(c);
      }
      std::sort(closes.begin(), closes.end(), [&](std::size_t a,
                                                  std::size_t b) {
        return claimed[a].start > claimed[b].start;
      });
      std::sort(opens.begin(), opens.end(), [&](std::size_t a,
                                                std::size_t b) {
        return claimed[a].end > claimed[b].end;
      });
      for (std::size_t c : closes) { (void)c; out.push_back(close); }
      for (std::size_t c : opens) { (void)c; out.push_back(open); }
      if (p < cps.size()) out.push_back(cps[p]);
    }
    text = uni::encode_utf8(out);
  }
  text = apply_casing(text, spec.casing);

  AnnotatedSentence variant;
  variant.sentence =
      Sentence(variant_id(record.sentence.id(), spec), std::move(text));
  variant.spans.reserve(record.spans.size());
  for (const SpanAnnotation& span : record.spans) {
    SpanAnnotation out;
    out.surface = apply_casing(span.surface, spec.casing);
    out.label = span.label;
    out.located = locate_span(variant.sentence, out.surface);
    if (out.located.empty()) {
      throw UnlocatableSpanError("span '" + out.surface +
                                 "' lost by variant '" + spec.suffix() + "'");
    }
    variant.spans.push_back(std::move(out));
  }
  return variant;
}

std::vector<AnnotatedSentence> gen_variants(
    const AnnotatedSentence& record, const std::vector<VariantSpec>& specs) {
  std::vector<AnnotatedSentence> out;
  out.reserve(specs.size());
  for (const VariantSpec& spec : specs) {
    out.push_back(gen_variant(record, spec));
  }
  return out;
}

ConsistencyReport consistency_report(const std::vector<VariantSlice>& slices,
                                     double delta) {
  ConsistencyReport report;
  report.delta = delta;
  if (slices.empty()) return report;

  std::size_t baseline_index = 0;
  for (std::size_t i = 0; i < slices.size(); i++) {
    if (slices[i].spec == VariantSpec{}) {
      baseline_index = i;
      break;
    }
  }
  for (const VariantSlice& slice : slices) {
    VariantScore score;
    score.spec = slice.spec;
    score.report = score_corpus(slice.gold, slice.predicted).report;
    report.scores.push_back(score);
  }
  report.baseline = slices[baseline_index].spec;
  report.baseline_f1 = report.scores[baseline_index].report.f1;
  for (VariantScore& score : report.scores) {
    const double drift = score.report.f1 - report.baseline_f1;
    score.flagged = drift > delta || drift < -delta;
  }
  return report;
}

std::string format_consistency_report(const ConsistencyReport& report) {
  std::string out;
  char buf[160];
  for (const VariantScore& score : report.scores) {
    std::snprintf(buf, sizeof(buf),
                  "%s tp %zu fp %zu fn %zu precision %.4f recall %.4f "
                  "f1 %.4f%s\n",
                  score.spec.suffix().c_str(), score.report.tp,
                  score.report.fp, score.report.fn, score.report.precision,
                  score.report.recall, score.report.f1,
                  score.flagged ? " flagged" : "");
    out += buf;
  }
  if (!report.scores.empty()) {
    std::snprintf(buf, sizeof(buf), "baseline %s f1 %.4f delta %.4f\n",
                  report.baseline.suffix().c_str(), report.baseline_f1,
                  report.delta);
    out += buf;
  }
  return out;
}

}  // namespace borrowkit
