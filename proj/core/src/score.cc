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

#include "borrowkit/score.h"

#include <cstdio>
#include <set>

#include "borrowkit/text.h"
#include "borrowkit/unicode.h"

namespace borrowkit {

ScoreReport ScoreReport::from_counts(const MatchCounts& counts) {
  ScoreReport report;
  report.tp = counts.tp;
  report.fp = counts.fp;
  report.fn = counts.fn;
  const double tp = static_cast<double>(counts.tp);
  const std::size_t pred = counts.tp + counts.fp;
  const std::size_t gold = counts.tp + counts.fn;
  report.precision = pred == 0 ? 0.0 : tp / static_cast<double>(pred);
  report.recall = gold == 0 ? 0.0 : tp / static_cast<double>(gold);
  const double pr = report.precision + report.recall;
  report.f1 = pr == 0.0 ? 0.0 : 2.0 * report.precision * report.recall / pr;
  return report;
}

MatchCounts match_sentence(const std::vector<SpanAnnotation>& gold,
                           const std::vector<std::string>& predicted) {
  std::set<std::string> pred_values;
  for (const std::string& surface : predicted) {
    pred_values.insert(normalize_span(surface));
  }
  std::set<std::string> gold_values;
  MatchCounts counts;
  for (const SpanAnnotation& span : gold) {
    const std::string value = normalize_span(span.surface);
    gold_values.insert(value);
    if (pred_values.count(value) > 0) {
      counts.tp++;
    } else {
      counts.fn++;
    }
  }
  for (const std::string& value : pred_values) {
    if (gold_values.count(value) == 0) counts.fp++;
  }
  return counts;
}

namespace {

// Whitespace-normalized sentence text for mismatch detection.
std::string collapse_spaces(const std::string& text) {
  std::u32string cps = uni::decode_utf8(text);
  std::u32string out;
  bool pending = false;
  for (char32_t cp : cps) {
    if (uni::is_space(cp)) {
      pending = !out.empty();
      continue;
    }
    if (pending) {
      out.push_back(' ');
      pending = false;
    }
    out.push_back(cp);
  }
  return uni::encode_utf8(out);
}

}  // namespace

CorpusScore score_corpus(const std::vector<AnnotatedSentence>& gold,
                         const std::vector<AnnotatedSentence>& predicted) {
  if (gold.size() != predicted.size()) {
    throw LengthMismatchError(
        "gold has " + std::to_string(gold.size()) + " sentences, predictions " +
        std::to_string(predicted.size()));
  }
  CorpusScore result;
  MatchCounts totals;
  for (std::size_t i = 0; i < gold.size(); i++) {
    if (collapse_spaces(gold[i].sentence.text()) !=
        collapse_spaces(predicted[i].sentence.text())) {
      result.warnings.push_back(
          {i, "sentence " + std::to_string(i + 1) +
                  ": prediction text does not match gold text"});
    }
    std::vector<std::string> surfaces;
    surfaces.reserve(predicted[i].spans.size());
    for (const SpanAnnotation& span : predicted[i].spans) {
      surfaces.push_back(span.surface);
    }
    totals += match_sentence(gold[i].spans, surfaces);
  }
  result.report = ScoreReport::from_counts(totals);
  return result;
}

std::string format_report_table(const ScoreReport& report) {
  char buf[256];
  std::string out;
  out += "          tp       fp       fn\n";
  std::snprintf(buf, sizeof(buf), "counts %7zu  %7zu  %7zu\n", report.tp,
                report.fp, report.fn);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "precision %.4f  recall %.4f  f1 %.4f\n", report.precision,
                report.recall, report.f1);
  out += buf;
  return out;
}

std::string format_report_kv(const ScoreReport& report) {
  char buf[64];
  std::string out;
  out += "tp " + std::to_string(report.tp) + "\n";
  out += "fp " + std::to_string(report.fp) + "\n";
  out += "fn " + std::to_string(report.fn) + "\n";
  std::snprintf(buf, sizeof(buf), "precision %.4f\n", report.precision);
  out += buf;
  std::snprintf(buf, sizeof(buf), "recall %.4f\n", report.recall);
  out += buf;
  std::snprintf(buf, sizeof(buf), "f1 %.4f\n", report.f1);
  out += buf;
  return out;
}

}  // namespace borrowkit
