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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "borrowkit/error_typology.h"
#include "borrowkit/score.h"
#include "testutil.h"

namespace bk = borrowkit;

namespace {

std::vector<bk::SpanAnnotation> spans(const std::vector<std::string>& surfaces,
                                      const std::string& label = "ENG") {
  std::vector<bk::SpanAnnotation> out;
  for (const std::string& s : surfaces) {
    bk::SpanAnnotation span;
    span.surface = s;
    span.label = label;
    out.push_back(std::move(span));
  }
  return out;
}

bk::AnnotatedSentence gold_record(const std::string& text,
                                  const std::vector<std::string>& surfaces) {
  bk::AnnotatedSentence record;
  record.sentence = bk::Sentence("s1", text);
  record.spans = spans(surfaces);
  return record;
}

// Sorted type names of the produced records.
std::vector<std::string> classify_types(
    const std::string& text, const std::vector<std::string>& gold,
    const std::vector<std::string>& predicted) {
  const auto result =
      bk::align_and_classify(gold_record(text, gold), spans(predicted));
  std::vector<std::string> names;
  for (const bk::ErrorRecord& record : result.records) {
    names.push_back(bk::error_type_name(record.type));
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

TEST_CASE("error type names round trip") {
  for (std::size_t i = 0; i < bk::kNumErrorTypes; i++) {
    const bk::ErrorType type = static_cast<bk::ErrorType>(i);
    const auto parsed = bk::parse_error_type(bk::error_type_name(type));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == type);
  }
  CHECK(!bk::parse_error_type("bogus").has_value());
}

TEST_CASE("unpredicted gold spans are missing") {
  CHECK(classify_types("se produce un fatal error", {"fatal error"}, {}) ==
        std::vector<std::string>{"missing"});
}

TEST_CASE("ungrounded predictions are spurious") {
  const auto result = bk::align_and_classify(
      gold_record("el look gris", {"look"}),
      spans({"LOOK", "zzz"}));
  CHECK(result.exact_matches == 1);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].type == bk::ErrorType::kSpurious);
  REQUIRE(result.records[0].predicted.size() == 1);
  CHECK(result.records[0].predicted[0].surface == "zzz");
  CHECK(result.records[0].predicted[0].located.empty());
}

TEST_CASE("one gold predicted in pieces is split") {
  CHECK(classify_types("lleva casual looks hoy", {"casual looks"},
                       {"casual", "looks"}) ==
        std::vector<std::string>{"split"});
}

TEST_CASE("adjacent golds predicted as one span are fused") {
  const auto result = bk::align_and_classify(
      gold_record("estudia Marketing Online ahora", {"Marketing", "Online"}),
      spans({"Marketing Online"}));
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].type == bk::ErrorType::kFused);
  CHECK(result.records[0].gold.size() == 2);
  CHECK(result.records[0].predicted.size() == 1);
}

TEST_CASE("quote tokens do not break adjacency for fusion") {
  CHECK(classify_types("compra “Marketing” “Online” ya",
                       {"Marketing", "Online"}, {"marketing online"}) ==
        std::vector<std::string>{"fused"});
}

TEST_CASE("a prediction under-covering its gold is overlap missing") {
  CHECK(classify_types("un conjunto total red", {"total red"}, {"red"}) ==
        std::vector<std::string>{"overlap_missing"});
}

TEST_CASE("a prediction over-covering its gold is overlap spurious") {
  CHECK(classify_types("con el look gris", {"look"}, {"el look"}) ==
        std::vector<std::string>{"overlap_spurious"});
}

TEST_CASE("a boundary shift on a single pair yields both overlap flavors") {
  // The prediction misses a gold token and covers an extra one, so the
  // same pair is reported as overlap_missing and overlap_spurious.
  const auto result = bk::align_and_classify(
      gold_record("el negro time prime", {"time prime"}),
      spans({"negro time"}));
  CHECK(classify_types("el negro time prime", {"time prime"},
                       {"negro time"}) ==
        std::vector<std::string>{"overlap_missing", "overlap_spurious"});
  REQUIRE(result.records.size() == 2);
  for (const bk::ErrorRecord& record : result.records) {
    REQUIRE(record.gold.size() == 1);
    REQUIRE(record.predicted.size() == 1);
    CHECK(record.gold[0].located == result.records[0].gold[0].located);
    CHECK(record.predicted[0].located ==
          result.records[0].predicted[0].located);
  }
}

TEST_CASE("shifted boundaries with equal extent are missegmented") {
  CHECK(classify_types("veremos prime time show hoy", {"prime time", "show"},
                       {"prime", "time show"}) ==
        std::vector<std::string>{"missegmented"});
}

TEST_CASE("same range with a different label is a type error") {
  bk::AnnotatedSentence gold = gold_record("el look gris", {"look"});
  const auto result = bk::align_and_classify(gold, spans({"look"}, "FR"));
  CHECK(result.exact_matches == 0);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].type == bk::ErrorType::kType);
}

TEST_CASE("disjoint mistakes classify independently") {
  CHECK(classify_types("el global director visita el basket market",
                       {"global director"}, {"basket market"}) ==
        std::vector<std::string>{"missing", "spurious"});
  CHECK(classify_types("un look y un total black", {"look", "total black"},
                       {"black"}) ==
        std::vector<std::string>{"missing", "overlap_missing"});
}

TEST_CASE("classification ignores prediction order") {
  const std::string text = "veremos prime time show con casual looks";
  const std::vector<std::string> gold = {"prime time", "show", "casual looks"};
  std::vector<std::string> pred = {"prime", "time show", "casual", "looks"};
  const auto base = classify_types(text, gold, pred);
  std::mt19937 rng(7);
  for (int i = 0; i < 10; i++) {
    std::shuffle(pred.begin(), pred.end(), rng);
    CHECK(classify_types(text, gold, pred) == base);
  }
}

TEST_CASE("exact matches mirror the scorer") {
  std::mt19937 rng(55119);
  std::uniform_int_distribution<std::size_t> ntok(1, 10);
  std::uniform_int_distribution<std::size_t> count(0, 4);
  std::uniform_int_distribution<int> mode(0, 2);
  const auto& bank = testutil::word_bank();
  std::uniform_int_distribution<std::size_t> pick(0, bank.size() - 1);

  for (int iter = 0; iter < 500; iter++) {
    const std::size_t n = ntok(rng);
    std::vector<std::string> words;
    std::string text;
    for (std::size_t i = 0; i < n; i++) {
      if (i > 0) text += ' ';
      words.push_back(bank[pick(rng)]);
      text += words.back();
    }

    // Gold surfaces are real token ranges of the sentence.
    std::vector<std::string> gold;
    const std::size_t ng = count(rng);
    for (std::size_t i = 0; i < ng; i++) {
      std::uniform_int_distribution<std::size_t> first(0, n - 1);
      const std::size_t a = first(rng);
      std::uniform_int_distribution<std::size_t> last(a, std::min(a + 2, n - 1));
      const std::size_t b = last(rng);
      std::string surface;
      for (std::size_t t = a; t <= b; t++) {
        if (t > a) surface += ' ';
        surface += words[t];
      }
      gold.push_back(surface);
    }

    std::vector<std::string> pred;
    const std::size_t np = count(rng);
    for (std::size_t i = 0; i < np; i++) {
      std::string p = gold.empty() || mode(rng) == 0
                          ? testutil::random_phrase(rng, 2)
                          : gold[i % gold.size()];
      if (mode(rng) != 0) p = testutil::random_case(rng, p);
      pred.push_back(p);
    }

    const auto result =
        bk::align_and_classify(gold_record(text, gold), spans(pred));
    const bk::MatchCounts counts = bk::match_sentence(spans(gold), pred);
    CHECK(result.exact_matches == counts.tp);

    // Every gold span lands in exactly one place, except that a 1-to-1
    // overlap which both misses gold tokens and covers extra ones emits
    // the same pair under both overlap flavors.
    std::size_t recorded_gold = 0;
    for (const bk::ErrorRecord& record : result.records) {
      CHECK(!(record.gold.empty() && record.predicted.empty()));
      recorded_gold += record.gold.size();
    }
    std::size_t twins = 0;
    for (std::size_t i = 0; i < result.records.size(); i++) {
      const bk::ErrorRecord& a = result.records[i];
      if (a.type != bk::ErrorType::kOverlapMissing) continue;
      for (std::size_t j = 0; j < result.records.size(); j++) {
        const bk::ErrorRecord& b = result.records[j];
        if (b.type == bk::ErrorType::kOverlapSpurious &&
            a.gold[0].located == b.gold[0].located &&
            a.predicted[0].located == b.predicted[0].located) {
          twins++;
        }
      }
    }
    CHECK(result.exact_matches + recorded_gold - twins == gold.size());
  }
}

TEST_CASE("histograms carry all eight types and sum to the record count") {
  const auto result = bk::align_and_classify(
      gold_record("un look y un total black", {"look", "total black"}),
      spans({"black"}));
  const auto counts = bk::error_histogram(result.records);
  CHECK(counts.size() == bk::kNumErrorTypes);
  std::size_t total = 0;
  for (const auto& [type, n] : counts) total += n;
  CHECK(total == result.records.size());
  CHECK(counts.at(bk::ErrorType::kMissing) == 1);
  CHECK(counts.at(bk::ErrorType::kOverlapMissing) == 1);
  CHECK(counts.at(bk::ErrorType::kFused) == 0);

  CHECK(bk::format_histogram(counts) ==
        "missing 1\nspurious 0\ntype 0\noverlap_missing 1\n"
        "overlap_spurious 0\nsplit 0\nfused 0\nmissegmented 0\n");
}

TEST_CASE("error records print as semicolon separated rows") {
  const auto result = bk::align_and_classify(
      gold_record("estudia Marketing Online ahora", {"Marketing", "Online"}),
      spans({"Marketing Online"}));
  std::ostringstream out;
  bk::write_error_csv(out, result.records);
  CHECK(out.str() == "s1;Marketing|Online;Marketing Online;fused\n");
}
