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

#include <set>
#include <string>
#include <vector>

#include "borrowkit/variants.h"

namespace bk = borrowkit;

namespace {

bk::AnnotatedSentence make_record(const std::string& text,
                                  const std::vector<std::string>& spans) {
  bk::AnnotatedSentence record;
  record.sentence = bk::Sentence("s1", text);
  for (const std::string& s : spans) {
    bk::SpanAnnotation span;
    span.surface = s;
    record.spans.push_back(std::move(span));
  }
  return record;
}

}  // namespace

TEST_CASE("spec suffixes round trip") {
  const auto specs = bk::all_variant_specs();
  REQUIRE(specs.size() == 16);
  CHECK(specs[0] == bk::VariantSpec{});
  CHECK(specs[0].suffix() == "original-none");
  CHECK(specs[1].suffix() == "original-ascii-double");
  CHECK(specs[4].suffix() == "lower-none");
  CHECK(specs[15].suffix() == "title-angled");

  std::set<std::string> suffixes;
  for (const bk::VariantSpec& spec : specs) {
    CHECK(bk::parse_variant_suffix(spec.suffix()) == spec);
    suffixes.insert(spec.suffix());
  }
  CHECK(suffixes.size() == 16);

  CHECK_THROWS_AS(bk::parse_variant_suffix("original"), bk::ParseError);
  CHECK_THROWS_AS(bk::parse_variant_suffix("bold-none"), bk::ParseError);
  CHECK_THROWS_AS(bk::parse_variant_suffix("upper-single"), bk::ParseError);
}

TEST_CASE("variant ids split at the last hash") {
  const bk::VariantSpec spec{bk::Casing::kUpper, bk::QuoteMode::kAngled};
  CHECK(bk::variant_id("s7", spec) == "s7#upper-angled");

  const auto split = bk::split_variant_id("s7#upper-angled");
  CHECK(split.base == "s7");
  CHECK(split.spec == spec);

  const auto nested = bk::split_variant_id("s#1#lower-none");
  CHECK(nested.base == "s#1");
  CHECK(nested.spec == bk::VariantSpec{bk::Casing::kLower, bk::QuoteMode::kNone});

  CHECK_THROWS_AS(bk::split_variant_id("s1"), bk::ParseError);
  CHECK_THROWS_AS(bk::split_variant_id("s1#wrong"), bk::ParseError);
}

TEST_CASE("casing modes rewrite text preserving offsets") {
  const std::string text = "El «Look» Ñandú";
  CHECK(bk::apply_casing(text, bk::Casing::kOriginal) == text);
  CHECK(bk::apply_casing(text, bk::Casing::kLower) ==
        "el «look» ñandú");
  CHECK(bk::apply_casing(text, bk::Casing::kUpper) ==
        "EL «LOOK» ÑANDÚ");
  CHECK(bk::apply_casing("el look GRIS ya", bk::Casing::kTitle) ==
        "El Look Gris Ya");
  CHECK(bk::apply_casing("ñandú feliz", bk::Casing::kTitle) ==
        "Ñandú Feliz");
}

TEST_CASE("variants wrap claimed gold occurrences and recase the text") {
  const auto record = make_record("Un fatal error ocurre", {"fatal error"});

  const auto upper =
      bk::gen_variant(record, {bk::Casing::kUpper, bk::QuoteMode::kNone});
  CHECK(upper.sentence.text() == "UN FATAL ERROR OCURRE");
  CHECK(upper.sentence.id() == "s1#upper-none");
  REQUIRE(upper.spans.size() == 1);
  CHECK(upper.spans[0].surface == "FATAL ERROR");
  CHECK(!upper.spans[0].located.empty());

  const auto ascii =
      bk::gen_variant(record, {bk::Casing::kOriginal, bk::QuoteMode::kAsciiDouble});
  CHECK(ascii.sentence.text() == "Un \"fatal error\" ocurre");

  const auto curly =
      bk::gen_variant(record, {bk::Casing::kOriginal, bk::QuoteMode::kCurlyDouble});
  CHECK(curly.sentence.text() == "Un “fatal error” ocurre");

  const auto angled =
      bk::gen_variant(record, {bk::Casing::kUpper, bk::QuoteMode::kAngled});
  CHECK(angled.sentence.text() == "UN «FATAL ERROR» OCURRE");
  CHECK(angled.spans[0].surface == "FATAL ERROR");

  const auto identity = bk::gen_variant(record, bk::VariantSpec{});
  CHECK(identity.sentence.text() == record.sentence.text());
  CHECK(identity.sentence.id() == "s1#original-none");
}

TEST_CASE("duplicate gold values claim distinct occurrences") {
  const auto record = make_record("el look y otro look", {"look", "look"});
  const auto variant =
      bk::gen_variant(record, {bk::Casing::kOriginal, bk::QuoteMode::kAngled});
  CHECK(variant.sentence.text() == "el «look» y otro «look»");
  CHECK(variant.spans.size() == 2);
}

TEST_CASE("unlocatable gold spans abort variant generation") {
  const auto record = make_record("el look", {"zzz"});
  CHECK_THROWS_AS(bk::gen_variant(record, bk::VariantSpec{}),
                  bk::UnlocatableSpanError);
}

TEST_CASE("every variant keeps its own gold self consistent") {
  const auto record =
      make_record("Veremos prime time y un look total", {"prime time", "look"});
  const auto specs = bk::all_variant_specs();
  const auto variants = bk::gen_variants(record, specs);
  REQUIRE(variants.size() == specs.size());
  std::set<std::string> ids;
  for (std::size_t i = 0; i < variants.size(); i++) {
    const auto split = bk::split_variant_id(variants[i].sentence.id());
    CHECK(split.base == "s1");
    CHECK(split.spec == specs[i]);
    ids.insert(variants[i].sentence.id());
    CHECK(variants[i].spans.size() == record.spans.size());

    const auto self = bk::score_corpus({variants[i]}, {variants[i]});
    CHECK(self.report.f1 == doctest::Approx(1.0));
  }
  CHECK(ids.size() == variants.size());
}

TEST_CASE("consistency reports pick the original baseline and flag drift") {
  const auto gold = make_record("el look gris", {"look"});
  const auto hit = make_record("el look gris", {"look"});
  const auto miss = make_record("EL LOOK GRIS", {});
  const auto upper_gold = make_record("EL LOOK GRIS", {"LOOK"});

  std::vector<bk::VariantSlice> slices(2);
  slices[0].spec = {bk::Casing::kUpper, bk::QuoteMode::kNone};
  slices[0].gold = {upper_gold};
  slices[0].predicted = {miss};
  slices[1].spec = bk::VariantSpec{};
  slices[1].gold = {gold};
  slices[1].predicted = {hit};

  const auto report = bk::consistency_report(slices, 0.05);
  REQUIRE(report.scores.size() == 2);
  CHECK(report.baseline == bk::VariantSpec{});
  CHECK(report.baseline_f1 == doctest::Approx(1.0));
  CHECK(report.scores[0].flagged);        // f1 0 vs baseline 1
  CHECK(!report.scores[1].flagged);
  CHECK(report.scores[0].spec == slices[0].spec);

  // Without an original-none slice the first slice is the baseline.
  std::vector<bk::VariantSlice> no_original = {slices[0]};
  const auto fallback = bk::consistency_report(no_original, 0.05);
  CHECK(fallback.baseline == slices[0].spec);
  CHECK(!fallback.scores[0].flagged);

  // Drift exactly at delta is tolerated.
  const auto wide = bk::consistency_report(slices, 1.0);
  CHECK(!wide.scores[0].flagged);

  CHECK(bk::consistency_report({}, 0.05).scores.empty());
  CHECK(bk::format_consistency_report(bk::consistency_report({}, 0.05)) == "");
}

TEST_CASE("consistency reports print one line per spec plus a baseline") {
  const auto gold = make_record("el look gris", {"look"});
  std::vector<bk::VariantSlice> slices(1);
  slices[0].spec = bk::VariantSpec{};
  slices[0].gold = {gold};
  slices[0].predicted = {gold};

  const auto report = bk::consistency_report(slices, 0.05);
  CHECK(bk::format_consistency_report(report) ==
        "original-none tp 1 fp 0 fn 0 precision 1.0000 recall 1.0000 "
        "f1 1.0000\n"
        "baseline original-none f1 1.0000 delta 0.0500\n");

  std::vector<bk::VariantSlice> drifted(2);
  drifted[0].spec = bk::VariantSpec{};
  drifted[0].gold = {gold};
  drifted[0].predicted = {gold};
  drifted[1].spec = {bk::Casing::kUpper, bk::QuoteMode::kNone};
  drifted[1].gold = {make_record("EL LOOK GRIS", {"LOOK"})};
  drifted[1].predicted = {make_record("EL LOOK GRIS", {})};
  const auto flagged = bk::consistency_report(drifted, 0.05);
  CHECK(bk::format_consistency_report(flagged) ==
        "original-none tp 1 fp 0 fn 0 precision 1.0000 recall 1.0000 "
        "f1 1.0000\n"
        "upper-none tp 0 fp 0 fn 1 precision 0.0000 recall 0.0000 "
        "f1 0.0000 flagged\n"
        "baseline original-none f1 1.0000 delta 0.0500\n");
}
