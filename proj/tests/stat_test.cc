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
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "borrowkit/logreg.h"
#include "borrowkit/stat_features.h"
#include "borrowkit/text.h"
#include "testutil.h"

namespace bk = borrowkit;

namespace {

bk::Lexicons make_lexicons(const std::vector<std::string>& spanish,
                           const std::vector<std::string>& english) {
  bk::Lexicons lexicons;
  for (const std::string& w : spanish) lexicons.spanish.insert(w);
  for (const std::string& w : english) lexicons.english.insert(w);
  return lexicons;
}

bk::FeatureVector features_of(const std::string& text, std::size_t index,
                              const bk::Lexicons& lexicons) {
  const bk::Sentence sentence("s1", text);
  return bk::extract_features(sentence, index, lexicons);
}

// The registry-ordered identity model with chosen weight overrides.
bk::Model make_model(const std::vector<std::pair<bk::FeatureIndex, double>>&
                         overrides,
                     double bias) {
  bk::Model model;
  model.feature_names = bk::feature_name_list();
  model.weights.assign(bk::kFeatureCount, 0.0);
  for (const auto& [index, weight] : overrides) {
    model.weights[index] = weight;
  }
  model.bias = bias;
  return model;
}

}  // namespace

TEST_CASE("the feature registry is fixed and named") {
  const auto names = bk::feature_name_list();
  REQUIRE(names.size() == bk::kFeatureCount);
  CHECK(names[bk::kHasKOrW] == "has_k_or_w");
  CHECK(names[bk::kPosTagSlot] == "pos_tag_slot");
}

TEST_CASE("lexicons casefold entries and queries") {
  std::istringstream spanish("Casa\r\n\nmoda\n");
  std::istringstream english("Look\nSTREAMING\n");
  const auto lexicons = bk::Lexicons::from_streams(spanish, english);
  CHECK(lexicons.spanish.size() == 2);
  CHECK(lexicons.in_spanish("casa"));
  CHECK(lexicons.in_spanish("moda"));
  CHECK(lexicons.in_english("look"));
  CHECK(lexicons.in_english("streaming"));
  CHECK(!lexicons.in_english("casa"));
}

TEST_CASE("orthographic features flag non spanish shapes") {
  const auto lexicons = make_lexicons({}, {"running"});
  const auto fv = features_of("el running diario", 1, lexicons);
  CHECK(fv[bk::kHasKOrW] == 0.0);
  CHECK(fv[bk::kHasNonSpanishCharSequence] == 1.0);  // ends in "ing"
  CHECK(fv[bk::kEndsInInvalidSpanishCoda] == 1.0);   // final 'g'
  CHECK(fv[bk::kInEnglishLexicon] == 1.0);
  CHECK(fv[bk::kInSpanishLexicon] == 0.0);
  CHECK(fv[bk::kInBothLexicons] == 0.0);
  CHECK(fv[bk::kEnglishBigramScoreHigh] == 1.0);     // "ng"
  CHECK(fv[bk::kSentenceInitial] == 0.0);

  const auto whisky = features_of("toma whisky ahora", 1, make_lexicons({}, {}));
  CHECK(whisky[bk::kHasKOrW] == 1.0);
  CHECK(whisky[bk::kHasNonSpanishCharSequence] == 1.0);  // consonant + 'y'
  CHECK(whisky[bk::kEndsInInvalidSpanishCoda] == 0.0);   // 'y' is a valid coda
  CHECK(whisky[bk::kEnglishBigramScoreHigh] == 1.0);     // "wh"

  const auto casa = features_of("la casa azul", 1, make_lexicons({"casa"}, {}));
  CHECK(casa[bk::kHasKOrW] == 0.0);
  CHECK(casa[bk::kHasNonSpanishCharSequence] == 0.0);
  CHECK(casa[bk::kEndsInInvalidSpanishCoda] == 0.0);
  CHECK(casa[bk::kInSpanishLexicon] == 1.0);
  CHECK(casa[bk::kEnglishBigramScoreHigh] == 0.0);

  const auto red =
      features_of("la red social", 1, make_lexicons({"red"}, {"red"}));
  CHECK(red[bk::kInBothLexicons] == 1.0);
}

TEST_CASE("casing and position features read the sentence context") {
  const auto none = make_lexicons({}, {});

  const auto initial = features_of("Hola mundo", 0, none);
  CHECK(initial[bk::kSentenceInitial] == 1.0);
  CHECK(initial[bk::kIsCapitalizedMidSentence] == 0.0);

  // The first word token counts as initial even behind a quote token.
  const auto quoted_initial = features_of("“Hola” mundo", 1, none);
  CHECK(quoted_initial[bk::kSentenceInitial] == 1.0);

  const auto mid = features_of("el Look gris", 1, none);
  CHECK(mid[bk::kIsCapitalizedMidSentence] == 1.0);
  CHECK(mid[bk::kAllCapsToken] == 0.0);

  const auto caps = features_of("el LOOK gris", 1, none);
  CHECK(caps[bk::kAllCapsToken] == 1.0);
  CHECK(caps[bk::kIsCapitalizedMidSentence] == 1.0);

  const auto digits = features_of("vale 3.14 euros", 1, none);
  CHECK(digits[bk::kAllCapsToken] == 0.0);

  const auto quoted = features_of("un “look” gris", 2, none);
  CHECK(quoted[bk::kQuoteAdjacent] == 1.0);
  const auto plain = features_of("un look gris", 1, none);
  CHECK(plain[bk::kQuoteAdjacent] == 0.0);
}

TEST_CASE("neighbor and stem features consult the lexicons") {
  const auto lexicons = make_lexicons({"zapato", "color"}, {"look", "prime"});

  const auto next = features_of("un prime time", 1, lexicons);
  CHECK(next[bk::kPrevTokenInEnglishLexicon] == 0.0);
  CHECK(next[bk::kNextTokenInEnglishLexicon] == 0.0);
  const auto after = features_of("el prime look", 2, lexicons);
  CHECK(after[bk::kPrevTokenInEnglishLexicon] == 1.0);
  const auto before = features_of("el look prime", 1, lexicons);
  CHECK(before[bk::kNextTokenInEnglishLexicon] == 1.0);

  const auto zapatos = features_of("los zapatos rojos", 1, lexicons);
  CHECK(zapatos[bk::kStemInSpanish] == 1.0);
  CHECK(zapatos[bk::kStemInEnglish] == 0.0);
  const auto colores = features_of("los colores vivos", 1, lexicons);
  CHECK(colores[bk::kStemInSpanish] == 1.0);  // "-es" stem
  const auto looks = features_of("dos looks grises", 1, lexicons);
  CHECK(looks[bk::kStemInEnglish] == 1.0);
  CHECK(looks[bk::kStemInSpanish] == 0.0);
}

TEST_CASE("the pos tag slot defaults to zero and accepts a provider") {
  const auto none = make_lexicons({}, {});
  const bk::Sentence sentence("s1", "el look");
  CHECK(bk::extract_features(sentence, 1, none)[bk::kPosTagSlot] == 0.0);
  const auto fv = bk::extract_features(
      sentence, 1, none,
      [](const bk::Sentence&, std::size_t) { return 1.0; });
  CHECK(fv[bk::kPosTagSlot] == 1.0);
}

TEST_CASE("feature extraction is deterministic") {
  const auto lexicons = make_lexicons({"casa"}, {"look"});
  const bk::Sentence sentence("s1", "la Casa del “look” retro");
  for (std::size_t t = 0; t < sentence.num_tokens(); t++) {
    const auto a = bk::extract_features(sentence, t, lexicons);
    const auto b = bk::extract_features(sentence, t, lexicons);
    CHECK(a == b);
  }
}

TEST_CASE("token prediction weights features by name not position") {
  const auto lexicons = make_lexicons({}, {"look"});
  const bk::Sentence sentence("s1", "el look");

  const auto model = make_model({{bk::kInEnglishLexicon, 4.0}}, -2.0);
  const auto probs = bk::predict_tokens(model, sentence, lexicons);
  REQUIRE(probs.size() == 2);
  CHECK(probs[0] == doctest::Approx(bk::sigmoid(-2.0)));
  CHECK(probs[1] == doctest::Approx(bk::sigmoid(2.0)));

  // The same model with its rows permuted scores identically.
  bk::Model shuffled = model;
  std::mt19937 rng(3);
  std::vector<std::size_t> perm(bk::kFeatureCount);
  for (std::size_t i = 0; i < perm.size(); i++) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < perm.size(); i++) {
    shuffled.feature_names[i] = model.feature_names[perm[i]];
    shuffled.weights[i] = model.weights[perm[i]];
  }
  const auto shuffled_probs = bk::predict_tokens(shuffled, sentence, lexicons);
  for (std::size_t t = 0; t < probs.size(); t++) {
    CHECK(shuffled_probs[t] == doctest::Approx(probs[t]));
  }
}

TEST_CASE("token prediction rejects mismatched feature names") {
  const auto lexicons = make_lexicons({}, {});
  const bk::Sentence sentence("s1", "el look");

  bk::Model unknown = make_model({}, 0.0);
  unknown.feature_names[0] = "mystery_feature";
  CHECK_THROWS_AS(bk::predict_tokens(unknown, sentence, lexicons), bk::Error);

  bk::Model duplicate = make_model({}, 0.0);
  duplicate.feature_names[1] = duplicate.feature_names[0];
  CHECK_THROWS_AS(bk::predict_tokens(duplicate, sentence, lexicons), bk::Error);

  bk::Model short_model;
  short_model.feature_names = {"has_k_or_w"};
  short_model.weights = {1.0};
  CHECK_THROWS_AS(bk::predict_tokens(short_model, sentence, lexicons),
                  bk::Error);
}

TEST_CASE("positive runs merge into spans") {
  const bk::Sentence sentence("s1", "uno dos tres cuatro");
  const auto spans =
      bk::merge_multiword(sentence, {0.9, 0.8, 0.1, 0.7});
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].surface == "uno dos");
  CHECK(spans[1].surface == "cuatro");
  REQUIRE(spans[0].located.size() == 1);
  CHECK(sentence.slice(spans[0].located[0]) == "uno dos");

  CHECK(bk::merge_multiword(sentence, {0.1, 0.2, 0.3, 0.4}).empty());

  // The threshold is inclusive.
  const auto at = bk::merge_multiword(sentence, {0.5, 0.0, 0.0, 0.0});
  REQUIRE(at.size() == 1);
  CHECK(at[0].surface == "uno");
}

TEST_CASE("function words bridge two positive neighbors") {
  const bk::Sentence rock("s1", "rock and roll");
  const auto bridged = bk::merge_multiword(rock, {0.9, 0.1, 0.9});
  REQUIRE(bridged.size() == 1);
  CHECK(bridged[0].surface == "rock and roll");

  bk::MergeConfig no_bridge;
  no_bridge.bridge_function_words = false;
  const auto split = bk::merge_multiword(rock, {0.9, 0.1, 0.9}, no_bridge);
  REQUIRE(split.size() == 2);
  CHECK(split[0].surface == "rock");
  CHECK(split[1].surface == "roll");

  // Only the fixed function words bridge.
  const bk::Sentence other("s1", "rock y roll");
  CHECK(bk::merge_multiword(other, {0.9, 0.1, 0.9}).size() == 2);

  const bk::Sentence genitive("s1", "director de marketing");
  const auto de = bk::merge_multiword(genitive, {0.9, 0.1, 0.9});
  REQUIRE(de.size() == 1);
  CHECK(de[0].surface == "director de marketing");

  // A bridge word at the edge without a positive right neighbor stays out.
  const bk::Sentence tail("s1", "rock and roca");
  const auto edge = bk::merge_multiword(tail, {0.9, 0.1, 0.1});
  REQUIRE(edge.size() == 1);
  CHECK(edge[0].surface == "rock");
}

TEST_CASE("quote tokens never join spans") {
  const bk::Sentence sentence("s1", "rock “and” roll");
  // Tokens: rock, quote, and, quote, roll.
  const auto spans =
      bk::merge_multiword(sentence, {0.9, 0.9, 0.9, 0.9, 0.9});
  REQUIRE(spans.size() == 3);
  CHECK(spans[0].surface == "rock");
  CHECK(spans[1].surface == "and");
  CHECK(spans[2].surface == "roll");
}

TEST_CASE("sigmoid is stable and symmetric") {
  CHECK(bk::sigmoid(0.0) == doctest::Approx(0.5));
  CHECK(bk::sigmoid(50.0) == doctest::Approx(1.0));
  CHECK(bk::sigmoid(-50.0) == doctest::Approx(0.0));
  CHECK(bk::sigmoid(-800.0) == 0.0);  // no overflow
  for (double z : {0.1, 1.0, 3.5, 17.0}) {
    CHECK(bk::sigmoid(-z) == doctest::Approx(1.0 - bk::sigmoid(z)));
  }
}

TEST_CASE("the default learning rate is stable for the registry") {
  const double rate = bk::stable_learning_rate(bk::kFeatureCount, 1e-4);
  CHECK(rate == doctest::Approx(4.0 / (16.0 + 4e-4)));
  CHECK(bk::Hyperparams{}.learning_rate < rate);
}

TEST_CASE("the gradient at zero weights matches the closed form") {
  const std::vector<bk::TrainingExample> one = {{{0.5, 1.0, 0.0}, 1}};
  const auto grad = bk::loss_gradient({0.0, 0.0, 0.0}, 0.0, one, 0.0);
  REQUIRE(grad.size() == 4);
  CHECK(grad[0] == doctest::Approx(-0.25));
  CHECK(grad[1] == doctest::Approx(-0.5));
  CHECK(grad[2] == doctest::Approx(0.0));
  CHECK(grad[3] == doctest::Approx(-0.5));  // bias partial
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937 rng(61553);
  std::uniform_real_distribution<double> param(-2.0, 2.0);
  std::uniform_int_distribution<std::size_t> pick_dim(1, 6);
  std::uniform_int_distribution<std::size_t> pick_n(1, 20);

  for (int iter = 0; iter < 100; iter++) {
    const std::size_t dim = pick_dim(rng);
    const auto examples = testutil::random_dataset(rng, dim, pick_n(rng) + 1);
    std::vector<double> weights(dim);
    for (double& w : weights) w = param(rng);
    const double bias = param(rng);
    const double l2 = iter % 2 == 0 ? 0.0 : 0.1;

    const auto grad = bk::loss_gradient(weights, bias, examples, l2);
    for (std::size_t coord = 0; coord <= dim; coord++) {
      const double numeric =
          testutil::numeric_partial(weights, bias, examples, l2, coord, 1e-5);
      CHECK(testutil::relative_error(grad[coord], numeric) <= 1e-6);
    }
  }
}

TEST_CASE("training lowers the loss monotonically at the default rate") {
  std::mt19937 rng(7219);
  const auto examples = testutil::random_dataset(rng, 4, 40);
  std::vector<std::string> names = {"f0", "f1", "f2", "f3"};
  const auto result = bk::train(examples, names);
  REQUIRE(result.loss_trace.size() == bk::Hyperparams{}.epochs);
  for (std::size_t i = 1; i < result.loss_trace.size(); i++) {
    CHECK(result.loss_trace[i] <= result.loss_trace[i - 1] + 1e-12);
  }
  CHECK(result.model.weights.size() == 4);
}

TEST_CASE("training requires both classes") {
  std::vector<bk::TrainingExample> ones = {{{1.0}, 1}, {{0.0}, 1}};
  CHECK_THROWS_AS(bk::train(ones, {"f0"}), bk::DegenerateDatasetError);
  std::vector<bk::TrainingExample> zeros = {{{1.0}, 0}};
  CHECK_THROWS_AS(bk::train(zeros, {"f0"}), bk::DegenerateDatasetError);
}

TEST_CASE("a separable dataset trains to full accuracy") {
  std::vector<bk::TrainingExample> examples;
  for (int i = 0; i < 10; i++) {
    examples.push_back({{1.0}, 1});
    examples.push_back({{0.0}, 0});
  }
  bk::Hyperparams params;
  params.learning_rate = 0.5;
  params.epochs = 400;
  const auto result = bk::train(examples, {"f0"}, params);
  CHECK(result.model.score({1.0}) > 0.5);
  CHECK(result.model.score({0.0}) < 0.5);
}

TEST_CASE("model files round trip weights exactly") {
  bk::Model model;
  model.feature_names = {"f0", "f1", "f2", "f3"};
  model.weights = {1.0 / 3.0, -1.2345678901234567e-13, 4.9e-324, 0.0};
  model.bias = -0.1;
  model.threshold = 0.625;

  std::ostringstream out;
  model.save(out);
  std::istringstream in(out.str());
  const bk::Model back = bk::Model::load(in);

  CHECK(back.feature_names == model.feature_names);
  REQUIRE(back.weights.size() == model.weights.size());
  for (std::size_t j = 0; j < model.weights.size(); j++) {
    CHECK(back.weights[j] == model.weights[j]);
  }
  CHECK(back.bias == model.bias);
  CHECK(back.threshold == model.threshold);
}

TEST_CASE("model loading rejects malformed files") {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return bk::Model::load(in);
  };
  CHECK_THROWS_AS(load("bias 0\nthreshold 0.5\nbias 1\n"), bk::ParseError);
  CHECK_THROWS_AS(load("bias 0\nthreshold 0.5\nf0 1\nf0 2\n"), bk::ParseError);
  CHECK_THROWS_AS(load("threshold 0.5\n"), bk::ParseError);
  CHECK_THROWS_AS(load("bias 0\n"), bk::ParseError);
  CHECK_THROWS_AS(load("bias abc\nthreshold 0.5\n"), bk::ParseError);
  CHECK_THROWS_AS(load("bias 1.0x\nthreshold 0.5\n"), bk::ParseError);
  CHECK_THROWS_AS(load("bias\nthreshold 0.5\n"), bk::ParseError);
}

TEST_CASE("features train into a working token classifier") {
  const auto lexicons =
      make_lexicons({"la", "casa", "azul", "el", "gris"}, {"look", "streaming"});
  const std::vector<std::string> texts = {"el look gris", "la casa azul",
                                          "ver streaming hoy"};
  const std::vector<std::vector<int>> labels = {{0, 1, 0}, {0, 0, 0},
                                                {0, 1, 0}};

  std::vector<bk::TrainingExample> examples;
  for (std::size_t s = 0; s < texts.size(); s++) {
    const bk::Sentence sentence("s", texts[s]);
    for (std::size_t t = 0; t < sentence.num_tokens(); t++) {
      const auto fv = bk::extract_features(sentence, t, lexicons);
      bk::TrainingExample ex;
      ex.features.assign(fv.begin(), fv.end());
      ex.label = labels[s][t];
      examples.push_back(std::move(ex));
    }
  }

  const auto result = bk::train(examples, bk::feature_name_list());
  const bk::Sentence fresh("s1", "un look mas");
  const auto probs = bk::predict_tokens(result.model, fresh, lexicons);
  CHECK(probs[1] > 0.5);
  CHECK(probs[0] < 0.5);
  CHECK(probs[2] < 0.5);

  const auto spans = bk::merge_multiword(fresh, probs);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].surface == "look");
}
