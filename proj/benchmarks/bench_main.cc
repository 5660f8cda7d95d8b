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
// Microbenchmarks for the hot paths: tokenization, normalization, span
// location, corpus scoring, rule detection, and training.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "borrowkit/corpus.h"
#include "borrowkit/logreg.h"
#include "borrowkit/rules.h"
#include "borrowkit/score.h"
#include "borrowkit/text.h"

namespace bk = borrowkit;

namespace {

const char kSentence[] =
    "La influencer presentó su nuevo “look” con sneakers y un blazer "
    "oversize, puro prime time para los fans del streaming en español.";

std::vector<std::string> word_bank() {
  return {"look",  "total", "red",   "prime", "time", "online", "casual",
          "negro", "con",   "una",   "de",    "el",   "la",     "los",
          "casa",  "moda",  "estilo", "markt", "very", "nuevo"};
}

std::vector<bk::AnnotatedSentence> synth_corpus(std::size_t n) {
  std::mt19937 rng(12345);
  const std::vector<std::string> bank = word_bank();
  std::uniform_int_distribution<std::size_t> word(0, bank.size() - 1);
  std::uniform_int_distribution<std::size_t> len(5, 14);
  std::vector<bk::AnnotatedSentence> corpus;
  corpus.reserve(n);
  for (std::size_t i = 0; i < n; i++) {
    std::string text;
    std::vector<std::string> words;
    const std::size_t k = len(rng);
    for (std::size_t j = 0; j < k; j++) {
      if (j > 0) text += ' ';
      words.push_back(bank[word(rng)]);
      text += words.back();
    }
    bk::AnnotatedSentence record;
    record.sentence = bk::Sentence("s" + std::to_string(i + 1), text);
    bk::SpanAnnotation span;
    span.surface = words[k / 2];
    record.spans.push_back(span);
    corpus.push_back(std::move(record));
  }
  return corpus;
}

void BM_tokenize(benchmark::State& state) {
  const std::string text = kSentence;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bk::tokenize(text));
  }
}
BENCHMARK(BM_tokenize);

void BM_normalize_span(benchmark::State& state) {
  const std::string raw = "  “Prime Time”  ";
  for (auto _ : state) {
    benchmark::DoNotOptimize(bk::normalize_span(raw));
  }
}
BENCHMARK(BM_normalize_span);

void BM_locate_span(benchmark::State& state) {
  const bk::Sentence sentence("s1", kSentence);
  const std::string span = "prime time";
  for (auto _ : state) {
    benchmark::DoNotOptimize(bk::locate_span(sentence, span));
  }
}
BENCHMARK(BM_locate_span);

void BM_score_corpus(benchmark::State& state) {
  const auto gold = synth_corpus(static_cast<std::size_t>(state.range(0)));
  auto pred = gold;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bk::score_corpus(gold, pred));
  }
}
BENCHMARK(BM_score_corpus)->Arg(100)->Arg(1000);

void BM_detect(benchmark::State& state) {
  std::istringstream entries(
      "look\tambiguous\nprime time\nsneakers\nblazer\nstreaming\n"
      "total red\tambiguous\nonline\n");
  const bk::Gazetteer gazetteer = bk::Gazetteer::load(entries, nullptr);
  const bk::Sentence sentence("s1", kSentence);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bk::detect(sentence, gazetteer));
  }
}
BENCHMARK(BM_detect);

void BM_train(benchmark::State& state) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<bk::TrainingExample> examples;
  for (int i = 0; i < 200; i++) {
    bk::TrainingExample example;
    example.label = i % 2;
    for (int j = 0; j < 8; j++) {
      example.features.push_back(coin(rng) < (example.label ? 0.7 : 0.3));
    }
    examples.push_back(std::move(example));
  }
  const std::vector<std::string> names = {"f0", "f1", "f2", "f3",
                                          "f4", "f5", "f6", "f7"};
  bk::Hyperparams params;
  params.epochs = 50;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bk::train(examples, names, params));
  }
}
BENCHMARK(BM_train);

}  // namespace

BENCHMARK_MAIN();
