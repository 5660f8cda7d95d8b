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
// borrowkit command-line tool. One subcommand per workflow:
//
//   score     strict-span P/R/F1 of predictions against gold
//   errors    error typology report and histogram
//   detect    gazetteer rule detector over a corpus
//   train     logistic-regression token detector from BIO or CSV data
//   predict   token detector inference plus multiword merging
//   variants  casing/quote variant generation and consistency report
//   convert   CSV <-> BIO, streaming
//
// Exit codes: 0 success, 1 internal error, 2 input or format error,
// 3 validation warnings under --strict. All outputs are deterministic:
// identical inputs and flags give byte-identical bytes.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "borrowkit/corpus.h"
#include "borrowkit/error_typology.h"
#include "borrowkit/errors.h"
#include "borrowkit/logreg.h"
#include "borrowkit/parallel.h"
#include "borrowkit/rules.h"
#include "borrowkit/score.h"
#include "borrowkit/stat_features.h"
#include "borrowkit/variants.h"

namespace bk = borrowkit;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bk::Error("cannot open '" + path + "' for reading");
  return in;
}

// Writes to the given path, or to stdout when the path is empty.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) {
        throw bk::Error("cannot open '" + path + "' for writing");
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void print_warnings(const std::vector<bk::ReadWarning>& warnings,
                    const std::string& path) {
  for (const bk::ReadWarning& w : warnings) {
    std::cerr << "warning: " << path;
    if (w.line > 0) std::cerr << ":" << w.line;
    std::cerr << ": " << w.message << '\n';
  }
}

std::vector<bk::AnnotatedSentence> load_csv(const std::string& path,
                                            bk::SpanValidation policy,
                                            std::size_t* num_warnings
                                            = nullptr) {
  std::ifstream in = open_input(path);
  std::vector<bk::ReadWarning> warnings;
  std::vector<bk::AnnotatedSentence> records = bk::read_csv(in, &warnings);
  const std::vector<bk::ReadWarning> more =
      bk::validate_records(&records, policy);
  warnings.insert(warnings.end(), more.begin(), more.end());
  print_warnings(warnings, path);
  if (num_warnings != nullptr) *num_warnings += warnings.size();
  return records;
}

bk::Lexicons load_lexicons(const std::string& spanish_path,
                           const std::string& english_path) {
  std::ifstream spanish = open_input(spanish_path);
  std::ifstream english = open_input(english_path);
  return bk::Lexicons::from_streams(spanish, english);
}

std::vector<bk::VariantSpec> parse_spec_list(const std::string& csv) {
  if (csv.empty()) return bk::all_variant_specs();
  std::vector<bk::VariantSpec> specs;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t end = csv.find(',', pos);
    if (end == std::string::npos) end = csv.size();
    const std::string item = csv.substr(pos, end - pos);
    if (!item.empty()) specs.push_back(bk::parse_variant_suffix(item));
    pos = end + 1;
  }
  if (specs.empty()) throw bk::ParseError("empty variant spec list");
  return specs;
}

// ---- score ----------------------------------------------------------

struct ScoreOpts {
  std::string gold_path;
  std::string pred_path;
  std::string format = "table";
  bool strict = false;
};

int run_score(const ScoreOpts& opts) {
  std::size_t num_warnings = 0;
  const auto gold =
      load_csv(opts.gold_path, bk::SpanValidation::kEnforce, nullptr);
  const auto pred =
      load_csv(opts.pred_path, bk::SpanValidation::kWarn, &num_warnings);
  const bk::CorpusScore result = bk::score_corpus(gold, pred);
  for (const bk::ScoreWarning& w : result.warnings) {
    std::cerr << "warning: record " << w.index + 1 << ": " << w.message
              << '\n';
  }
  std::cout << (opts.format == "kv" ? bk::format_report_kv(result.report)
                                    : bk::format_report_table(result.report));
  if (opts.strict && (num_warnings > 0 || !result.warnings.empty())) return 3;
  return 0;
}

// ---- errors ---------------------------------------------------------

struct ErrorsOpts {
  std::string gold_path;
  std::string pred_path;
  std::string out_path;
};

int run_errors(const ErrorsOpts& opts) {
  const auto gold =
      load_csv(opts.gold_path, bk::SpanValidation::kEnforce, nullptr);
  const auto pred =
      load_csv(opts.pred_path, bk::SpanValidation::kWarn, nullptr);
  if (gold.size() != pred.size()) {
    throw bk::LengthMismatchError(
        "gold has " + std::to_string(gold.size()) + " records, predictions " +
        std::to_string(pred.size()));
  }
  std::vector<bk::ErrorRecord> records;
  for (std::size_t i = 0; i < gold.size(); i++) {
    bk::AlignmentResult result =
        bk::align_and_classify(gold[i], pred[i].spans);
    records.insert(records.end(),
                   std::make_move_iterator(result.records.begin()),
                   std::make_move_iterator(result.records.end()));
  }
  OutputTarget out(opts.out_path);
  bk::write_error_csv(out.stream(), records);
  std::cout << bk::format_histogram(bk::error_histogram(records));
  return 0;
}

// ---- detect ---------------------------------------------------------

struct DetectOpts {
  std::string gazetteer_path;
  std::string exclusions_path;
  std::string input_path;
  std::string output_path;
  bk::RuleConfig config;
};

int run_detect(const DetectOpts& opts) {
  std::ifstream entries = open_input(opts.gazetteer_path);
  bk::Gazetteer gazetteer;
  if (!opts.exclusions_path.empty()) {
    std::ifstream exclusions = open_input(opts.exclusions_path);
    gazetteer = bk::Gazetteer::load(entries, &exclusions);
  } else {
    gazetteer = bk::Gazetteer::load(entries, nullptr);
  }
  auto records = load_csv(opts.input_path, bk::SpanValidation::kNone);
  std::vector<std::vector<bk::SpanAnnotation>> detected(records.size());
  bk::parallel_for(records.size(), [&](std::size_t i) {
    detected[i] = bk::detect(records[i].sentence, gazetteer, opts.config);
  });
  for (std::size_t i = 0; i < records.size(); i++) {
    records[i].spans = std::move(detected[i]);
  }
  OutputTarget out(opts.output_path);
  bk::write_csv(out.stream(), records);
  return 0;
}

// ---- train ----------------------------------------------------------

struct TrainOpts {
  std::string bio_path;
  std::string csv_path;
  std::string spanish_path;
  std::string english_path;
  std::string model_path;
  bk::Hyperparams params;
  double threshold = 0.5;
};

// A token is a positive example when it lies inside a located gold span
// occurrence.
std::vector<int> token_labels(const bk::AnnotatedSentence& record) {
  const bk::Sentence& sentence = record.sentence;
  std::vector<int> labels(sentence.num_tokens(), 0);
  for (const bk::SpanAnnotation& span : record.spans) {
    for (const bk::CharRange& range : span.located) {
      for (std::size_t t = 0; t < sentence.num_tokens(); t++) {
        const bk::Token& token = sentence.tokens()[t];
        if (token.start >= range.start && token.end <= range.end) {
          labels[t] = 1;
        }
      }
    }
  }
  return labels;
}

int run_train(const TrainOpts& opts) {
  std::vector<bk::AnnotatedSentence> records;
  if (!opts.bio_path.empty()) {
    std::ifstream in = open_input(opts.bio_path);
    std::vector<bk::ReadWarning> warnings;
    records = bk::read_bio(in, &warnings);
    print_warnings(warnings, opts.bio_path);
  } else {
    records = load_csv(opts.csv_path, bk::SpanValidation::kEnforce);
  }
  const bk::Lexicons lexicons =
      load_lexicons(opts.spanish_path, opts.english_path);

  std::vector<bk::TrainingExample> examples;
  for (const bk::AnnotatedSentence& record : records) {
    const std::vector<int> labels = token_labels(record);
    for (std::size_t t = 0; t < record.sentence.num_tokens(); t++) {
      const bk::FeatureVector fv =
          bk::extract_features(record.sentence, t, lexicons);
      bk::TrainingExample example;
      example.features.assign(fv.begin(), fv.end());
      example.label = labels[t];
      examples.push_back(std::move(example));
    }
  }
  bk::TrainResult result =
      bk::train(examples, bk::feature_name_list(), opts.params);
  result.model.threshold = opts.threshold;
  OutputTarget out(opts.model_path);
  result.model.save(out.stream());
  std::cerr << "trained on " << examples.size() << " tokens, final loss "
            << (result.loss_trace.empty() ? 0.0 : result.loss_trace.back())
            << '\n';
  return 0;
}

// ---- predict --------------------------------------------------------

struct PredictOpts {
  std::string model_path;
  std::string input_path;
  std::string spanish_path;
  std::string english_path;
  std::string output_path;
  double threshold = -1.0;  // <0: use the model's threshold
  bool no_bridge = false;
};

int run_predict(const PredictOpts& opts) {
  std::ifstream model_in = open_input(opts.model_path);
  bk::Model model = bk::Model::load(model_in);
  if (opts.threshold >= 0.0) model.threshold = opts.threshold;
  const bk::Lexicons lexicons =
      load_lexicons(opts.spanish_path, opts.english_path);
  auto records = load_csv(opts.input_path, bk::SpanValidation::kNone);

  bk::MergeConfig merge;
  merge.threshold = model.threshold;
  merge.bridge_function_words = !opts.no_bridge;

  std::vector<std::vector<bk::SpanAnnotation>> predicted(records.size());
  bk::parallel_for(records.size(), [&](std::size_t i) {
    const std::vector<double> probs =
        bk::predict_tokens(model, records[i].sentence, lexicons);
    predicted[i] = bk::merge_multiword(records[i].sentence, probs, merge);
  });
  for (std::size_t i = 0; i < records.size(); i++) {
    records[i].spans = std::move(predicted[i]);
  }
  OutputTarget out(opts.output_path);
  bk::write_csv(out.stream(), records);
  return 0;
}

// ---- variants -------------------------------------------------------

struct VariantsOpts {
  std::string input_path;
  std::string output_path;
  std::string pred_path;
  std::string specs_csv;
  bool report = false;
  double delta = 0.05;
};

int run_variants(const VariantsOpts& opts) {
  const std::vector<bk::VariantSpec> specs = parse_spec_list(opts.specs_csv);
  const auto records =
      load_csv(opts.input_path, bk::SpanValidation::kEnforce);

  if (!opts.report) {
    // Record-major emission: all specs of record 1, then of record 2, ...
    std::vector<bk::AnnotatedSentence> variants;
    variants.reserve(records.size() * specs.size());
    for (const bk::AnnotatedSentence& record : records) {
      for (const bk::VariantSpec& spec : specs) {
        variants.push_back(bk::gen_variant(record, spec));
      }
    }
    OutputTarget out(opts.output_path);
    bk::write_csv(out.stream(), variants);
    return 0;
  }

  const auto pred = load_csv(opts.pred_path, bk::SpanValidation::kWarn);
  if (pred.size() != records.size() * specs.size()) {
    throw bk::LengthMismatchError(
        "expected " + std::to_string(records.size() * specs.size()) +
        " prediction records (" + std::to_string(records.size()) +
        " sentences x " + std::to_string(specs.size()) + " specs), got " +
        std::to_string(pred.size()));
  }
  std::vector<bk::VariantSlice> slices(specs.size());
  for (std::size_t k = 0; k < specs.size(); k++) slices[k].spec = specs[k];
  for (std::size_t i = 0; i < records.size(); i++) {
    for (std::size_t k = 0; k < specs.size(); k++) {
      slices[k].gold.push_back(bk::gen_variant(records[i], specs[k]));
      slices[k].predicted.push_back(pred[i * specs.size() + k]);
    }
  }
  const bk::ConsistencyReport report =
      bk::consistency_report(slices, opts.delta);
  std::cout << bk::format_consistency_report(report);
  return 0;
}

// ---- convert --------------------------------------------------------

struct ConvertOpts {
  std::string from;
  std::string to;
  std::string input_path;
  std::string output_path;
};

int run_convert(const ConvertOpts& opts) {
  std::ifstream in = open_input(opts.input_path);
  OutputTarget out(opts.output_path);
  if (opts.from == "csv") {
    bk::CsvReader reader(in);
    while (auto record = reader.next()) {
      if (opts.to == "bio") {
        bk::write_bio(out.stream(), *record);
      } else {
        out.stream() << bk::format_csv_record(*record) << '\n';
      }
    }
  } else {
    bk::BioReader reader(in);
    std::size_t printed = 0;
    while (auto record = reader.next()) {
      for (; printed < reader.warnings().size(); printed++) {
        const bk::ReadWarning& w = reader.warnings()[printed];
        std::cerr << "warning: " << opts.input_path << ":" << w.line << ": "
                  << w.message << '\n';
      }
      if (opts.to == "csv") {
        out.stream() << bk::format_csv_record(*record) << '\n';
      } else {
        bk::write_bio(out.stream(), *record);
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anglicism detection and span-level evaluation toolkit"};
  app.require_subcommand(1);

  ScoreOpts score_opts;
  CLI::App* score_cmd =
      app.add_subcommand("score", "strict-span P/R/F1 against gold");
  score_cmd->add_option("--gold", score_opts.gold_path, "gold CSV")
      ->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--pred", score_opts.pred_path, "predictions CSV")
      ->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--format", score_opts.format, "report format")
      ->check(CLI::IsMember({"table", "kv"}));
  score_cmd->add_flag("--strict", score_opts.strict,
                      "exit 3 when any validation warning fires");

  ErrorsOpts errors_opts;
  CLI::App* errors_cmd =
      app.add_subcommand("errors", "error typology report and histogram");
  errors_cmd->add_option("--gold", errors_opts.gold_path, "gold CSV")
      ->required()->check(CLI::ExistingFile);
  errors_cmd->add_option("--pred", errors_opts.pred_path, "predictions CSV")
      ->required()->check(CLI::ExistingFile);
  errors_cmd->add_option("--out", errors_opts.out_path,
                         "error report CSV path (default stdout)");

  DetectOpts detect_opts;
  CLI::App* detect_cmd =
      app.add_subcommand("detect", "gazetteer rule detector");
  detect_cmd
      ->add_option("--gazetteer", detect_opts.gazetteer_path,
                   "entry list, one phrase per line, optional "
                   "'<TAB>ambiguous' flag")
      ->required()->check(CLI::ExistingFile);
  detect_cmd
      ->add_option("--exclusions", detect_opts.exclusions_path,
                   "exclusion phrases, one per line")
      ->check(CLI::ExistingFile);
  detect_cmd->add_option("--input", detect_opts.input_path, "input CSV")
      ->required()->check(CLI::ExistingFile);
  detect_cmd->add_option("--output", detect_opts.output_path,
                         "output CSV path (default stdout)");
  detect_cmd->add_flag_callback(
      "--no-context",
      [&]() { detect_opts.config.require_context_for_ambiguous = false; },
      "fire ambiguous entries without contextual triggers");
  detect_cmd->add_flag_callback(
      "--no-exclusions",
      [&]() { detect_opts.config.use_exclusions = false; },
      "ignore the exclusion list");
  detect_cmd->add_option("--max-phrase-tokens",
                         detect_opts.config.max_phrase_tokens,
                         "longest entry match, in tokens")
      ->check(CLI::PositiveNumber);
  detect_cmd->add_flag_callback(
      "--no-trigger-quotes",
      [&]() { detect_opts.config.trigger_quotes = false; },
      "disable the quote-enclosure trigger");
  detect_cmd->add_flag_callback(
      "--no-trigger-adjacency",
      [&]() { detect_opts.config.trigger_adjacency = false; },
      "disable the adjacency trigger");
  detect_cmd->add_flag_callback(
      "--no-trigger-capitalization",
      [&]() { detect_opts.config.trigger_capitalization = false; },
      "disable the mid-sentence capitalization trigger");

  TrainOpts train_opts;
  CLI::App* train_cmd = app.add_subcommand(
      "train", "train the logistic-regression token detector");
  CLI::Option* bio_opt =
      train_cmd->add_option("--bio", train_opts.bio_path, "BIO training file")
          ->check(CLI::ExistingFile);
  train_cmd->add_option("--csv", train_opts.csv_path, "CSV training file")
      ->check(CLI::ExistingFile)->excludes(bio_opt);
  train_cmd
      ->add_option("--spanish", train_opts.spanish_path, "Spanish wordlist")
      ->required()->check(CLI::ExistingFile);
  train_cmd
      ->add_option("--english", train_opts.english_path, "English wordlist")
      ->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--model", train_opts.model_path,
                        "model output path (default stdout)");
  train_cmd->add_option("--lr", train_opts.params.learning_rate,
                        "learning rate");
  train_cmd->add_option("--epochs", train_opts.params.epochs, "epochs");
  train_cmd->add_option("--l2", train_opts.params.l2, "L2 strength");
  train_cmd->add_option("--threshold", train_opts.threshold,
                        "decision threshold stored in the model");

  PredictOpts predict_opts;
  CLI::App* predict_cmd = app.add_subcommand(
      "predict", "token detector inference plus multiword merging");
  predict_cmd->add_option("--model", predict_opts.model_path, "model file")
      ->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--input", predict_opts.input_path, "input CSV")
      ->required()->check(CLI::ExistingFile);
  predict_cmd
      ->add_option("--spanish", predict_opts.spanish_path, "Spanish wordlist")
      ->required()->check(CLI::ExistingFile);
  predict_cmd
      ->add_option("--english", predict_opts.english_path, "English wordlist")
      ->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--output", predict_opts.output_path,
                          "output CSV path (default stdout)");
  predict_cmd->add_option("--threshold", predict_opts.threshold,
                          "override the model's decision threshold");
  predict_cmd->add_flag("--no-bridge", predict_opts.no_bridge,
                        "do not bridge function words between positive runs");

  VariantsOpts variants_opts;
  CLI::App* variants_cmd = app.add_subcommand(
      "variants", "casing/quote variant generation and consistency report");
  variants_cmd->add_option("--input", variants_opts.input_path, "gold CSV")
      ->required()->check(CLI::ExistingFile);
  variants_cmd->add_option("--output", variants_opts.output_path,
                           "variant CSV path (default stdout)");
  CLI::Option* report_flag = variants_cmd->add_flag(
      "--report", variants_opts.report,
      "score predictions per variant spec instead of generating");
  variants_cmd
      ->add_option("--pred", variants_opts.pred_path,
                   "predictions CSV over the generated variant corpus")
      ->check(CLI::ExistingFile)->needs(report_flag);
  variants_cmd->add_option(
      "--specs", variants_opts.specs_csv,
      "comma-separated spec suffixes, e.g. original-none,upper-angled "
      "(default: all 16)");
  variants_cmd->add_option("--delta", variants_opts.delta,
                           "F1 drift that flags a spec");

  ConvertOpts convert_opts;
  CLI::App* convert_cmd =
      app.add_subcommand("convert", "convert between CSV and BIO, streaming");
  convert_cmd->add_option("--from", convert_opts.from, "input format")
      ->required()->check(CLI::IsMember({"csv", "bio"}));
  convert_cmd->add_option("--to", convert_opts.to, "output format")
      ->required()->check(CLI::IsMember({"csv", "bio"}));
  convert_cmd->add_option("--input", convert_opts.input_path, "input file")
      ->required()->check(CLI::ExistingFile);
  convert_cmd->add_option("--output", convert_opts.output_path,
                          "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (score_cmd->parsed()) return run_score(score_opts);
    if (errors_cmd->parsed()) return run_errors(errors_opts);
    if (detect_cmd->parsed()) return run_detect(detect_opts);
    if (train_cmd->parsed()) {
      if (train_opts.bio_path.empty() && train_opts.csv_path.empty()) {
        std::cerr << "error: train needs --bio or --csv\n";
        return 2;
      }
      return run_train(train_opts);
    }
    if (predict_cmd->parsed()) return run_predict(predict_opts);
    if (variants_cmd->parsed()) {
      if (variants_opts.report && variants_opts.pred_path.empty()) {
        std::cerr << "error: variants --report needs --pred\n";
        return 2;
      }
      return run_variants(variants_opts);
    }
    if (convert_cmd->parsed()) return run_convert(convert_opts);
  } catch (const bk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
