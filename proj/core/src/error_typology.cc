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

#include "borrowkit/error_typology.h"

#include <algorithm>
#include <ostream>
#include <set>
#include <utility>

namespace borrowkit {

namespace {

struct Located {
  SpanAnnotation span;    // located filled with the claimed occurrence
  TokenSpan tokens;
  std::vector<std::size_t> covered;  // non-quote token indices
  bool has_range = false;
};

bool sets_overlap(const std::vector<std::size_t>& a,
                  const std::vector<std::size_t>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) i++;
    else j++;
  }
  return false;
}

bool subset_of(const std::vector<std::size_t>& a,
               const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Claims the earliest occurrence whose tokens are all unclaimed on this
// side; falls back to the earliest occurrence.
Located claim(const Sentence& sentence, const SpanAnnotation& span,
              std::set<std::size_t>* claimed) {
  Located out;
  out.span = span;
  out.span.located.clear();
  const std::vector<TokenSpan> occurrences =
      locate_span_tokens(sentence, span.surface);
  if (occurrences.empty()) return out;
  const TokenSpan* chosen = nullptr;
  for (const TokenSpan& ts : occurrences) {
    bool free = true;
    for (std::size_t t : covered_tokens(sentence, ts)) {
      if (claimed->count(t) > 0) {
        free = false;
        break;
      }
    }
    if (free) {
      chosen = &ts;
      break;
    }
  }
  if (chosen == nullptr) chosen = &occurrences.front();
  out.tokens = *chosen;
  out.covered = covered_tokens(sentence, *chosen);
  out.has_range = true;
  out.span.located.push_back(sentence.token_chars(*chosen));
  for (std::size_t t : out.covered) claimed->insert(t);
  return out;
}

struct Classifier {
  const Sentence& sentence;
  std::vector<ErrorRecord>* records;

  void emit(ErrorType type, const std::vector<Located>& gold,
            const std::vector<Located>& pred) {
    ErrorRecord record;
    record.sentence_id = sentence.id();
    record.type = type;
    for (const Located& g : gold) record.gold.push_back(g.span);
    for (const Located& p : pred) record.predicted.push_back(p.span);
    records->push_back(std::move(record));
  }

  void emit_one_to_one(const Located& g, const Located& p) {
    if (g.tokens == p.tokens) {
      if (g.span.label != p.span.label) emit(ErrorType::kType, {g}, {p});
      return;
    }
    bool gold_uncovered = false;
    for (std::size_t t : g.covered) {
      if (!std::binary_search(p.covered.begin(), p.covered.end(), t)) {
        gold_uncovered = true;
        break;
      }
    }
    bool pred_extra = false;
    for (std::size_t t : p.covered) {
      if (!std::binary_search(g.covered.begin(), g.covered.end(), t)) {
        pred_extra = true;
        break;
      }
    }
    if (gold_uncovered) emit(ErrorType::kOverlapMissing, {g}, {p});
    if (pred_extra) emit(ErrorType::kOverlapSpurious, {g}, {p});
  }

  // Classifies one overlap component; golds and preds arrive sorted by
  // token position. Works greedily from the leftmost gold so oversized
  // tangles decompose into the largest recognizable patterns.
  void classify(std::vector<Located> golds, std::vector<Located> preds) {
    while (!golds.empty()) {
      const Located g = golds.front();
      std::vector<std::size_t> over;
      for (std::size_t j = 0; j < preds.size(); j++) {
        if (sets_overlap(g.covered, preds[j].covered)) over.push_back(j);
      }
      if (over.empty()) {
        emit(ErrorType::kMissing, {g}, {});
        golds.erase(golds.begin());
        continue;
      }
      if (over.size() >= 2) {
        bool all_inside = true;
        for (std::size_t j : over) {
          if (!subset_of(preds[j].covered, g.covered)) {
            all_inside = false;
            break;
          }
        }
        if (all_inside) {
          std::vector<Located> parts;
          for (std::size_t j : over) parts.push_back(preds[j]);
          emit(ErrorType::kSplit, {g}, parts);
          remove_indices(&preds, over);
          golds.erase(golds.begin());
          continue;
        }
        // Adjacent golds vs adjacent predictions with equal extent but a
        // shifted internal boundary.
        const std::vector<Located> grun = adjacent_run(golds, 0);
        const std::vector<std::size_t> prun = adjacent_pred_run(preds, over[0]);
        if (grun.size() >= 2 && prun.size() >= 2) {
          std::vector<std::size_t> gu, pu;
          for (const Located& x : grun) {
            gu.insert(gu.end(), x.covered.begin(), x.covered.end());
          }
          for (std::size_t j : prun) {
            pu.insert(pu.end(), preds[j].covered.begin(),
                      preds[j].covered.end());
          }
          std::sort(gu.begin(), gu.end());
          std::sort(pu.begin(), pu.end());
          if (gu == pu) {
            std::vector<Located> parts;
            for (std::size_t j : prun) parts.push_back(preds[j]);
            emit(ErrorType::kMissegmented, grun, parts);
            remove_indices(&preds, prun);
            golds.erase(golds.begin(), golds.begin() + grun.size());
            continue;
          }
        }
        emit_one_to_one(g, preds[over[0]]);
        preds.erase(preds.begin() + over[0]);
        golds.erase(golds.begin());
        continue;
      }
      // Exactly one overlapping prediction: a run of adjacent golds all
      // touched by it is a fusion.
      const std::size_t j = over[0];
      std::vector<Located> run;
      run.push_back(g);
      std::size_t extent = 1;
      while (extent < golds.size() &&
             spans_adjacent(sentence, golds[extent - 1].tokens,
                            golds[extent].tokens) &&
             sets_overlap(golds[extent].covered, preds[j].covered)) {
        run.push_back(golds[extent]);
        extent++;
      }
      if (run.size() >= 2) {
        emit(ErrorType::kFused, run, {preds[j]});
        preds.erase(preds.begin() + j);
        golds.erase(golds.begin(), golds.begin() + run.size());
        continue;
      }
      emit_one_to_one(g, preds[j]);
      preds.erase(preds.begin() + j);
      golds.erase(golds.begin());
    }
    for (const Located& p : preds) emit(ErrorType::kSpurious, {}, {p});
  }

  static void remove_indices(std::vector<Located>* items,
                             const std::vector<std::size_t>& indices) {
    std::vector<Located> kept;
    std::size_t k = 0;
    for (std::size_t i = 0; i < items->size(); i++) {
      if (k < indices.size() && indices[k] == i) {
        k++;
        continue;
      }
      kept.push_back(std::move((*items)[i]));
    }
    *items = std::move(kept);
  }

  std::vector<Located> adjacent_run(const std::vector<Located>& golds,
                                    std::size_t start) const {
    std::vector<Located> run;
    run.push_back(golds[start]);
    std::size_t i = start + 1;
    while (i < golds.size() &&
           spans_adjacent(sentence, golds[i - 1].tokens, golds[i].tokens)) {
      run.push_back(golds[i]);
      i++;
    }
    return run;
  }

  std::vector<std::size_t> adjacent_pred_run(const std::vector<Located>& preds,
                                             std::size_t start) const {
    std::vector<std::size_t> run;
    run.push_back(start);
    std::size_t i = start + 1;
    while (i < preds.size() &&
           spans_adjacent(sentence, preds[i - 1].tokens, preds[i].tokens)) {
      run.push_back(i);
      i++;
    }
    return run;
  }
};

bool position_less(const Located& a, const Located& b) {
  if (a.tokens.first != b.tokens.first) return a.tokens.first < b.tokens.first;
  return a.tokens.last < b.tokens.last;
}

}  // namespace

const char* error_type_name(ErrorType type) {
  switch (type) {
    case ErrorType::kMissing: return "missing";
    case ErrorType::kSpurious: return "spurious";
    case ErrorType::kType: return "type";
    case ErrorType::kOverlapMissing: return "overlap_missing";
    case ErrorType::kOverlapSpurious: return "overlap_spurious";
    case ErrorType::kSplit: return "split";
    case ErrorType::kFused: return "fused";
    case ErrorType::kMissegmented: return "missegmented";
  }
  return "unknown";
}

std::optional<ErrorType> parse_error_type(const std::string& name) {
  for (std::size_t i = 0; i < kNumErrorTypes; i++) {
    const ErrorType type = static_cast<ErrorType>(i);
    if (name == error_type_name(type)) return type;
  }
  return std::nullopt;
}

AlignmentResult align_and_classify(
    const AnnotatedSentence& gold, const std::vector<SpanAnnotation>& predicted) {
  const Sentence& sentence = gold.sentence;
  AlignmentResult result;

  // Deduplicate predictions by normalized value and label, keeping the
  // lexicographically smallest surface so the outcome is independent of
  // input order.
  std::map<std::pair<std::string, std::string>, std::string> pred_values;
  for (const SpanAnnotation& span : predicted) {
    const std::string value = normalize_span(span.surface);
    auto key = std::make_pair(value, span.label);
    auto it = pred_values.find(key);
    if (it == pred_values.end() || span.surface < it->second) {
      pred_values[key] = span.surface;
    }
  }

  // Step 1: exact matches by value, mirroring the scorer.
  std::vector<SpanAnnotation> gold_rest;
  std::set<std::pair<std::string, std::string>> gold_values;
  for (const SpanAnnotation& span : gold.spans) {
    const std::string value = normalize_span(span.surface);
    gold_values.insert({value, span.label});
    if (pred_values.count({value, span.label}) > 0) {
      result.exact_matches++;
    } else {
      gold_rest.push_back(span);
    }
  }
  std::vector<SpanAnnotation> pred_rest;
  for (const auto& [key, surface] : pred_values) {
    if (gold_values.count(key) > 0) continue;
    SpanAnnotation span;
    span.surface = surface;
    span.label = key.second;
    pred_rest.push_back(std::move(span));
  }

  // Step 2: claim occurrences, golds and predictions each on their own side.
  std::vector<Located> golds;
  std::set<std::size_t> gold_claimed;
  for (const SpanAnnotation& span : gold_rest) {
    golds.push_back(claim(sentence, span, &gold_claimed));
  }
  std::vector<Located> preds;
  std::vector<Located> unlocatable;
  std::set<std::size_t> pred_claimed;
  for (const SpanAnnotation& span : pred_rest) {
    Located loc = claim(sentence, span, &pred_claimed);
    if (loc.has_range) preds.push_back(std::move(loc));
    else unlocatable.push_back(std::move(loc));
  }

  // Unlocatable golds should not happen on validated input; account for
  // them as Missing so no gold span is dropped.
  std::vector<Located> located_golds;
  Classifier classifier{sentence, &result.records};
  for (Located& g : golds) {
    if (g.has_range) {
      located_golds.push_back(std::move(g));
    } else {
      classifier.emit(ErrorType::kMissing, {g}, {});
    }
  }

  // Step 3: connected components of the overlap graph.
  std::sort(located_golds.begin(), located_golds.end(), position_less);
  std::sort(preds.begin(), preds.end(), position_less);
  const std::size_t ng = located_golds.size();
  const std::size_t np = preds.size();
  std::vector<int> gold_comp(ng, -1), pred_comp(np, -1);
  int comps = 0;
  for (std::size_t i = 0; i < ng; i++) {
    if (gold_comp[i] != -1) continue;
    // Breadth-first walk alternating sides.
    std::vector<std::size_t> gq = {i}, pq;
    gold_comp[i] = comps;
    while (!gq.empty() || !pq.empty()) {
      if (!gq.empty()) {
        const std::size_t gi = gq.back();
        gq.pop_back();
        for (std::size_t j = 0; j < np; j++) {
          if (pred_comp[j] == -1 &&
              sets_overlap(located_golds[gi].covered, preds[j].covered)) {
            pred_comp[j] = comps;
            pq.push_back(j);
          }
        }
      } else {
        const std::size_t pj = pq.back();
        pq.pop_back();
        for (std::size_t k = 0; k < ng; k++) {
          if (gold_comp[k] == -1 &&
              sets_overlap(located_golds[k].covered, preds[pj].covered)) {
            gold_comp[k] = comps;
            gq.push_back(k);
          }
        }
      }
    }
    comps++;
  }

  // Step 4: classify components in positional order; predictions outside
  // any component are Spurious.
  for (int c = 0; c < comps; c++) {
    std::vector<Located> cg, cp;
    for (std::size_t i = 0; i < ng; i++) {
      if (gold_comp[i] == c) cg.push_back(located_golds[i]);
    }
    for (std::size_t j = 0; j < np; j++) {
      if (pred_comp[j] == c) cp.push_back(preds[j]);
    }
    classifier.classify(std::move(cg), std::move(cp));
  }
  for (std::size_t j = 0; j < np; j++) {
    if (pred_comp[j] == -1) {
      classifier.emit(ErrorType::kSpurious, {}, {preds[j]});
    }
  }
  for (const Located& p : unlocatable) {
    classifier.emit(ErrorType::kSpurious, {}, {p});
  }
  return result;
}

std::map<ErrorType, std::size_t> error_histogram(
    const std::vector<ErrorRecord>& records) {
  std::map<ErrorType, std::size_t> counts;
  for (std::size_t i = 0; i < kNumErrorTypes; i++) {
    counts[static_cast<ErrorType>(i)] = 0;
  }
  for (const ErrorRecord& record : records) counts[record.type]++;
  return counts;
}

namespace {

std::string csv_field(const std::string& value) {
  bool needs_quoting = false;
  for (char c : value) {
    if (c == ';' || c == '"' || c == '\n' || c == '\r') {
      needs_quoting = true;
      break;
    }
  }
  if (!needs_quoting) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string join_spans(const std::vector<SpanAnnotation>& spans) {
  std::string joined;
  for (std::size_t i = 0; i < spans.size(); i++) {
    if (i > 0) joined += '|';
    joined += spans[i].surface;
  }
  return joined;
}

}  // namespace

void write_error_csv(std::ostream& out,
                     const std::vector<ErrorRecord>& records) {
  for (const ErrorRecord& record : records) {
    out << csv_field(record.sentence_id) << ';'
        << csv_field(join_spans(record.gold)) << ';'
        << csv_field(join_spans(record.predicted)) << ';'
        << error_type_name(record.type) << '\n';
  }
}

std::string format_histogram(const std::map<ErrorType, std::size_t>& counts) {
  std::string out;
  for (std::size_t i = 0; i < kNumErrorTypes; i++) {
    const ErrorType type = static_cast<ErrorType>(i);
    auto it = counts.find(type);
    const std::size_t n = it == counts.end() ? 0 : it->second;
    out += error_type_name(type);
    out += ' ';
    out += std::to_string(n);
    out += '\n';
  }
  return out;
}

}  // namespace borrowkit
