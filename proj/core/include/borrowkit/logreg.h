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
// L2-regularized logistic regression trained with full-batch gradient
// descent from zero initialization. The regularizer applies to the
// weights only, not the bias. The loss is
//   L(w, b) = (1/N) sum_i xent(sigma(w.x_i + b), y_i) + (l2/2) |w|^2.
// With features in [0, 1] the data term's curvature is at most dim/4, so
// the per-epoch loss is non-increasing whenever
//   learning_rate <= stable_learning_rate(dim, l2) = 4 / (dim + 4*l2).
// The default learning rate 0.1 is stable for the 16-feature registry.

#ifndef BORROWKIT_LOGREG_H_
#define BORROWKIT_LOGREG_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "borrowkit/errors.h"

namespace borrowkit {

struct TrainingExample {
  std::vector<double> features;
  int label = 0;  // 0 or 1
};

struct Hyperparams {
  double learning_rate = 0.1;
  std::size_t epochs = 500;
  double l2 = 1e-4;
};

double sigmoid(double z);
double stable_learning_rate(std::size_t dim, double l2);

// Weights keyed by feature name, plus bias and decision threshold. The
// text form round-trips weights exactly (17 significant digits).
struct Model {
  std::vector<std::string> feature_names;
  std::vector<double> weights;
  double bias = 0.0;
  double threshold = 0.5;

  // sigma(w.x + b); x must have weights.size() entries.
  double score(const std::vector<double>& x) const;

  void save(std::ostream& out) const;
  static Model load(std::istream& in);  // throws ParseError
};

double regularized_loss(const std::vector<double>& weights, double bias,
                        const std::vector<TrainingExample>& examples,
                        double l2);

// Gradient of the regularized loss; the last entry is the bias partial.
std::vector<double> loss_gradient(const std::vector<double>& weights,
                                  double bias,
                                  const std::vector<TrainingExample>& examples,
                                  double l2);

struct TrainResult {
  Model model;
  std::vector<double> loss_trace;  // loss after each epoch
};

// Throws DegenerateDatasetError when the examples contain fewer than two
// classes. Deterministic: no randomness anywhere.
TrainResult train(const std::vector<TrainingExample>& examples,
                  const std::vector<std::string>& feature_names,
                  const Hyperparams& params = {});

}  // namespace borrowkit

#endif  // BORROWKIT_LOGREG_H_
