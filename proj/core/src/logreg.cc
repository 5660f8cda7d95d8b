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

#include "borrowkit/logreg.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

namespace borrowkit {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double stable_learning_rate(std::size_t dim, double l2) {
  return 4.0 / (static_cast<double>(dim) + 4.0 * l2);
}

double Model::score(const std::vector<double>& x) const {
  double z = bias;
  for (std::size_t j = 0; j < weights.size(); j++) z += weights[j] * x[j];
  return sigmoid(z);
}

namespace {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double dot(const std::vector<double>& w, const std::vector<double>& x,
           double b) {
  double z = b;
  for (std::size_t j = 0; j < w.size(); j++) z += w[j] * x[j];
  return z;
}

// Stable cross-entropy: max(z,0) - y*z + log(1 + exp(-|z|)).
double xent(double z, int y) {
  const double zpos = z > 0.0 ? z : 0.0;
  return zpos - static_cast<double>(y) * z + std::log1p(std::exp(-std::fabs(z)));
}

}  // namespace

void Model::save(std::ostream& out) const {
  out << "bias " << format_double(bias) << '\n';
  out << "threshold " << format_double(threshold) << '\n';
  for (std::size_t j = 0; j < feature_names.size(); j++) {
    out << feature_names[j] << ' ' << format_double(weights[j]) << '\n';
  }
}

Model Model::load(std::istream& in) {
  Model model;
  bool saw_bias = false, saw_threshold = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t space = line.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 >= line.size()) {
      throw ParseError("expected '<name> <value>'", lineno);
    }
    const std::string name = line.substr(0, space);
    const std::string text = line.substr(space + 1);
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
      throw ParseError("bad numeric value '" + text + "'", lineno);
    }
    if (name == "bias") {
      if (saw_bias) throw ParseError("duplicate bias", lineno);
      model.bias = value;
      saw_bias = true;
    } else if (name == "threshold") {
      if (saw_threshold) throw ParseError("duplicate threshold", lineno);
      model.threshold = value;
      saw_threshold = true;
    } else {
      for (const std::string& existing : model.feature_names) {
        if (existing == name) {
          throw ParseError("duplicate feature '" + name + "'", lineno);
        }
      }
      model.feature_names.push_back(name);
      model.weights.push_back(value);
    }
  }
  if (!saw_bias) throw ParseError("missing bias line");
  if (!saw_threshold) throw ParseError("missing threshold line");
  return model;
}

double regularized_loss(const std::vector<double>& weights, double bias,
                        const std::vector<TrainingExample>& examples,
                        double l2) {
  double loss = 0.0;
  for (const TrainingExample& ex : examples) {
    loss += xent(dot(weights, ex.features, bias), ex.label);
  }
  loss /= static_cast<double>(examples.size());
  double reg = 0.0;
  for (double w : weights) reg += w * w;
  return loss + 0.5 * l2 * reg;
}

std::vector<double> loss_gradient(const std::vector<double>& weights,
                                  double bias,
                                  const std::vector<TrainingExample>& examples,
                                  double l2) {
  const std::size_t dim = weights.size();
  std::vector<double> grad(dim + 1, 0.0);
  for (const TrainingExample& ex : examples) {
    const double p = sigmoid(dot(weights, ex.features, bias));
    const double delta = p - static_cast<double>(ex.label);
    for (std::size_t j = 0; j < dim; j++) grad[j] += delta * ex.features[j];
    grad[dim] += delta;
  }
  const double inv_n = 1.0 / static_cast<double>(examples.size());
  for (double& g : grad) g *= inv_n;
  for (std::size_t j = 0; j < dim; j++) grad[j] += l2 * weights[j];
  return grad;
}

TrainResult train(const std::vector<TrainingExample>& examples,
                  const std::vector<std::string>& feature_names,
                  const Hyperparams& params) {
  bool has_pos = false, has_neg = false;
  for (const TrainingExample& ex : examples) {
    if (ex.label == 1) has_pos = true;
    else has_neg = true;
  }
  if (!has_pos || !has_neg) {
    throw DegenerateDatasetError("training data must contain both classes");
  }

  const std::size_t dim = feature_names.size();
  TrainResult result;
  result.model.feature_names = feature_names;
  result.model.weights.assign(dim, 0.0);
  result.model.bias = 0.0;
  result.loss_trace.reserve(params.epochs);

  for (std::size_t epoch = 0; epoch < params.epochs; epoch++) {
    const std::vector<double> grad =
        loss_gradient(result.model.weights, result.model.bias, examples,
                      params.l2);
    for (std::size_t j = 0; j < dim; j++) {
      result.model.weights[j] -= params.learning_rate * grad[j];
    }
    result.model.bias -= params.learning_rate * grad[dim];
    result.loss_trace.push_back(regularized_loss(
        result.model.weights, result.model.bias, examples, params.l2));
  }
  return result;
}

}  // namespace borrowkit
