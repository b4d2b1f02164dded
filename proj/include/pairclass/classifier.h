// Copyright 2026 The Pairclass Authors.
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

#ifndef PAIRCLASS_CLASSIFIER_H_
#define PAIRCLASS_CLASSIFIER_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pairclass/features.h"

namespace pairclass {

struct Hyperparams {
  double c = 1.0;
  double gamma = 0.01;
  double tol = 1e-3;
  // Outer SMO sweeps before giving up; 0 means max(10000, 100 * N).
  long max_passes = 0;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless c, gamma and tol are positive and
  // max_passes is not negative.
  void validate() const;
};

// exp(-gamma * |u - v|^2). Throws std::invalid_argument on a dimension
// mismatch.
double rbf_kernel(const SparseVector &u, const SparseVector &v, double gamma);

struct TrainStats {
  long passes = 0;
  long steps = 0;
  bool converged = false;
  // Dual objective at the end of every outer sweep.
  std::vector<double> objective;
};

// Kernel expansion f(v) = sum_i coef_i K(sv_i, v) + bias with
// coef_i = alpha_i * y_i.
struct BinaryModel {
  std::vector<SparseVector> support_vectors;
  // Row of each support vector in the training input (or whatever ids the
  // caller remapped them to).
  std::vector<std::size_t> support_indices;
  std::vector<double> coef;
  double bias = 0.0;
  Hyperparams hp;
  TrainStats stats;
};

// Platt's SMO on the RBF kernel. Labels are +1 / -1. Input vectors are used
// as given, with no rescaling. Throws TrainingError when only one label is
// present or a value is not finite, std::invalid_argument on mismatched
// sizes or dimensions.
BinaryModel train_binary(std::span<const SparseVector> x,
                         std::span<const int> y, const Hyperparams &hp);

double decision(const BinaryModel &model, const SparseVector &v);

// P(class | f) = 1 / (1 + exp(a * f + b)).
struct Sigmoid {
  double a = 0.0;
  double b = 0.0;
  double operator()(double f) const;
};

// Regularized maximum-likelihood fit with smoothed targets
// (N+ + 1) / (N+ + 2) and 1 / (N- + 2), by Newton's method with a
// backtracking line search. Throws TrainingError if the gradient is still
// large after the iteration cap.
Sigmoid fit_sigmoid(std::span<const double> decisions,
                    std::span<const int> labels);

// One-vs-rest kernel classifiers with a calibrated sigmoid per class.
class CalibratedModel {
 public:
  struct ClassModel {
    BinaryModel model;
    Sigmoid sigmoid;
  };

  CalibratedModel() = default;
  CalibratedModel(std::vector<std::string> classes,
                  std::vector<ClassModel> models);

  // Trains one binary model per class in `classes` (all distinct labels,
  // sorted, when empty) and calibrates each on its own training decisions.
  // Classes absent from the labels are rejected. With a single class the
  // model predicts it with probability 1.
  static CalibratedModel train(std::span<const SparseVector> x,
                               std::span<const std::string> labels,
                               const Hyperparams &hp,
                               std::vector<std::string> classes = {});

  const std::vector<std::string> &classes() const { return classes_; }
  const std::vector<ClassModel> &models() const { return models_; }

  // Calibrated per-class scores normalized to sum to 1.
  std::vector<double> predict_proba(const SparseVector &v) const;
  // Argmax of predict_proba, lowest index on ties.
  std::size_t predict(const SparseVector &v) const;

  // Rewrites support indices through ids (training row -> caller id).
  void remap_support(std::span<const std::size_t> ids);

 private:
  std::vector<std::string> classes_;
  std::vector<ClassModel> models_;
};

// Fits one sigmoid per binary model on the decisions it gives the training
// data, with indicator labels for its class.
CalibratedModel calibrate(std::vector<BinaryModel> models,
                          std::vector<std::string> classes,
                          std::span<const SparseVector> x,
                          std::span<const std::string> labels);

// Text model file. Support vectors are stored as rows of the dataset the
// models were trained on, so reading needs that dataset and refuses one
// whose feature space checksum differs.
//
//   pairclass-model 1
//   space <hex> rows <n>
//   hyperparams c <c> gamma <g> tol <t> max_passes <p> seed <s>
//   section <name> classes <k> <label>...
//   class <label> bias <b> sigmoid <a> <b> sv <m>
//   <row> <coef>            (m lines)
//   end
struct ModelFile {
  static constexpr int kVersion = 1;
  std::uint64_t space_checksum = 0;
  std::size_t rows = 0;
  Hyperparams hp;
  std::vector<std::pair<std::string, CalibratedModel>> sections;

  void write(std::ostream &out) const;
  static ModelFile read(std::istream &in, const Dataset &dataset);
};

}  // namespace pairclass

#endif  // PAIRCLASS_CLASSIFIER_H_
