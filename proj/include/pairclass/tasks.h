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

#ifndef PAIRCLASS_TASKS_H_
#define PAIRCLASS_TASKS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pairclass/classifier.h"
#include "pairclass/pipeline.h"

namespace pairclass {

inline constexpr const char *kPositive = "positive";
inline constexpr const char *kNegative = "negative";

struct SatQuestion {
  WordPair stem;
  std::array<WordPair, 5> choices;
  int answer = 0;
  // Throws InputError on repeated choices or an answer outside 0-4.
  void validate() const;
};

struct ChoiceQuestion {
  std::string stem;
  std::array<std::string, 4> choices;
  int answer = 0;
  void validate() const;
};

struct LabeledPair {
  WordPair pair;
  std::string label;
};

// Throws InputError with fewer than two labels or a repeated pair.
void validate_labeled(std::span<const LabeledPair> set);

// Loaders for the tab-separated task files. Words are lowercased and must
// be alphabetic; anything else is an InputError naming the line.
//   SAT:      stemX:stemY <TAB> c1X:c1Y ... c5X:c5Y <TAB> answer_index
//   choice:   stem <TAB> c1 <TAB> c2 <TAB> c3 <TAB> c4 <TAB> answer_index
//   labeled:  x <TAB> y <TAB> label
std::vector<SatQuestion> read_sat(std::istream &in);
std::vector<ChoiceQuestion> read_choice(std::istream &in);
std::vector<LabeledPair> read_labeled(std::istream &in);
void write_sat(std::ostream &out, std::span<const SatQuestion> questions);
void write_choice(std::ostream &out,
                  std::span<const ChoiceQuestion> questions);
void write_labeled(std::ostream &out, std::span<const LabeledPair> set);

// Index of the largest value; the lowest index wins ties. Sets *tie when
// another value equals the maximum.
std::size_t argmax(std::span<const double> values, bool *tie = nullptr);

// A model trained by a harness, kept for the model file.
using NamedModel = std::pair<std::string, CalibratedModel>;

struct SatAnswer {
  std::size_t choice = 0;
  std::array<double, 5> probabilities{};
  bool tie = false;
  std::vector<WordPair> negatives;  // one per round
};

// Mean over rounds of each choice's positive probability. Each choice's
// values are summed in sorted order, so the result does not depend on the
// order of the rounds.
std::array<double, 5> average_rounds(
    std::span<const std::array<double, 5>> rounds);

// Bagged answer: each round trains on the stem (positive) and one stem from
// the pool (negative), then scores the five choices. Negatives are drawn
// without replacement when the pool has at least `rounds` stems.
// Throws std::invalid_argument if the pool is empty or contains the stem.
SatAnswer answer_sat(const SatQuestion &question,
                     std::span<const WordPair> pool, const PairVectors &vectors,
                     const Hyperparams &hp, int rounds, std::uint64_t seed,
                     std::vector<NamedModel> *models = nullptr,
                     const std::string &model_prefix = "");

// The stem paired with each choice; the answer pair is positive.
std::vector<LabeledPair> expand_choice_question(const ChoiceQuestion &q);

// Fold of each item: a seeded shuffle dealt round-robin, so fold sizes
// differ by at most one. Throws std::invalid_argument unless
// 2 <= n_folds <= n_items.
std::vector<int> crossval_folds(std::size_t n_items, int n_folds,
                                std::uint64_t seed);

// As crossval_folds, but each class (in sorted label order) is shuffled
// separately and dealt on from where the previous class stopped, which
// keeps both fold sizes and per-class counts balanced.
std::vector<int> stratified_folds(std::span<const std::string> labels,
                                  int n_folds, std::uint64_t seed);

struct SatReport {
  std::vector<SatAnswer> answers;
  std::size_t correct = 0;
  std::size_t ties = 0;
  std::size_t zero_vectors = 0;  // zero vectors among stems and choices
  double accuracy = 0.0;
};

// Answers every question, drawing negatives from the other questions' stems.
SatReport eval_sat(std::span<const SatQuestion> questions,
                   const PairVectors &vectors, const Hyperparams &hp,
                   int rounds, std::uint64_t seed,
                   std::vector<NamedModel> *models = nullptr);

struct ChoiceReport {
  std::vector<std::size_t> guesses;
  std::vector<std::array<double, 4>> probabilities;
  std::size_t correct = 0;
  std::size_t ties = 0;
  std::size_t zero_vectors = 0;
  double accuracy = 0.0;
};

// Cross-validation over the expanded pairs, stratified by label; a
// question's guess is the choice whose pair the held-out fold model finds
// most likely positive. A question's pairs may land in different folds.
ChoiceReport eval_choice(std::span<const ChoiceQuestion> questions,
                         const PairVectors &vectors, const Hyperparams &hp,
                         int n_folds, std::uint64_t seed,
                         std::vector<NamedModel> *models = nullptr);

struct LabeledReport {
  std::vector<std::string> classes;  // sorted
  std::vector<std::size_t> predictions;  // class index per item
  // confusion[true class][predicted class]
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<double> precision;
  std::vector<double> recall;
  std::size_t correct = 0;
  std::size_t zero_vectors = 0;
  std::size_t incomplete_folds = 0;  // folds trained without some class
  double accuracy = 0.0;
  double baseline = 0.0;  // majority class share
};

// Stratified cross-validation with argmax-probability predictions.
LabeledReport eval_labeled(std::span<const LabeledPair> set,
                           const PairVectors &vectors, const Hyperparams &hp,
                           int n_folds, std::uint64_t seed,
                           std::vector<NamedModel> *models = nullptr);

}  // namespace pairclass

#endif  // PAIRCLASS_TASKS_H_
