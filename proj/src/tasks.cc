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

#include "pairclass/tasks.h"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace pairclass {

namespace {

std::string clean_word(std::string_view raw, int lineno) {
  std::string w;
  for (char c : raw) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c < 'a' || c > 'z') {
      throw InputError("line " + std::to_string(lineno) + ": '" +
                       std::string(raw) + "' is not an alphabetic word");
    }
    w.push_back(c);
  }
  if (w.empty()) {
    throw InputError("line " + std::to_string(lineno) + ": empty word");
  }
  return w;
}

WordPair clean_pair(std::string_view raw, int lineno) {
  WordPair p;
  try {
    p = parse_pair(raw);
  } catch (const InputError &e) {
    throw InputError("line " + std::to_string(lineno) + ": " + e.what());
  }
  return {clean_word(p.x, lineno), clean_word(p.y, lineno)};
}

int parse_answer(std::string_view raw, int limit, int lineno) {
  int v = -1;
  try {
    std::size_t used = 0;
    v = std::stoi(std::string(raw), &used);
    if (used != raw.size()) v = -1;
  } catch (const std::exception &) {
  }
  if (v < 0 || v >= limit) {
    throw InputError("line " + std::to_string(lineno) + ": answer index '" +
                     std::string(raw) + "' must be 0-" +
                     std::to_string(limit - 1));
  }
  return v;
}

// Yields (line number, fields) for each non-empty, non-comment line.
template <typename F>
void for_each_row(std::istream &in, std::size_t n_fields, F &&f) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != n_fields) {
      throw InputError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(n_fields) + " tab-separated fields, got " +
                       std::to_string(fields.size()));
    }
    f(lineno, fields);
  }
}

std::vector<double> positive_probabilities(const CalibratedModel &model,
                                           std::span<const SparseVector> xs) {
  const auto &classes = model.classes();
  const auto pos = std::find(classes.begin(), classes.end(), kPositive);
  std::vector<double> out;
  for (const auto &x : xs) {
    if (pos == classes.end()) {
      out.push_back(0.0);
    } else {
      out.push_back(model.predict_proba(x)[pos - classes.begin()]);
    }
  }
  return out;
}

}  // namespace

void SatQuestion::validate() const {
  std::set<WordPair> distinct(choices.begin(), choices.end());
  if (distinct.size() != choices.size()) {
    throw InputError("SAT question " + stem.str() + " repeats a choice");
  }
  if (answer < 0 || answer >= 5) {
    throw InputError("SAT question " + stem.str() + " has answer outside 0-4");
  }
}

void ChoiceQuestion::validate() const {
  std::set<std::string> distinct(choices.begin(), choices.end());
  if (distinct.size() != choices.size()) {
    throw InputError("question '" + stem + "' repeats a choice");
  }
  if (answer < 0 || answer >= 4) {
    throw InputError("question '" + stem + "' has answer outside 0-3");
  }
}

void validate_labeled(std::span<const LabeledPair> set) {
  std::set<std::string> labels;
  std::set<WordPair> pairs;
  for (const auto &item : set) {
    labels.insert(item.label);
    if (!pairs.insert(item.pair).second) {
      throw InputError("labeled set repeats pair " + item.pair.str());
    }
  }
  if (labels.size() < 2) {
    throw InputError("labeled set needs at least two distinct labels");
  }
}

std::vector<SatQuestion> read_sat(std::istream &in) {
  std::vector<SatQuestion> out;
  for_each_row(in, 7, [&](int lineno, const std::vector<std::string> &f) {
    SatQuestion q;
    q.stem = clean_pair(f[0], lineno);
    for (int i = 0; i < 5; ++i) q.choices[i] = clean_pair(f[1 + i], lineno);
    q.answer = parse_answer(f[6], 5, lineno);
    q.validate();
    out.push_back(std::move(q));
  });
  return out;
}

std::vector<ChoiceQuestion> read_choice(std::istream &in) {
  std::vector<ChoiceQuestion> out;
  for_each_row(in, 6, [&](int lineno, const std::vector<std::string> &f) {
    ChoiceQuestion q;
    q.stem = clean_word(f[0], lineno);
    for (int i = 0; i < 4; ++i) q.choices[i] = clean_word(f[1 + i], lineno);
    q.answer = parse_answer(f[5], 4, lineno);
    q.validate();
    out.push_back(std::move(q));
  });
  return out;
}

std::vector<LabeledPair> read_labeled(std::istream &in) {
  std::vector<LabeledPair> out;
  for_each_row(in, 3, [&](int lineno, const std::vector<std::string> &f) {
    LabeledPair p{{clean_word(f[0], lineno), clean_word(f[1], lineno)}, f[2]};
    if (p.label.empty() ||
        p.label.find_first_of(" \t\r\n") != std::string::npos ||
        p.label == "?") {
      throw InputError("line " + std::to_string(lineno) +
                       ": labels must be non-empty, without whitespace, and "
                       "not '?'");
    }
    out.push_back(std::move(p));
  });
  return out;
}

void write_sat(std::ostream &out, std::span<const SatQuestion> questions) {
  for (const auto &q : questions) {
    out << q.stem.str();
    for (const auto &c : q.choices) out << '\t' << c.str();
    out << '\t' << q.answer << '\n';
  }
}

void write_choice(std::ostream &out,
                  std::span<const ChoiceQuestion> questions) {
  for (const auto &q : questions) {
    out << q.stem;
    for (const auto &c : q.choices) out << '\t' << c;
    out << '\t' << q.answer << '\n';
  }
}

void write_labeled(std::ostream &out, std::span<const LabeledPair> set) {
  for (const auto &p : set) {
    out << p.pair.x << '\t' << p.pair.y << '\t' << p.label << '\n';
  }
}

std::size_t argmax(std::span<const double> values, bool *tie) {
  if (values.empty()) throw std::invalid_argument("argmax of nothing");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  if (tie) {
    *tie = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i != best && values[i] == values[best]) *tie = true;
    }
  }
  return best;
}

std::array<double, 5> average_rounds(
    std::span<const std::array<double, 5>> rounds) {
  std::array<double, 5> mean{};
  if (rounds.empty()) return mean;
  std::vector<double> column(rounds.size());
  for (std::size_t c = 0; c < 5; ++c) {
    for (std::size_t r = 0; r < rounds.size(); ++r) column[r] = rounds[r][c];
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    for (double v : column) sum += v;
    mean[c] = sum / static_cast<double>(rounds.size());
  }
  return mean;
}

SatAnswer answer_sat(const SatQuestion &question,
                     std::span<const WordPair> pool, const PairVectors &vectors,
                     const Hyperparams &hp, int rounds, std::uint64_t seed,
                     std::vector<NamedModel> *models,
                     const std::string &model_prefix) {
  if (rounds <= 0) throw std::invalid_argument("rounds must be positive");
  if (pool.empty()) throw std::invalid_argument("empty negative pool");
  if (std::find(pool.begin(), pool.end(), question.stem) != pool.end()) {
    throw std::invalid_argument("negative pool contains the question's stem " +
                                question.stem.str());
  }

  std::mt19937_64 rng(seed);
  SatAnswer answer;
  if (pool.size() >= static_cast<std::size_t>(rounds)) {
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    for (int r = 0; r < rounds; ++r) {
      std::swap(order[r], order[r + uniform_below(rng, order.size() - r)]);
      answer.negatives.push_back(pool[order[r]]);
    }
  } else {
    spdlog::info("{}: pool of {} stems is smaller than {} rounds; sampling "
                 "negatives with replacement",
                 question.stem.str(), pool.size(), rounds);
    for (int r = 0; r < rounds; ++r) {
      answer.negatives.push_back(pool[uniform_below(rng, pool.size())]);
    }
  }

  std::vector<SparseVector> choices;
  for (const auto &c : question.choices) choices.push_back(vectors.at(c));
  const std::vector<std::string> labels{kPositive, kNegative};
  std::vector<std::array<double, 5>> per_round;
  for (int r = 0; r < rounds; ++r) {
    const std::vector<SparseVector> x{vectors.at(question.stem),
                                      vectors.at(answer.negatives[r])};
    Hyperparams round_hp = hp;
    round_hp.seed = derive_seed(seed, "round", r);
    auto model = CalibratedModel::train(x, labels, round_hp, labels);
    auto p = positive_probabilities(model, choices);
    per_round.push_back({p[0], p[1], p[2], p[3], p[4]});
    if (models) {
      const std::vector<std::size_t> ids{
          vectors.row(question.stem), vectors.row(answer.negatives[r])};
      model.remap_support(ids);
      models->emplace_back(model_prefix + "r" + std::to_string(r),
                           std::move(model));
    }
  }
  answer.probabilities = average_rounds(per_round);
  answer.choice = argmax(answer.probabilities, &answer.tie);
  if (answer.tie) {
    spdlog::info("{}: tied probabilities, answering choice {}",
                 question.stem.str(), answer.choice);
  }
  return answer;
}

std::vector<LabeledPair> expand_choice_question(const ChoiceQuestion &q) {
  std::vector<LabeledPair> out;
  for (int i = 0; i < 4; ++i) {
    out.push_back({{q.stem, q.choices[i]}, i == q.answer ? kPositive : kNegative});
  }
  return out;
}

std::vector<int> crossval_folds(std::size_t n_items, int n_folds,
                                std::uint64_t seed) {
  if (n_folds < 2 || n_items < static_cast<std::size_t>(n_folds)) {
    throw std::invalid_argument(
        "cross-validation needs 2 <= folds <= items (folds=" +
        std::to_string(n_folds) + ", items=" + std::to_string(n_items) + ")");
  }
  std::vector<std::size_t> order(n_items);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  seeded_shuffle(order, rng);
  std::vector<int> fold(n_items);
  for (std::size_t i = 0; i < n_items; ++i) {
    fold[order[i]] = static_cast<int>(i % n_folds);
  }
  return fold;
}

std::vector<int> stratified_folds(std::span<const std::string> labels,
                                  int n_folds, std::uint64_t seed) {
  if (n_folds < 2 || labels.size() < static_cast<std::size_t>(n_folds)) {
    throw std::invalid_argument(
        "cross-validation needs 2 <= folds <= items (folds=" +
        std::to_string(n_folds) + ", items=" + std::to_string(labels.size()) +
        ")");
  }
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);
  std::mt19937_64 rng(seed);
  std::vector<int> fold(labels.size());
  std::size_t dealt = 0;
  for (auto &[label, items] : members) {
    seeded_shuffle(items, rng);
    for (auto i : items) fold[i] = static_cast<int>(dealt++ % n_folds);
  }
  return fold;
}

SatReport eval_sat(std::span<const SatQuestion> questions,
                   const PairVectors &vectors, const Hyperparams &hp,
                   int rounds, std::uint64_t seed,
                   std::vector<NamedModel> *models) {
  SatReport report;
  std::set<WordPair> zero;
  for (std::size_t q = 0; q < questions.size(); ++q) {
    const auto &question = questions[q];
    std::vector<WordPair> pool;
    std::set<WordPair> seen;
    for (const auto &other : questions) {
      if (other.stem != question.stem && seen.insert(other.stem).second) {
        pool.push_back(other.stem);
      }
    }
    if (vectors.at(question.stem).is_zero()) zero.insert(question.stem);
    for (const auto &c : question.choices) {
      if (vectors.at(c).is_zero()) zero.insert(c);
    }
    auto answer = answer_sat(question, pool, vectors, hp, rounds,
                             derive_seed(seed, "sat", q), models,
                             "q" + std::to_string(q) + ".");
    report.correct += answer.choice == static_cast<std::size_t>(question.answer);
    report.ties += answer.tie;
    report.answers.push_back(std::move(answer));
  }
  report.zero_vectors = zero.size();
  if (report.zero_vectors) {
    spdlog::warn("{} SAT pairs have all-zero feature vectors",
                 report.zero_vectors);
  }
  report.accuracy = questions.empty()
                        ? 0.0
                        : static_cast<double>(report.correct) / questions.size();
  return report;
}

ChoiceReport eval_choice(std::span<const ChoiceQuestion> questions,
                         const PairVectors &vectors, const Hyperparams &hp,
                         int n_folds, std::uint64_t seed,
                         std::vector<NamedModel> *models) {
  std::vector<LabeledPair> items;
  for (const auto &q : questions) {
    auto expanded = expand_choice_question(q);
    items.insert(items.end(), expanded.begin(), expanded.end());
  }
  ChoiceReport report;
  std::vector<SparseVector> x;
  std::vector<std::string> labels;
  for (const auto &item : items) {
    x.push_back(vectors.at(item.pair));
    labels.push_back(item.label);
    report.zero_vectors += x.back().is_zero();
  }
  if (report.zero_vectors) {
    spdlog::warn("{} of {} choice pairs have all-zero feature vectors",
                 report.zero_vectors, items.size());
  }

  // Stratified, so every fold model sees the same positive share and the
  // base rate says nothing about which held-out pair is the answer.
  const auto fold = stratified_folds(labels, n_folds, derive_seed(seed, "folds"));
  std::vector<double> prob(items.size());
  for (int f = 0; f < n_folds; ++f) {
    std::vector<SparseVector> train_x, test_x;
    std::vector<std::string> train_y;
    std::vector<std::size_t> train_ids, test_ids;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (fold[i] == f) {
        test_x.push_back(x[i]);
        test_ids.push_back(i);
      } else {
        train_x.push_back(x[i]);
        train_y.push_back(labels[i]);
        train_ids.push_back(vectors.row(items[i].pair));
      }
    }
    Hyperparams fold_hp = hp;
    fold_hp.seed = derive_seed(seed, "fold", f);
    auto model = CalibratedModel::train(train_x, train_y, fold_hp);
    if (model.classes().size() < 2) {
      spdlog::warn("fold {} trains on a single class", f);
    }
    auto p = positive_probabilities(model, test_x);
    for (std::size_t j = 0; j < test_ids.size(); ++j) prob[test_ids[j]] = p[j];
    if (models) {
      model.remap_support(train_ids);
      models->emplace_back("fold" + std::to_string(f), std::move(model));
    }
  }

  for (std::size_t q = 0; q < questions.size(); ++q) {
    std::array<double, 4> p{prob[4 * q], prob[4 * q + 1], prob[4 * q + 2],
                            prob[4 * q + 3]};
    bool tie = false;
    const auto guess = argmax(p, &tie);
    if (tie) {
      spdlog::info("question '{}': tied probabilities, answering choice {}",
                   questions[q].stem, guess);
    }
    report.ties += tie;
    report.correct += guess == static_cast<std::size_t>(questions[q].answer);
    report.guesses.push_back(guess);
    report.probabilities.push_back(p);
  }
  report.accuracy = questions.empty()
                        ? 0.0
                        : static_cast<double>(report.correct) / questions.size();
  return report;
}

LabeledReport eval_labeled(std::span<const LabeledPair> set,
                           const PairVectors &vectors, const Hyperparams &hp,
                           int n_folds, std::uint64_t seed,
                           std::vector<NamedModel> *models) {
  validate_labeled(set);
  LabeledReport report;
  std::vector<SparseVector> x;
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> counts;
  for (const auto &item : set) {
    x.push_back(vectors.at(item.pair));
    labels.push_back(item.label);
    ++counts[item.label];
    report.zero_vectors += x.back().is_zero();
  }
  if (report.zero_vectors) {
    spdlog::warn("{} of {} labeled pairs have all-zero feature vectors",
                 report.zero_vectors, set.size());
  }
  std::size_t majority = 0;
  for (const auto &[label, count] : counts) {
    report.classes.push_back(label);
    majority = std::max(majority, count);
  }
  report.baseline = static_cast<double>(majority) / set.size();
  const std::size_t k = report.classes.size();
  auto class_index = [&](const std::string &label) {
    return static_cast<std::size_t>(
        std::lower_bound(report.classes.begin(), report.classes.end(), label) -
        report.classes.begin());
  };

  const auto fold = stratified_folds(labels, n_folds, derive_seed(seed, "folds"));
  report.predictions.assign(set.size(), 0);
  for (int f = 0; f < n_folds; ++f) {
    std::vector<SparseVector> train_x;
    std::vector<std::string> train_y;
    std::vector<std::size_t> train_ids;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (fold[i] != f) {
        train_x.push_back(x[i]);
        train_y.push_back(labels[i]);
        train_ids.push_back(vectors.row(set[i].pair));
      }
    }
    Hyperparams fold_hp = hp;
    fold_hp.seed = derive_seed(seed, "fold", f);
    auto model = CalibratedModel::train(train_x, train_y, fold_hp);
    if (model.classes().size() < k) {
      // Only a class with a single member can be missing from a training
      // split, and merging folds would not bring it back.
      ++report.incomplete_folds;
      spdlog::warn("fold {} trains without {} of {} classes", f,
                   k - model.classes().size(), k);
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (fold[i] != f) continue;
      const auto local = model.predict(x[i]);
      report.predictions[i] = class_index(model.classes()[local]);
    }
    if (models) {
      model.remap_support(train_ids);
      models->emplace_back("fold" + std::to_string(f), std::move(model));
    }
  }

  report.confusion.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto truth = class_index(labels[i]);
    ++report.confusion[truth][report.predictions[i]];
    report.correct += truth == report.predictions[i];
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t predicted = 0, actual = 0;
    for (std::size_t o = 0; o < k; ++o) {
      predicted += report.confusion[o][c];
      actual += report.confusion[c][o];
    }
    report.precision.push_back(
        predicted ? static_cast<double>(report.confusion[c][c]) / predicted
                  : 0.0);
    report.recall.push_back(
        actual ? static_cast<double>(report.confusion[c][c]) / actual : 0.0);
  }
  report.accuracy = static_cast<double>(report.correct) / set.size();
  return report;
}

}  // namespace pairclass
