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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "pairclass/run.h"
#include "pairclass/synthetic.h"
#include "qp_oracle.h"
#include "svm_check.h"
#include "test_util.h"

namespace pairclass {
namespace {

namespace fs = std::filesystem;
using testing::Gen;

// What a criterion found, in one line.
struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt_double(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

CorpusIndex index_of(std::string_view text) {
  TokenizedCorpus corpus;
  corpus.add_text(text);
  return CorpusIndex(corpus);
}

void write_text(const fs::path &path, const std::string &text) {
  testing::write_file(path, text);
}

template <typename Writer, typename Items>
void write_task(const fs::path &path, Writer writer, const Items &items) {
  std::ofstream out(path);
  writer(out, items);
}

Dataset load_dataset(const fs::path &path) {
  std::ifstream in(path);
  return Dataset::read(in);
}

RunConfig experiment(const fs::path &dir, const std::string &task,
                     const std::string &dataset) {
  RunConfig c;
  c.base_dir = dir;
  c.task = task;
  c.corpus = {"corpus.txt"};
  c.dataset = dataset;
  return c;
}

// 1. find_phrases against brute-force enumeration.
Outcome retrieval_oracle() {
  Gen g(101);
  double index_seconds = 0.0;
  std::size_t matches = 0, tokens = 0;
  for (int round = 0; round < 100; ++round) {
    const int vocab = g.range(50, 2000);
    auto corpus = testing::random_corpus(g, 100000, vocab);
    tokens += corpus.tokens;
    std::vector<std::pair<std::set<std::string>, std::set<std::string>>> queries;
    std::vector<WindowSpec> specs;
    for (int q = 0; q < 50; ++q) {
      std::set<std::string> xs, ys;
      const int nx = g.range(1, 3), ny = g.range(1, 3);
      while (static_cast<int>(xs.size()) < nx) xs.insert(g.pick(corpus.vocabulary));
      while (static_cast<int>(ys.size()) < ny) {
        auto w = g.pick(corpus.vocabulary);
        if (!xs.count(w)) ys.insert(w);
      }
      WindowSpec spec;
      if (q % 5 == 4) {
        spec.before = {g.range(0, 1), g.range(1, 3)};
        spec.between = {g.range(0, 2), g.range(2, 5)};
        spec.after = {g.range(0, 1), g.range(1, 3)};
      }
      queries.emplace_back(std::move(xs), std::move(ys));
      specs.push_back(spec);
    }

    const auto t0 = std::chrono::steady_clock::now();
    TokenizedCorpus tc;
    tc.add_text(corpus.text);
    CorpusIndex index(tc);
    std::vector<std::vector<PhraseMatch>> results;
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const auto &[xs, ys] = queries[q];
      results.push_back(index.find_phrases(WordSet(xs.begin(), xs.end()),
                                           WordSet(ys.begin(), ys.end()),
                                           specs[q]));
    }
    index_seconds += seconds_since(t0);

    for (std::size_t q = 0; q < queries.size(); ++q) {
      std::vector<testing::MatchKey> got;
      for (const auto &m : results[q]) got.push_back(testing::key_of(m));
      std::sort(got.begin(), got.end());
      auto want = testing::brute_force_windows(
          corpus.documents, queries[q].first, queries[q].second, specs[q]);
      if (got != want) {
        return {false, "corpus " + std::to_string(round) + " query " +
                           std::to_string(q) + ": " + std::to_string(got.size()) +
                           " matches, brute force " + std::to_string(want.size())};
      }
      matches += want.size();
    }
  }
  std::string detail = "100 corpora (" + std::to_string(tokens) + " tokens), 5000 queries, " +
                       std::to_string(matches) + " windows equal; index+query " +
                       fmt_double(index_seconds, 3) + " s";
  return {index_seconds < 60.0, detail};
}

// 2. Pattern cardinality and self-match.
Outcome pattern_cardinality() {
  Gen g(202);
  std::size_t patterns = 0;
  for (int i = 0; i < 10000; ++i) {
    const int n = g.range(2, 7);
    PhraseMatch m;
    for (int t = 0; t < n; ++t) m.tokens.push_back(g.word(1, 8));
    m.x_index = g.range(0, n - 1);
    m.y_index = g.range(0, n - 2);
    if (m.y_index >= m.x_index) ++m.y_index;
    m.x_first = m.x_index < m.y_index;
    const auto normalized = normalize_phrase(m);
    const auto ps = patterns_from_phrase(normalized);
    if (ps.size() != (std::size_t{1} << (n - 2))) {
      return {false, "phrase " + std::to_string(i) + " of length " +
                         std::to_string(n) + " gave " + std::to_string(ps.size())};
    }
    for (const auto &p : ps) {
      if (!pattern_matches(p, normalized)) {
        return {false, "pattern '" + p.text() + "' misses its source phrase"};
      }
    }
    patterns += ps.size();
  }
  return {true, "10000 phrases, " + std::to_string(patterns) +
                    " patterns, all 2^(n-2) and self-matching"};
}

// Distinct pattern texts over a phrase table, counted without the library's
// selection code.
std::size_t distinct_patterns(const PhraseTable &table) {
  std::set<std::string> all;
  for (const auto &[pair, ms] : table) {
    for (const auto &m : ms) {
      for (auto &t : pattern_texts(m)) all.insert(std::move(t));
    }
  }
  return all.size();
}

struct SizeCheck {
  std::size_t vectors = 0, features = 0, bound = 0, distinct = 0;
  bool ok = false;
};

SizeCheck check_sizes(const fs::path &dir, const RunConfig &config,
                      std::span<const WordPair> pairs, std::size_t want_vectors) {
  SizeCheck s;
  auto index = CorpusIndex::open(dir / "out" / "index");
  HarvestOptions opt;
  opt.window = config.window;
  opt.max_phrases_per_pair = config.max_phrases_per_pair;
  opt.seed = derive_seed(config.seed, "harvest");
  auto table = harvest(index, Morphology(), pairs, opt);
  s.distinct = distinct_patterns(table);
  s.bound = static_cast<std::size_t>(config.k) * want_vectors;
  auto data = load_dataset(dir / "out" / "dataset.tsv");
  s.vectors = data.size();
  s.features = data.dimension;
  s.ok = s.vectors == want_vectors && s.features <= s.bound &&
         s.features == std::min(s.bound, s.distinct);
  return s;
}

// 3. Feature-space sizes on stand-ins shaped like the two multiple-choice sets.
Outcome feature_space_sizes() {
  testing::TempDir sat_dir("accept-sizes-sat");
  auto spec = labeled_spec(11, 1, 3);
  spec.pairs_per_class = 204;
  spec.sentences_per_pair = 2;
  spec.distractor_rate = 0.5;
  auto corpus = make_synthetic_corpus(spec);
  std::vector<SatQuestion> questions;
  for (std::size_t q = 0; q < 374; ++q) {
    SatQuestion sq;
    sq.stem = corpus.pairs[6 * q].pair;
    for (int c = 0; c < 5; ++c) sq.choices[c] = corpus.pairs[6 * q + 1 + c].pair;
    questions.push_back(sq);
  }
  write_text(sat_dir / "corpus.txt", corpus.text);
  write_task(sat_dir / "sat.tsv", write_sat, questions);
  auto sat_config = experiment(sat_dir.path(), "sat", "sat.tsv");
  run(sat_config);
  std::vector<WordPair> sat_pairs;
  for (const auto &p : corpus.pairs) sat_pairs.push_back(p.pair);
  const auto sat = check_sizes(sat_dir.path(), sat_config, sat_pairs, 2244);

  testing::TempDir toefl_dir("accept-sizes-toefl");
  auto planted = make_planted_choice(80, 5, 0.5, 4);
  write_text(toefl_dir / "corpus.txt", planted.text);
  write_task(toefl_dir / "choice.tsv", write_choice, planted.questions);
  auto toefl_config = experiment(toefl_dir.path(), "toefl", "choice.tsv");
  run(toefl_config);
  std::vector<WordPair> toefl_pairs;
  for (const auto &q : planted.questions) {
    for (const auto &c : q.choices) toefl_pairs.push_back({q.stem, c});
  }
  const auto toefl = check_sizes(toefl_dir.path(), toefl_config, toefl_pairs, 320);

  auto describe = [](const char *name, const SizeCheck &s) {
    return std::string(name) + " " + std::to_string(s.vectors) + " vectors, " +
           std::to_string(s.features) + " features (bound " +
           std::to_string(s.bound) + ", distinct patterns " +
           std::to_string(s.distinct) + ")";
  };
  return {sat.ok && toefl.ok,
          describe("SAT", sat) + "; " + describe("TOEFL", toefl)};
}

// 4. Unit norms across every pipeline.
Outcome vector_norms() {
  std::vector<std::pair<std::string, Dataset>> datasets;
  {
    testing::TempDir dir("accept-norms");
    auto spec = labeled_spec(3, 2, 5);
    spec.pairs_per_class = 15;
    auto corpus = make_synthetic_corpus(spec);
    write_text(dir / "corpus.txt", corpus.text);
    write_task(dir / "pairs.tsv", write_labeled, corpus.pairs);
    auto sat = make_planted_sat(5, 4, 10, 0.3, 5);
    write_text(dir / "sat-corpus.txt", sat.text);
    write_task(dir / "sat.tsv", write_sat, sat.questions);
    auto choice = make_planted_choice(20, 10, 0.3, 5);
    write_text(dir / "choice-corpus.txt", choice.text);
    write_task(dir / "choice.tsv", write_choice, choice.questions);

    auto labeled = experiment(dir.path(), "labeled", "pairs.tsv");
    labeled.out = "labeled";
    auto sat_run = experiment(dir.path(), "sat", "sat.tsv");
    sat_run.corpus = {"sat-corpus.txt"};
    sat_run.out = "sat";
    auto toefl = experiment(dir.path(), "toefl", "choice.tsv");
    toefl.corpus = {"choice-corpus.txt"};
    toefl.out = "toefl";
    for (const auto *c : {&labeled, &sat_run, &toefl}) {
      run(*c);
      datasets.emplace_back(c->task,
                            load_dataset(dir / c->out / "dataset.tsv"));
    }
  }
  Gen g(404);
  for (int i = 0; i < 20; ++i) {
    auto corpus = testing::random_corpus(g, 20000, g.range(20, 200));
    auto index = index_of(corpus.text);
    std::vector<WordPair> pairs;
    for (int p = 0; p < 40; ++p) {
      WordPair pair{g.pick(corpus.vocabulary), g.pick(corpus.vocabulary)};
      if (lemmatize(pair.x) != lemmatize(pair.y)) pairs.push_back(pair);
    }
    auto table = harvest(index, Morphology(), pairs, {});
    std::vector<std::optional<std::string>> labels(pairs.size());
    datasets.emplace_back("random", featurize(table, pairs, labels, g.range(1, 30)).dataset);
  }
  std::size_t checked = 0, zero = 0;
  double worst = 0.0;
  for (const auto &[name, data] : datasets) {
    for (const auto &row : data.rows) {
      if (row.values.is_zero()) {
        ++zero;
        continue;
      }
      worst = std::max(worst, std::abs(row.values.norm() - 1.0));
      ++checked;
    }
  }
  return {worst <= 1e-9 && checked > 0,
          std::to_string(checked) + " nonzero vectors from " +
              std::to_string(datasets.size()) + " datasets (" +
              std::to_string(zero) + " zero), max | |v| - 1 | = " +
              fmt_double(worst, 3)};
}

// 5. SMO against the projected-gradient QP oracle.
Outcome smo_correctness() {
  Gen g(505);
  const auto t0 = std::chrono::steady_clock::now();
  double worst_gap = -1e300, worst_kkt = 0.0, worst_eq = 0.0, worst_box = 0.0;
  const std::vector<double> cs = {0.1, 1.0, 10.0};
  Hyperparams base;
  base.tol = 1e-6;
  base.max_passes = 100000;
  for (int t = 0; t < 200; ++t) {
    const int n = g.range(2, 50), dim = g.range(1, 20);
    std::vector<std::vector<double>> dense;
    std::vector<SparseVector> x;
    std::vector<int> y;
    for (int i = 0; i < n; ++i) {
      std::vector<double> v(dim);
      for (auto &e : v) e = g.chance(0.3) ? 0.0 : g.uniform(-1.0, 1.0);
      dense.push_back(v);
      x.push_back(SparseVector::from_dense(v));
      y.push_back(i < 2 ? (i == 0 ? 1 : -1) : (g.chance(0.5) ? 1 : -1));
    }
    Hyperparams hp = base;
    hp.c = g.pick(cs);
    hp.gamma = std::exp(g.uniform(std::log(0.01), std::log(5.0)));
    hp.seed = g.next();
    auto model = train_binary(x, y, hp);
    testing::DualQpOracle oracle(testing::rbf_matrix(dense, hp.gamma), y, hp.c);
    const double want = oracle.objective(oracle.solve());
    const double got = oracle.objective(testing::alphas_of(model, x.size()));
    const auto kkt = testing::check_kkt(model, x, y, hp.c);
    worst_gap = std::max(worst_gap, want - got);
    worst_kkt = std::max(worst_kkt, kkt.max_violation);
    worst_eq = std::max(worst_eq, kkt.equality);
    worst_box = std::max(worst_box, kkt.box);
  }
  const double secs = seconds_since(t0);
  const bool ok = worst_gap <= 1e-4 && worst_kkt <= base.tol &&
                  worst_eq <= base.tol && worst_box <= 1e-12 && secs < 300.0;
  return {ok, "200 problems, worst oracle - smo = " + fmt_double(worst_gap, 3) +
                  ", worst KKT " + fmt_double(worst_kkt, 3) + " (tol " +
                  fmt_double(base.tol, 3) + "), " + fmt_double(secs, 3) + " s"};
}

// 6. Distributions sum to 1; sigmoid parameters are recovered.
Outcome calibration() {
  Gen g(606);
  double worst_sum = 0.0;
  for (int t = 0; t < 10; ++t) {
    const int classes = g.range(2, 5), dim = g.range(2, 8);
    std::vector<SparseVector> x;
    std::vector<std::string> labels;
    for (int i = 0; i < 60; ++i) {
      std::vector<double> v(dim);
      for (auto &e : v) e = g.uniform(-1, 1);
      const int c = i < classes ? i : g.range(0, classes - 1);
      v[c % dim] += 1.5;
      x.push_back(SparseVector::from_dense(v));
      labels.push_back("c" + std::to_string(c));
    }
    Hyperparams hp;
    hp.gamma = g.uniform(0.01, 2.0);
    auto model = CalibratedModel::train(x, labels, hp);
    for (int i = 0; i < 500; ++i) {
      std::vector<double> v(dim);
      for (auto &e : v) e = g.uniform(-3, 3);
      auto p = model.predict_proba(SparseVector::from_dense(v));
      worst_sum = std::max(worst_sum,
                           std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0));
    }
  }
  const std::vector<Sigmoid> truths = {{-2.0, 0.5}, {-1.0, -1.0}, {-3.0, 1.5}};
  double worst_rel = 0.0;
  for (const auto &truth : truths) {
    std::vector<double> f;
    std::vector<int> y;
    for (int i = 0; i < 200000; ++i) {
      const double d = g.uniform(-4.0, 4.0);
      f.push_back(d);
      y.push_back(g.uniform() < truth(d) ? 1 : -1);
    }
    const auto s = fit_sigmoid(f, y);
    worst_rel = std::max({worst_rel, std::abs(s.a - truth.a) / std::abs(truth.a),
                          std::abs(s.b - truth.b) / std::abs(truth.b)});
  }
  return {worst_sum <= 1e-9 && worst_rel <= 0.05,
          "max |sum - 1| = " + fmt_double(worst_sum, 3) +
              " over 5000 predictions; worst (A,B) relative error " +
              fmt_double(worst_rel, 3) + " over 3 sigmoids"};
}

// 7. Two planted classes, 30 train / 20 test, default hyperparameters.
Outcome planted_relations() {
  std::string detail;
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t0 = std::chrono::steady_clock::now();
    auto spec = labeled_spec(2, 2, seed);
    spec.pairs_per_class = 25;
    spec.sentences_per_pair = 20;
    spec.distractor_rate = 0.2;
    auto corpus = make_synthetic_corpus(spec);
    auto index = index_of(corpus.text);
    std::vector<WordPair> pairs;
    for (const auto &p : corpus.pairs) pairs.push_back(p.pair);
    HarvestOptions opt;
    opt.seed = derive_seed(seed, "harvest");
    auto table = harvest(index, Morphology(), pairs, opt);
    // Feature selection sees every pair but no labels.
    std::vector<std::optional<std::string>> none(pairs.size());
    auto f = featurize(table, pairs, none, 20);

    // Stratified split: 15 train and 10 test pairs per class.
    std::mt19937_64 rng(derive_seed(seed, "split"));
    std::vector<std::size_t> train, test;
    for (const auto &cls : spec.classes) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < corpus.pairs.size(); ++i) {
        if (corpus.pairs[i].label == cls.label) members.push_back(i);
      }
      seeded_shuffle(members, rng);
      train.insert(train.end(), members.begin(), members.begin() + 15);
      test.insert(test.end(), members.begin() + 15, members.end());
    }
    std::vector<SparseVector> x;
    std::vector<std::string> y;
    for (auto i : train) {
      x.push_back(f.dataset.rows[i].values);
      y.push_back(corpus.pairs[i].label);
    }
    Hyperparams hp;
    hp.seed = derive_seed(seed, "classifier");
    auto model = CalibratedModel::train(x, y, hp);
    std::size_t correct = 0;
    for (auto i : test) {
      correct += model.classes()[model.predict(f.dataset.rows[i].values)] ==
                 corpus.pairs[i].label;
    }
    const double acc = static_cast<double>(correct) / test.size();
    const double secs = seconds_since(t0);
    ok = ok && train.size() == 30 && test.size() == 20 && acc >= 0.95 &&
         secs < 120.0;
    detail += (detail.empty() ? "" : ", ") + std::string("seed ") +
              std::to_string(seed) + ": " + std::to_string(correct) + "/20 (" +
              fmt_double(secs, 2) + " s)";
  }
  return {ok, detail};
}

// 8. Planted SAT through the full run.
Outcome planted_sat() {
  std::string detail;
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    testing::TempDir dir("accept-sat");
    auto planted = make_planted_sat(5, 10, 30, 0.2, seed);
    write_text(dir / "corpus.txt", planted.text);
    write_task(dir / "sat.tsv", write_sat, planted.questions);
    auto config = experiment(dir.path(), "sat", "sat.tsv");
    config.seed = seed;
    auto r = run(config);
    ok = ok && r.total == 50 && r.accuracy >= 0.9;
    detail += (detail.empty() ? "" : ", ") + std::to_string(r.correct) + "/" +
              std::to_string(r.total);
  }
  return {ok, "accuracy per seed " + detail + " (random baseline 10/50)"};
}

// 9. With all-zero features the harnesses sit at their chance baselines.
Outcome null_calibration() {
  double toefl = 0.0, ternary = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(derive_seed(seed, "null"));
    Dataset data;
    data.dimension = 8;
    std::vector<ChoiceQuestion> questions;
    for (int q = 0; q < 80; ++q) {
      ChoiceQuestion cq;
      cq.stem = "s" + std::to_string(q);
      for (int c = 0; c < 4; ++c) {
        cq.choices[c] = "c" + std::to_string(q) + "x" + std::to_string(c);
        data.rows.push_back({{cq.stem, cq.choices[c]}, SparseVector(8)});
        data.labels.emplace_back();
      }
      cq.answer = static_cast<int>(uniform_below(rng, 4));
      questions.push_back(cq);
    }
    std::vector<LabeledPair> set;
    const std::vector<std::string> classes = {"similar", "associated", "both"};
    for (int i = 0; i < 300; ++i) {
      WordPair p{"t" + std::to_string(i), "u"};
      set.push_back({p, classes[uniform_below(rng, 3)]});
      data.rows.push_back({p, SparseVector(8)});
      data.labels.emplace_back();
    }
    PairVectors vectors(data);
    toefl += eval_choice(questions, vectors, {}, 10, seed).accuracy;
    ternary += eval_labeled(set, vectors, {}, 10, seed).accuracy;
  }
  toefl /= 50;
  ternary /= 50;
  return {std::abs(toefl - 0.25) <= 0.08 && std::abs(ternary - 1.0 / 3.0) <= 0.08,
          "mean over 50 seeds: TOEFL " + fmt_double(toefl, 4) +
              " (target 0.25), ternary " + fmt_double(ternary, 4) +
              " (target 0.333)"};
}

// 10. Identical configs give identical bytes.
Outcome determinism() {
  testing::TempDir dir("accept-determinism");
  auto spec = labeled_spec(3, 2, 10);
  spec.pairs_per_class = 12;
  auto corpus = make_synthetic_corpus(spec);
  write_text(dir / "corpus.txt", corpus.text);
  write_task(dir / "pairs.tsv", write_labeled, corpus.pairs);
  auto sat = make_planted_sat(5, 3, 10, 0.2, 10);
  write_text(dir / "sat-corpus.txt", sat.text);
  write_task(dir / "sat.tsv", write_sat, sat.questions);
  auto choice = make_planted_choice(15, 10, 0.2, 10);
  write_text(dir / "choice-corpus.txt", choice.text);
  write_task(dir / "choice.tsv", write_choice, choice.questions);

  std::vector<RunConfig> configs = {
      experiment(dir.path(), "labeled", "pairs.tsv"),
      experiment(dir.path(), "sat", "sat.tsv"),
      experiment(dir.path(), "toefl", "choice.tsv")};
  configs[1].corpus = {"sat-corpus.txt"};
  configs[2].corpus = {"choice-corpus.txt"};
  std::size_t compared = 0;
  for (auto &c : configs) {
    c.seed = 77;
    c.out = c.task + "-a";
    run(c);
    c.out = c.task + "-b";
    run(c);
    for (const char *name : {"report.txt", "summary.json", "dataset.tsv",
                             "model.txt", "features.txt"}) {
      const auto a = testing::slurp(dir / (c.task + "-a") / name);
      const auto b = testing::slurp(dir / (c.task + "-b") / name);
      if (a.empty() || a != b) {
        return {false, c.task + " " + name + " differs between runs"};
      }
      ++compared;
    }
  }
  return {true, std::to_string(compared) +
                    " artifact pairs byte-identical across labeled, sat and toefl runs"};
}

}  // namespace
}  // namespace pairclass

int main() {
  using namespace pairclass;
  spdlog::set_level(spdlog::level::err);
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"retrieval oracle", retrieval_oracle},
      {"pattern cardinality", pattern_cardinality},
      {"feature space sizes", feature_space_sizes},
      {"vector norms", vector_norms},
      {"SMO correctness", smo_correctness},
      {"calibration", calibration},
      {"planted relations end to end", planted_relations},
      {"planted SAT", planted_sat},
      {"null calibration", null_calibration},
      {"determinism", determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
