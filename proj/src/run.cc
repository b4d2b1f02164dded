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

#include "pairclass/run.h"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"
#include <spdlog/spdlog.h>

#include "pairclass/pipeline.h"
#include "pairclass/tasks.h"

namespace pairclass {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw InputError("cannot write " + path.string());
}

template <typename T>
std::vector<T> read_task_file(const fs::path &path,
                              std::vector<T> (*reader)(std::istream &)) {
  std::istringstream in(read_file(path));
  try {
    return reader(in);
  } catch (const InputError &e) {
    throw InputError(path.filename().string() + ": " + e.what());
  }
}

// Pairs in first-appearance order, each once.
class PairList {
 public:
  void add(const WordPair &p, std::optional<std::string> label = {}) {
    if (seen_.insert(p).second) {
      pairs_.push_back(p);
      labels_.push_back(std::move(label));
    }
  }
  const std::vector<WordPair> &pairs() const { return pairs_; }
  const std::vector<std::optional<std::string>> &labels() const {
    return labels_;
  }

 private:
  std::set<WordPair> seen_;
  std::vector<WordPair> pairs_;
  std::vector<std::optional<std::string>> labels_;
};

std::string percent(double v) { return fmt::format("{:.1f}%", 100.0 * v); }

}  // namespace

CorpusIndex open_or_build_index(const fs::path &dir,
                                std::span<const fs::path> corpus) {
  std::optional<std::uint64_t> want;
  if (!corpus.empty()) want = corpus_checksum(corpus);
  if (fs::exists(dir) && !fs::is_empty(dir)) {
    auto index = CorpusIndex::open(dir);
    if (!want || index.corpus_checksum() == *want) {
      spdlog::info("reusing index {} ({} tokens)", dir.string(),
                   index.token_count());
      return index;
    }
    spdlog::info("corpus changed since {} was built; rebuilding", dir.string());
  }
  if (!want) throw InputError("no index at " + dir.string() + " and no corpus");
  return build_index(corpus, dir);
}

RunResult run(const RunConfig &config) {
  config.validate();
  const fs::path out_dir = config.resolve(config.out);
  std::vector<fs::path> corpus;
  for (const auto &c : config.corpus) corpus.push_back(config.resolve(c));
  const fs::path index_dir =
      config.index.empty() ? out_dir / "index" : config.resolve(config.index);
  const fs::path dataset_path = config.resolve(config.dataset);

  // Task input first, so a bad dataset fails before any heavy work.
  PairList pairs;
  std::vector<SatQuestion> sat;
  std::vector<ChoiceQuestion> choice;
  std::vector<LabeledPair> labeled;
  if (config.task == "sat") {
    sat = read_task_file(dataset_path, &read_sat);
    if (sat.size() < 2) throw InputError("SAT task needs at least 2 questions");
    for (const auto &q : sat) {
      pairs.add(q.stem);
      for (const auto &c : q.choices) pairs.add(c);
    }
  } else if (config.task == "toefl") {
    choice = read_task_file(dataset_path, &read_choice);
    for (const auto &q : choice) {
      for (const auto &item : expand_choice_question(q)) {
        pairs.add(item.pair, item.label);
      }
    }
    if (pairs.pairs().size() < static_cast<std::size_t>(config.folds)) {
      throw InputError("fewer choice pairs than folds");
    }
  } else {
    labeled = read_task_file(dataset_path, &read_labeled);
    validate_labeled(labeled);
    if (labeled.size() < static_cast<std::size_t>(config.folds)) {
      throw InputError("fewer labeled pairs than folds");
    }
    for (const auto &item : labeled) pairs.add(item.pair, item.label);
  }

  fs::create_directories(out_dir);
  const auto index = open_or_build_index(index_dir, corpus);
  const auto morphology = config.exceptions.empty()
                              ? Morphology()
                              : Morphology::with_exceptions(
                                    config.resolve(config.exceptions));

  HarvestOptions harvest_options;
  harvest_options.window = config.window;
  harvest_options.max_phrases_per_pair = config.max_phrases_per_pair;
  harvest_options.seed = derive_seed(config.seed, "harvest");
  const auto table = harvest(index, morphology, pairs.pairs(), harvest_options);
  const auto features =
      featurize(table, pairs.pairs(), pairs.labels(), config.k);
  const auto &dataset = features.dataset;
  for (const auto &row : dataset.rows) {
    if (row.values.dimension() != features.space.size()) {
      throw std::logic_error("vector dimension differs from feature space");
    }
  }
  const PairVectors vectors(dataset);

  Hyperparams hp = config.hp;
  hp.seed = derive_seed(config.seed, "classifier");
  const auto task_seed = derive_seed(config.seed, "task");

  ModelFile models;
  models.space_checksum = dataset.space_checksum;
  models.rows = dataset.size();
  models.hp = hp;
  std::vector<NamedModel> trained;

  nlohmann::json summary;
  std::ostringstream report;
  RunResult result;
  result.out_dir = out_dir;
  double baseline = 0.0;

  report << "pairclass " << kVersion << " report\n";
  report << "task: " << config.task << "\n";
  report << "config hash: " << hex64(config.hash()) << "\n";
  report << "seed: " << config.seed << "\n";
  report << "corpus checksum: " << hex64(index.corpus_checksum()) << "\n";
  report << "corpus tokens: " << index.token_count() << "\n";
  report << fmt::format("hyperparams: c={} gamma={} tol={} k={} folds={} "
                        "bagging_rounds={}\n",
                        format_double(hp.c), format_double(hp.gamma),
                        format_double(hp.tol), config.k, config.folds,
                        config.bagging_rounds);
  report << "pairs: " << dataset.size() << "\n";
  report << "features: " << features.space.size() << "\n";
  report << "zero vectors: " << dataset.zero_rows() << "\n";

  if (config.task == "sat") {
    auto r = eval_sat(sat, vectors, hp, config.bagging_rounds, task_seed,
                      &trained);
    baseline = 0.2;
    result = {r.accuracy, r.correct, sat.size(), out_dir};
    report << fmt::format("accuracy: {} ({}/{})\n", percent(r.accuracy),
                          r.correct, sat.size());
    report << "random baseline: " << percent(baseline) << "\n";
    report << "tied answers: " << r.ties << "\n\n";
    report << "question\tstem\tanswer\tguess\tprobabilities\n";
    nlohmann::json answers = nlohmann::json::array();
    for (std::size_t q = 0; q < sat.size(); ++q) {
      const auto &a = r.answers[q];
      report << q << '\t' << sat[q].stem.str() << '\t' << sat[q].answer << '\t'
             << a.choice << (a.tie ? "*" : "") << '\t';
      for (std::size_t c = 0; c < 5; ++c) {
        report << (c ? "," : "") << fmt::format("{:.4f}", a.probabilities[c]);
      }
      report << "\n";
      answers.push_back({{"stem", sat[q].stem.str()},
                         {"answer", sat[q].answer},
                         {"guess", a.choice},
                         {"tie", a.tie},
                         {"probabilities", a.probabilities}});
    }
    summary["answers"] = answers;
    summary["ties"] = r.ties;
  } else if (config.task == "toefl") {
    auto r = eval_choice(choice, vectors, hp, config.folds, task_seed, &trained);
    baseline = 0.25;
    result = {r.accuracy, r.correct, choice.size(), out_dir};
    report << fmt::format("accuracy: {} ({}/{})\n", percent(r.accuracy),
                          r.correct, choice.size());
    report << "random baseline: " << percent(baseline) << "\n";
    report << "tied answers: " << r.ties << "\n\n";
    report << "question\tstem\tanswer\tguess\tprobabilities\n";
    nlohmann::json answers = nlohmann::json::array();
    for (std::size_t q = 0; q < choice.size(); ++q) {
      report << q << '\t' << choice[q].stem << '\t' << choice[q].answer << '\t'
             << r.guesses[q] << '\t';
      for (std::size_t c = 0; c < 4; ++c) {
        report << (c ? "," : "") << fmt::format("{:.4f}", r.probabilities[q][c]);
      }
      report << "\n";
      answers.push_back({{"stem", choice[q].stem},
                         {"answer", choice[q].answer},
                         {"guess", r.guesses[q]},
                         {"probabilities", r.probabilities[q]}});
    }
    summary["answers"] = answers;
    summary["ties"] = r.ties;
  } else {
    auto r = eval_labeled(labeled, vectors, hp, config.folds, task_seed,
                          &trained);
    baseline = r.baseline;
    result = {r.accuracy, r.correct, labeled.size(), out_dir};
    report << fmt::format("accuracy: {} ({}/{})\n", percent(r.accuracy),
                          r.correct, labeled.size());
    report << "majority baseline: " << percent(baseline) << "\n";
    report << "folds missing a class: " << r.incomplete_folds << "\n\n";
    report << "class\tprecision\trecall\n";
    for (std::size_t c = 0; c < r.classes.size(); ++c) {
      report << r.classes[c] << '\t' << fmt::format("{:.4f}", r.precision[c])
             << '\t' << fmt::format("{:.4f}", r.recall[c]) << "\n";
    }
    report << "\nconfusion (rows: true, columns: predicted)\n";
    for (const auto &c : r.classes) report << '\t' << c;
    report << "\n";
    for (std::size_t t = 0; t < r.classes.size(); ++t) {
      report << r.classes[t];
      for (auto n : r.confusion[t]) report << '\t' << n;
      report << "\n";
    }
    summary["classes"] = r.classes;
    summary["confusion"] = r.confusion;
    summary["precision"] = r.precision;
    summary["recall"] = r.recall;
    summary["incomplete_folds"] = r.incomplete_folds;
  }

  summary["task"] = config.task;
  summary["seed"] = config.seed;
  summary["config_hash"] = hex64(config.hash());
  summary["corpus_checksum"] = hex64(index.corpus_checksum());
  summary["accuracy"] = result.accuracy;
  summary["correct"] = result.correct;
  summary["total"] = result.total;
  summary["baseline"] = baseline;
  summary["pairs"] = dataset.size();
  summary["features"] = features.space.size();
  summary["zero_vectors"] = dataset.zero_rows();
  summary["hyperparams"] = {{"c", hp.c},
                            {"gamma", hp.gamma},
                            {"tol", hp.tol},
                            {"max_passes", hp.max_passes},
                            {"k", config.k},
                            {"folds", config.folds},
                            {"bagging_rounds", config.bagging_rounds}};

  models.sections = std::move(trained);
  std::ostringstream space_text, dataset_text, model_text;
  features.space.write(space_text);
  dataset.write(dataset_text);
  models.write(model_text);

  const std::vector<std::pair<std::string, std::string>> artifacts = {
      {"report.txt", report.str()},
      {"summary.json", summary.dump(2) + "\n"},
      {"features.txt", space_text.str()},
      {"dataset.tsv", dataset_text.str()},
      {"model.txt", model_text.str()},
  };
  nlohmann::json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = config.to_toml();
  manifest["config_hash"] = hex64(config.hash());
  manifest["seed"] = config.seed;
  manifest["corpus_checksum"] = hex64(index.corpus_checksum());
  manifest["index_format"] = CorpusIndex::kFormatVersion;
  manifest["feature_space_checksum"] = hex64(features.space.checksum());
  for (const auto &[name, text] : artifacts) {
    write_text(out_dir / name, text);
    manifest["artifacts"][name] = hex64(fnv1a(text));
  }
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
  spdlog::info("{} accuracy {} ({}/{}); artifacts in {}", config.task,
               percent(result.accuracy), result.correct, result.total,
               out_dir.string());
  return result;
}

}  // namespace pairclass
