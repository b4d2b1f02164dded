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

// pairclass: classify the relation between two words from corpus contexts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "pairclass/config.h"
#include "pairclass/pipeline.h"
#include "pairclass/run.h"
#include "pairclass/synthetic.h"
#include "pairclass/tasks.h"

namespace fs = std::filesystem;
using namespace pairclass;

namespace {

enum Exit { kOk = 0, kInput = 2, kFormat = 3, kTraining = 4 };

std::ofstream open_out(const fs::path &path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

// Pairs from a labeled file plus any given as x:y on the command line.
std::vector<LabeledPair> load_pairs(const std::string &file,
                                    const std::vector<std::string> &inline_pairs) {
  std::vector<LabeledPair> pairs;
  if (!file.empty()) {
    std::istringstream in(read_file(file));
    pairs = read_labeled(in);
  }
  for (const auto &p : inline_pairs) pairs.push_back({parse_pair(p), "?"});
  if (pairs.empty()) throw InputError("no pairs given (use --pairs or --pair)");
  return pairs;
}

struct WindowArgs {
  std::vector<int> before{0, 1}, between{0, 3}, after{0, 1};

  void add(CLI::App *app) {
    app->add_option("--window-before", before, "min max words before")
        ->expected(2);
    app->add_option("--window-between", between, "min max words between")
        ->expected(2);
    app->add_option("--window-after", after, "min max words after")
        ->expected(2);
  }
  WindowSpec spec() const {
    WindowSpec w;
    w.before = {before[0], before[1]};
    w.between = {between[0], between[1]};
    w.after = {after[0], after[1]};
    w.validate();
    return w;
  }
};

}  // namespace

int main(int argc, char **argv) {
  auto logger = spdlog::stderr_color_mt("pairclass");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%^%l%$: %v");

  CLI::App app{"Relation classification for word pairs"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "only log warnings and errors");
  app.set_version_flag("--version", std::string("pairclass ") + kVersion);

  // index
  auto *index_cmd = app.add_subcommand("index", "build a corpus index");
  std::vector<std::string> index_corpus;
  std::string index_out;
  index_cmd->add_option("corpus,--corpus", index_corpus, "corpus text files")
      ->required()
      ->check(CLI::ExistingFile);
  index_cmd->add_option("-o,--out", index_out, "index directory")->required();

  // harvest
  auto *harvest_cmd =
      app.add_subcommand("harvest", "collect normalized phrases for pairs");
  std::string harvest_index, harvest_pairs, harvest_out, harvest_exceptions;
  std::vector<std::string> harvest_inline;
  std::uint64_t harvest_seed = 1;
  std::size_t harvest_cap = 10000;
  WindowArgs harvest_window;
  harvest_cmd->add_option("-i,--index", harvest_index, "index directory")
      ->required();
  harvest_cmd->add_option("--pairs", harvest_pairs,
                          "labeled pair file (x<TAB>y<TAB>label)");
  harvest_cmd->add_option("--pair", harvest_inline, "a pair as x:y");
  harvest_cmd->add_option("--exceptions", harvest_exceptions,
                          "irregular forms (lemma<TAB>form)");
  harvest_cmd->add_option("--max-phrases", harvest_cap,
                          "phrases kept per pair");
  harvest_cmd->add_option("--seed", harvest_seed, "sampling seed");
  harvest_cmd->add_option("-o,--out", harvest_out, "phrase table file")
      ->required();
  harvest_window.add(harvest_cmd);

  // features
  auto *features_cmd = app.add_subcommand(
      "features", "select patterns and vectorize pairs from a phrase table");
  std::string features_phrases, features_labels, features_out;
  int features_k = 20;
  features_cmd->add_option("phrases", features_phrases, "phrase table file")
      ->required()
      ->check(CLI::ExistingFile);
  features_cmd->add_option("--labels", features_labels,
                           "labeled pair file; rows follow its order");
  features_cmd->add_option("-k,--k", features_k, "number of patterns to keep");
  features_cmd->add_option("-o,--out", features_out, "output directory")
      ->required();

  // run
  auto *run_cmd = app.add_subcommand("run", "run a task from a config file");
  std::string run_config;
  run_cmd->add_option("config,--config", run_config, "TOML config")
      ->required()
      ->check(CLI::ExistingFile);
  std::optional<std::uint64_t> o_seed;
  std::optional<int> o_k, o_folds, o_rounds;
  std::optional<double> o_c, o_gamma, o_tol;
  std::optional<std::string> o_task, o_out;
  run_cmd->add_option("--seed", o_seed, "root seed");
  run_cmd->add_option("-k,--k", o_k, "patterns per pair");
  run_cmd->add_option("--folds", o_folds, "cross-validation folds");
  run_cmd->add_option("--bagging-rounds", o_rounds, "SAT rounds per question");
  run_cmd->add_option("-c,--c", o_c, "SVM cost");
  run_cmd->add_option("--gamma", o_gamma, "RBF width");
  run_cmd->add_option("--tol", o_tol, "KKT tolerance");
  run_cmd->add_option("--task", o_task, "sat, toefl or labeled");
  run_cmd->add_option("-o,--out", o_out, "output directory");
  bool print_config = false;
  run_cmd->add_flag("--print-config", print_config,
                    "print the effective config and exit");

  // synth
  auto *synth_cmd = app.add_subcommand(
      "synth", "write a synthetic corpus, dataset and config");
  std::string synth_kind = "labeled", synth_out;
  std::uint64_t synth_seed = 1;
  int synth_classes = 4, synth_pairs = 20, synth_sentences = 30,
      synth_questions = 40;
  synth_cmd->add_option("kind", synth_kind, "labeled, sat or toefl")
      ->required()
      ->check(CLI::IsMember({"labeled", "sat", "toefl"}));
  synth_cmd->add_option("-o,--out", synth_out, "output directory")->required();
  synth_cmd->add_option("--seed", synth_seed, "generator seed");
  synth_cmd->add_option("--classes", synth_classes,
                        "relation classes (labeled) or relations (sat)");
  synth_cmd->add_option("--pairs-per-class", synth_pairs, "planted pairs per class (labeled)");
  synth_cmd->add_option("--sentences-per-pair", synth_sentences,
                        "corpus sentences per pair");
  synth_cmd->add_option("--questions", synth_questions,
                        "number of questions (sat, toefl)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  if (quiet) spdlog::set_level(spdlog::level::warn);

  try {
    if (*index_cmd) {
      std::vector<fs::path> paths(index_corpus.begin(), index_corpus.end());
      auto index = build_index(paths, index_out);
      std::cout << "indexed " << index.token_count() << " tokens in "
                << index.document_count() << " documents, checksum "
                << hex64(index.corpus_checksum()) << "\n";
    } else if (*harvest_cmd) {
      auto index = CorpusIndex::open(harvest_index);
      auto morphology = harvest_exceptions.empty()
                            ? Morphology()
                            : Morphology::with_exceptions(harvest_exceptions);
      std::vector<WordPair> pairs;
      for (auto &p : load_pairs(harvest_pairs, harvest_inline)) {
        pairs.push_back(p.pair);
      }
      HarvestOptions options;
      options.window = harvest_window.spec();
      options.max_phrases_per_pair = harvest_cap;
      options.seed = harvest_seed;
      auto table = harvest(index, morphology, pairs, options);
      auto out = open_out(harvest_out);
      write_phrases(out, table);
      std::size_t total = 0;
      for (const auto &[pair, phrases] : table) total += phrases.size();
      std::cout << total << " phrases for " << table.size() << " pairs\n";
    } else if (*features_cmd) {
      std::istringstream in(read_file(features_phrases));
      auto table = read_phrases(in);
      std::vector<WordPair> pairs;
      std::vector<std::optional<std::string>> labels;
      if (features_labels.empty()) {
        for (const auto &[pair, phrases] : table) {
          pairs.push_back(pair);
          labels.emplace_back();
        }
      } else {
        for (auto &p : load_pairs(features_labels, {})) {
          pairs.push_back(p.pair);
          labels.push_back(p.label);
        }
      }
      auto result = featurize(table, pairs, labels, features_k);
      fs::create_directories(features_out);
      auto space_out = open_out(fs::path(features_out) / "features.txt");
      result.space.write(space_out);
      auto data_out = open_out(fs::path(features_out) / "dataset.tsv");
      result.dataset.write(data_out);
      std::cout << result.space.size() << " features, "
                << result.dataset.size() << " rows, "
                << result.dataset.zero_rows() << " zero vectors\n";
    } else if (*run_cmd) {
      auto config = RunConfig::load(run_config);
      if (o_seed) config.seed = *o_seed;
      if (o_k) config.k = *o_k;
      if (o_folds) config.folds = *o_folds;
      if (o_rounds) config.bagging_rounds = *o_rounds;
      if (o_c) config.hp.c = *o_c;
      if (o_gamma) config.hp.gamma = *o_gamma;
      if (o_tol) config.hp.tol = *o_tol;
      if (o_task) config.task = *o_task;
      if (o_out) {
        // Relative to the working directory, like any other CLI path.
        config.out = fs::absolute(*o_out).string();
      }
      if (print_config) {
        config.validate();
        std::cout << config.to_toml();
        return kOk;
      }
      auto result = run(config);
      std::cout << "accuracy " << format_double(result.accuracy) << " ("
                << result.correct << "/" << result.total << ")\n";
    } else if (*synth_cmd) {
      const fs::path dir(synth_out);
      fs::create_directories(dir);
      RunConfig config;
      config.corpus = {"corpus.txt"};
      config.out = "out";
      config.seed = synth_seed;
      std::string text;
      if (synth_kind == "labeled") {
        auto spec = labeled_spec(synth_classes, 2, synth_seed);
        spec.pairs_per_class = synth_pairs;
        spec.sentences_per_pair = synth_sentences;
        auto corpus = make_synthetic_corpus(spec);
        text = corpus.text;
        auto out = open_out(dir / "pairs.tsv");
        write_labeled(out, corpus.pairs);
        config.task = "labeled";
        config.dataset = "pairs.tsv";
      } else if (synth_kind == "sat") {
        const int relations = std::max(synth_classes, 5);
        auto planted = make_planted_sat(relations,
                                        std::max(1, synth_questions / relations),
                                        synth_sentences, 0.2, synth_seed);
        text = planted.text;
        auto out = open_out(dir / "sat.tsv");
        write_sat(out, planted.questions);
        config.task = "sat";
        config.dataset = "sat.tsv";
      } else {
        auto planted =
            make_planted_choice(synth_questions, synth_sentences, 0.2,
                                synth_seed);
        text = planted.text;
        auto out = open_out(dir / "choice.tsv");
        write_choice(out, planted.questions);
        config.task = "toefl";
        config.dataset = "choice.tsv";
      }
      open_out(dir / "corpus.txt") << text;
      open_out(dir / "config.toml") << config.to_toml();
      std::cout << "wrote " << (dir / "config.toml").string() << "\n";
    }
  } catch (const FormatError &e) {
    spdlog::error("{}", e.what());
    return kFormat;
  } catch (const TrainingError &e) {
    spdlog::error("{}", e.what());
    return kTraining;
  } catch (const InputError &e) {
    spdlog::error("{}", e.what());
    return kInput;
  } catch (const std::invalid_argument &e) {
    spdlog::error("{}", e.what());
    return kInput;
  } catch (const fs::filesystem_error &e) {
    spdlog::error("{}", e.what());
    return kInput;
  }
  return kOk;
}
