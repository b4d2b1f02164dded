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

#ifndef PAIRCLASS_CONFIG_H_
#define PAIRCLASS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pairclass/classifier.h"
#include "pairclass/corpus_index.h"

namespace pairclass {

// Everything a run depends on. The file form is a flat subset of TOML:
//
//   task = "labeled"            # sat | toefl | labeled
//   corpus = ["corpus.txt"]
//   dataset = "pairs.tsv"
//   window_between = [0, 3]
//   gamma = 0.01
//
// Relative paths are resolved against base_dir, the directory of the file
// the config was loaded from.
struct RunConfig {
  std::vector<std::string> corpus;
  std::string index;
  std::string task = "labeled";
  std::string dataset;
  std::string out = "out";
  std::string exceptions;
  std::uint64_t seed = 1;
  int k = 20;
  int folds = 10;
  int bagging_rounds = 10;
  std::size_t max_phrases_per_pair = 10000;
  Hyperparams hp;
  WindowSpec window;

  std::filesystem::path base_dir;  // not part of the file form

  // Throws InputError naming the first invalid field.
  void validate() const;
  std::filesystem::path resolve(const std::string &path) const;

  std::string to_toml() const;
  // Throws InputError on syntax errors, unknown or repeated keys and
  // mistyped values. Missing keys keep their defaults.
  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::filesystem::path &path);

  // Hash of the file form without `out` and `index`, so the same experiment
  // written to two places, or run on a cached index, has one identity.
  std::uint64_t hash() const;

  bool operator==(const RunConfig &other) const {
    return to_toml() == other.to_toml();
  }
};

}  // namespace pairclass

#endif  // PAIRCLASS_CONFIG_H_
