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

#ifndef PAIRCLASS_RUN_H_
#define PAIRCLASS_RUN_H_

#include <filesystem>

#include "pairclass/config.h"
#include "pairclass/corpus_index.h"

namespace pairclass {

inline constexpr const char *kVersion = "0.1.0";

// Opens the index at dir when it was built from the same corpus bytes, and
// (re)builds it from the corpus otherwise. With no corpus given the index
// must already exist. Throws FormatError for an index of another format
// version.
CorpusIndex open_or_build_index(const std::filesystem::path &dir,
                                std::span<const std::filesystem::path> corpus);

struct RunResult {
  double accuracy = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
  std::filesystem::path out_dir;
};

// index -> harvest -> features -> task. Writes into the output directory:
//   report.txt     human-readable results
//   summary.json   the same numbers for machines
//   features.txt   selected feature space
//   dataset.tsv    one vector per pair
//   model.txt      every model trained by the task harness
//   manifest.json  config, hashes and versions behind the above
// Reports carry no timestamps or absolute paths, so identical configs give
// identical bytes.
RunResult run(const RunConfig &config);

}  // namespace pairclass

#endif  // PAIRCLASS_RUN_H_
