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

#ifndef PAIRCLASS_PIPELINE_H_
#define PAIRCLASS_PIPELINE_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pairclass/corpus_index.h"
#include "pairclass/features.h"
#include "pairclass/morphology.h"
#include "pairclass/patterns.h"

namespace pairclass {

struct HarvestOptions {
  WindowSpec window;
  // Pairs with more phrases than this keep a seeded uniform sample.
  std::size_t max_phrases_per_pair = 10000;
  std::uint64_t seed = 0;
};

// Normalized phrases for one pair: windows around any variant of x and any
// variant of y, with every token lemmatized. A pair whose variant sets
// overlap (x and y share a lemma) gets no phrases.
std::vector<PhraseMatch> harvest_pair(const CorpusIndex &index,
                                      const Morphology &morphology,
                                      const WordPair &pair,
                                      const HarvestOptions &options,
                                      std::uint64_t pair_seed);

// Harvests every distinct pair. Pair i is sampled with
// derive_seed(options.seed, "harvest", i) over the sorted distinct pairs.
PhraseTable harvest(const CorpusIndex &index, const Morphology &morphology,
                    std::span<const WordPair> pairs,
                    const HarvestOptions &options);

// Phrase table text form:
//   # pairclass-phrases v1 pairs=<n>
//   pair <x> <y> <count>
//   <x_index> <y_index> <token> <token> ...     (count lines)
void write_phrases(std::ostream &out, const PhraseTable &table);
PhraseTable read_phrases(std::istream &in);

// Lookup from pair to its row in a dataset.
class PairVectors {
 public:
  explicit PairVectors(const Dataset &dataset);

  // Throws std::invalid_argument for a pair that is not in the dataset.
  std::size_t row(const WordPair &pair) const;
  const SparseVector &at(const WordPair &pair) const {
    return dataset_->rows[row(pair)].values;
  }
  const Dataset &dataset() const { return *dataset_; }

 private:
  const Dataset *dataset_;
  std::map<WordPair, std::size_t> rows_;
};

struct Featurized {
  FeatureSpace space;
  Dataset dataset;
};

// Selects the feature space over the whole table and vectorizes the pairs in
// the given order.
Featurized featurize(const PhraseTable &table, std::span<const WordPair> pairs,
                     std::span<const std::optional<std::string>> labels,
                     int k);

}  // namespace pairclass

#endif  // PAIRCLASS_PIPELINE_H_
