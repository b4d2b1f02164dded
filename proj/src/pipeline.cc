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

#include "pairclass/pipeline.h"

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace pairclass {

std::vector<PhraseMatch> harvest_pair(const CorpusIndex &index,
                                      const Morphology &morphology,
                                      const WordPair &pair,
                                      const HarvestOptions &options,
                                      std::uint64_t pair_seed) {
  const auto x = morphology.inflect(pair.x);
  const auto y = morphology.inflect(pair.y);
  WordSet xs(x.variants.begin(), x.variants.end());
  WordSet ys(y.variants.begin(), y.variants.end());
  for (const auto &w : xs) {
    if (ys.count(w)) {
      spdlog::warn("pair {} has overlapping variants ('{}'); no phrases",
                   pair.str(), w);
      return {};
    }
  }
  auto found = index.find_phrases(xs, ys, options.window);
  if (found.size() > options.max_phrases_per_pair) {
    spdlog::info("pair {}: sampling {} of {} phrases", pair.str(),
                 options.max_phrases_per_pair, found.size());
    found = downsample_phrases(std::move(found), options.max_phrases_per_pair,
                               pair_seed);
  }
  for (auto &m : found) m = morphology.normalize_phrase(m);
  return found;
}

PhraseTable harvest(const CorpusIndex &index, const Morphology &morphology,
                    std::span<const WordPair> pairs,
                    const HarvestOptions &options) {
  options.window.validate();
  std::set<WordPair> distinct(pairs.begin(), pairs.end());
  PhraseTable table;
  std::uint64_t i = 0;
  for (const auto &pair : distinct) {
    table.emplace(pair, harvest_pair(index, morphology, pair, options,
                                     derive_seed(options.seed, "harvest", i++)));
  }
  std::size_t empty = 0, phrases = 0;
  for (const auto &[pair, found] : table) {
    empty += found.empty();
    phrases += found.size();
  }
  spdlog::info("harvested {} phrases for {} pairs ({} without phrases)",
               phrases, table.size(), empty);
  return table;
}

void write_phrases(std::ostream &out, const PhraseTable &table) {
  out << "# pairclass-phrases v1 pairs=" << table.size() << "\n";
  for (const auto &[pair, phrases] : table) {
    out << "pair " << pair.x << ' ' << pair.y << ' ' << phrases.size() << "\n";
    for (const auto &m : phrases) {
      out << m.x_index << ' ' << m.y_index;
      for (const auto &t : m.tokens) out << ' ' << t;
      out << "\n";
    }
  }
}

PhraseTable read_phrases(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# pairclass-phrases v1 pairs=", 0)) {
    throw FormatError("phrase table: bad header");
  }
  const auto expected = std::stoull(line.substr(line.find('=') + 1));
  PhraseTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream head(line);
    std::string keyword;
    WordPair pair;
    std::size_t count = 0;
    if (!(head >> keyword >> pair.x >> pair.y >> count) || keyword != "pair") {
      throw FormatError("phrase table: expected 'pair x y count', got '" +
                        line + "'");
    }
    auto &phrases = table[pair];
    for (std::size_t i = 0; i < count; ++i) {
      if (!std::getline(in, line)) throw FormatError("phrase table: truncated");
      std::istringstream fields(line);
      PhraseMatch m;
      if (!(fields >> m.x_index >> m.y_index)) {
        throw FormatError("phrase table: bad phrase line '" + line + "'");
      }
      std::string token;
      while (fields >> token) m.tokens.push_back(token);
      m.x_first = m.x_index < m.y_index;
      const int n = static_cast<int>(m.tokens.size());
      if (m.x_index < 0 || m.y_index < 0 || m.x_index >= n || m.y_index >= n ||
          m.x_index == m.y_index) {
        throw FormatError("phrase table: bad positions in '" + line + "'");
      }
      phrases.push_back(std::move(m));
    }
  }
  if (table.size() != expected) throw FormatError("phrase table: pair count");
  return table;
}

PairVectors::PairVectors(const Dataset &dataset) : dataset_(&dataset) {
  for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
    rows_.emplace(dataset.rows[i].pair, i);
  }
}

std::size_t PairVectors::row(const WordPair &pair) const {
  auto it = rows_.find(pair);
  if (it == rows_.end()) {
    throw std::invalid_argument("no vector for pair " + pair.str());
  }
  return it->second;
}

Featurized featurize(const PhraseTable &table, std::span<const WordPair> pairs,
                     std::span<const std::optional<std::string>> labels,
                     int k) {
  Featurized out;
  out.space = select_features(table, k);
  out.dataset = build_matrix(pairs, labels, table, out.space);
  spdlog::info("feature space: {} patterns for {} pairs (k={}); {} zero vectors",
               out.space.size(), table.size(), k, out.dataset.zero_rows());
  return out;
}

}  // namespace pairclass
