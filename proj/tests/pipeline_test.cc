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

#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "pairclass/pipeline.h"
#include "test_util.h"

namespace pairclass {
namespace {

CorpusIndex index_of(std::string_view text) {
  TokenizedCorpus corpus;
  corpus.add_text(text);
  return CorpusIndex(corpus);
}

const char *const kText =
    "The masons cut the stones with care.\n\n"
    "A mason shapes stone daily.\n\n"
    "Stone walls for the mason.\n\n"
    "The carpenter cut the wood and the mason watched.\n";

bool same_phrase(const PhraseMatch &a, const PhraseMatch &b) {
  return a.tokens == b.tokens && a.x_index == b.x_index &&
         a.y_index == b.y_index && a.x_first == b.x_first;
}

TEST_CASE("harvest_pair finds inflected mentions and lemmatizes them") {
  auto index = index_of(kText);
  Morphology morph;
  HarvestOptions opt;
  auto ms = harvest_pair(index, morph, {"mason", "stone"}, opt, 1);
  REQUIRE(!ms.empty());
  bool reversed = false;
  for (const auto &m : ms) {
    CHECK(m.tokens[m.x_index] == "mason");
    CHECK(m.tokens[m.y_index] == "stone");
    CHECK(m.x_first == (m.x_index < m.y_index));
    for (const auto &t : m.tokens) CHECK(lemmatize(t) == t);
    reversed |= !m.x_first;
  }
  CHECK(reversed);
  CHECK(std::any_of(ms.begin(), ms.end(), [](const PhraseMatch &m) {
    return m.tokens == std::vector<std::string>{"the", "mason", "cut", "the",
                                                "stone", "with"};
  }));
  CHECK(harvest_pair(index, morph, {"stone", "stones"}, opt, 1).empty());
  CHECK(harvest_pair(index, morph, {"mason", "absent"}, opt, 1).empty());
}

TEST_CASE("harvest dedupes pairs, caps phrases and is deterministic") {
  std::string text;
  for (int i = 0; i < 50; ++i) text += "a mason and a stone\n\n";
  auto index = index_of(text);
  Morphology morph;
  HarvestOptions opt;
  opt.max_phrases_per_pair = 7;
  opt.seed = 3;
  std::vector<WordPair> pairs = {
      {"mason", "stone"}, {"stone", "mason"}, {"mason", "stone"}};
  auto a = harvest(index, morph, pairs, opt);
  auto b = harvest(index, morph, pairs, opt);
  REQUIRE(a.size() == 2);
  CHECK(a.at({"mason", "stone"}).size() == 7);
  for (const auto &[pair, ms] : a) {
    const auto &other = b.at(pair);
    REQUIRE(other.size() == ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
      CHECK(ms[i].start == other[i].start);
      CHECK(same_phrase(ms[i], other[i]));
    }
  }
}

TEST_CASE("phrase table text round-trips") {
  auto index = index_of(kText);
  Morphology morph;
  std::vector<WordPair> pairs = {
      {"mason", "stone"}, {"carpenter", "wood"}, {"potter", "clay"}};
  auto table = harvest(index, morph, pairs, {});
  std::stringstream s;
  write_phrases(s, table);
  auto back = read_phrases(s);
  REQUIRE(back.size() == table.size());
  for (const auto &[pair, ms] : table) {
    const auto &other = back.at(pair);
    REQUIRE(other.size() == ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
      CHECK(same_phrase(ms[i], other[i]));
    }
  }
  std::istringstream bad("# pairclass-phrases v1 pairs=1\npair a b 2\n0 1 a b\n");
  CHECK_THROWS_AS(read_phrases(bad), FormatError);
  std::istringstream junk("hello\n");
  CHECK_THROWS_AS(read_phrases(junk), FormatError);
}

TEST_CASE("featurize gives each pair the same vector in any order") {
  testing::Gen g(8);
  auto corpus = testing::random_corpus(g, 4000, 30);
  auto index = index_of(corpus.text);
  Morphology morph;
  std::vector<WordPair> pairs;
  for (int i = 0; i < 25; ++i) {
    WordPair p{g.pick(corpus.vocabulary), g.pick(corpus.vocabulary)};
    if (lemmatize(p.x) == lemmatize(p.y)) continue;
    if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) {
      pairs.push_back(p);
    }
  }
  auto table = harvest(index, morph, pairs, {});
  std::vector<std::optional<std::string>> labels(pairs.size());
  auto a = featurize(table, pairs, labels, 5);
  auto reversed = pairs;
  std::reverse(reversed.begin(), reversed.end());
  auto b = featurize(table, reversed, labels, 5);
  CHECK(a.space.patterns == b.space.patterns);
  PairVectors va(a.dataset), vb(b.dataset);
  for (const auto &p : pairs) {
    CHECK(va.at(p) == vb.at(p));
    CHECK(va.at(p).dimension() == a.space.size());
  }
  CHECK_THROWS_AS(va.row({"no", "such"}), std::invalid_argument);
}

}  // namespace
}  // namespace pairclass
