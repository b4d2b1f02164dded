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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "pairclass/features.h"
#include "pairclass/patterns.h"
#include "test_util.h"

namespace pairclass {
namespace {

PhraseMatch phrase(std::vector<std::string> tokens, int x, int y) {
  PhraseMatch m;
  m.tokens = std::move(tokens);
  m.x_index = x;
  m.y_index = y;
  m.x_first = x < y;
  return m;
}

FeatureSpace space_of(std::vector<std::string> patterns) {
  FeatureSpace s;
  s.counts.assign(patterns.size(), 1);
  s.patterns = std::move(patterns);
  s.n_pairs = 1;
  return s;
}

TEST_CASE("sparse vectors") {
  std::vector<double> dense{0.0, 1.5, 0.0, -2.0};
  auto v = SparseVector::from_dense(dense);
  CHECK(v.dimension() == 4);
  CHECK(v.nonzeros() == 2);
  CHECK(v.at(1) == 1.5);
  CHECK(v.at(2) == 0.0);
  CHECK(v.dense() == dense);
  CHECK(v.norm() == doctest::Approx(2.5));
  SparseVector w(4);
  CHECK(w.is_zero());
  w.push_back(3, 1.0);
  CHECK_THROWS_AS(w.push_back(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(w.push_back(4, 1.0), std::invalid_argument);
  CHECK(dot(v, w) == -2.0);
  CHECK(squared_distance(v, w) == doctest::Approx(1.5 * 1.5 + 9.0));
}

TEST_CASE("log(f+1) values normalized to unit length") {
  auto space = space_of({"X of Y", "X * Y", "Y X"});
  std::vector<PhraseMatch> ms = {phrase({"a", "of", "b"}, 0, 2),
                                 phrase({"a", "to", "b"}, 0, 2),
                                 phrase({"a", "to", "b"}, 0, 2)};
  auto v = build_vector({"a", "b"}, ms, space);
  // Hand count: f = (1, 3, 0).
  const double r0 = std::log(2.0), r1 = std::log(4.0);
  const double n = std::sqrt(r0 * r0 + r1 * r1);
  CHECK(v.values.dimension() == 3);
  CHECK(std::abs(v.values.at(0) - r0 / n) < 1e-12);
  CHECK(std::abs(v.values.at(1) - r1 / n) < 1e-12);
  CHECK(v.values.at(2) == 0.0);
  CHECK(std::abs(v.values.norm() - 1.0) < 1e-12);
}

TEST_CASE("equal raw values give equal unit components") {
  auto space = space_of({"X of Y", "X to Y"});
  std::vector<PhraseMatch> ms = {phrase({"a", "of", "b"}, 0, 2),
                                 phrase({"a", "to", "b"}, 0, 2)};
  auto v = build_vector({"a", "b"}, ms, space);
  CHECK(std::abs(v.values.at(0) - std::sqrt(0.5)) < 1e-9);
  CHECK(std::abs(v.values.at(1) - std::sqrt(0.5)) < 1e-9);
}

TEST_CASE("no matches gives the zero vector") {
  auto space = space_of({"X of Y"});
  auto v = build_vector({"a", "b"}, std::vector<PhraseMatch>{}, space);
  CHECK(v.values.is_zero());
  CHECK(v.values.dimension() == 1);
}

TEST_CASE("toy table of three pairs against a hand computation") {
  PhraseTable table;
  table[{"mason", "stone"}] = {
      phrase({"the", "mason", "cut", "the", "stone", "with"}, 1, 4),
      phrase({"mason", "of", "stone"}, 0, 2)};
  table[{"carpenter", "wood"}] = {phrase({"carpenter", "of", "wood"}, 0, 2),
                                  phrase({"carpenter", "of", "wood"}, 0, 2)};
  table[{"potter", "clay"}] = {};
  auto space = select_features(table, 20);
  // 16 + 2 patterns for mason:stone, 2 shared with carpenter:wood.
  REQUIRE(space.size() == 18);
  REQUIRE(space.patterns[0] == "X * Y");
  REQUIRE(space.patterns[1] == "X of Y");
  std::vector<WordPair> pairs = {
      {"carpenter", "wood"}, {"mason", "stone"}, {"potter", "clay"}};
  std::vector<std::optional<std::string>> labels = {"a", "b", std::nullopt};
  auto data = build_matrix(pairs, labels, table, space);
  REQUIRE(data.size() == 3);
  CHECK(data.dimension == 18);
  CHECK(data.space_checksum == space.checksum());
  // carpenter:wood: f = 2 on both shared patterns, 0 elsewhere.
  const auto &cw = data.rows[0].values;
  CHECK(cw.nonzeros() == 2);
  CHECK(std::abs(cw.at(0) - std::sqrt(0.5)) < 1e-12);
  // mason:stone: f = 1 on all 18 patterns.
  const auto &ms = data.rows[1].values;
  CHECK(ms.nonzeros() == 18);
  for (auto x : ms.values()) CHECK(std::abs(x - 1.0 / std::sqrt(18.0)) < 1e-12);
  CHECK(data.rows[2].values.is_zero());
  CHECK(data.zero_rows() == 1);
  CHECK(!data.labels[2].has_value());
  CHECK(data.rows[1].values ==
        build_vector({"mason", "stone"}, table[{"mason", "stone"}], space)
            .values);
  CHECK(build_matrix({}, {}, table, space).size() == 0);
  std::vector<WordPair> missing = {{"no", "where"}};
  std::vector<std::optional<std::string>> none(1);
  CHECK_THROWS_AS(build_matrix(missing, none, table, space),
                  std::invalid_argument);
}

TEST_CASE("vectors depend only on match counts") {
  auto space = space_of({"X of Y", "X * Y"});
  std::vector<PhraseMatch> a = {phrase({"a", "of", "b"}, 0, 2),
                                phrase({"a", "in", "b"}, 0, 2)};
  std::vector<PhraseMatch> b = {phrase({"a", "in", "b"}, 0, 2),
                                phrase({"a", "of", "b"}, 0, 2)};
  CHECK(build_vector({"a", "b"}, a, space).values ==
        build_vector({"a", "b"}, b, space).values);
}

TEST_CASE("random vectors have unit norm and reload bit-exactly") {
  testing::Gen g(31);
  std::vector<std::string> pool = {"of", "to", "the", "a", "in", "and"};
  PhraseTable table;
  std::vector<WordPair> pairs;
  for (int p = 0; p < 40; ++p) {
    WordPair pair{g.word(3, 6) + "x", g.word(3, 6) + "y"};
    std::vector<PhraseMatch> ms;
    const int count = g.range(0, 12);
    for (int i = 0; i < count; ++i) {
      std::vector<std::string> t = {g.pick(pool), "x"};
      const int gap = g.range(0, 3);
      for (int k = 0; k < gap; ++k) t.push_back(g.pick(pool));
      t.push_back("y");
      ms.push_back(phrase(t, 1, static_cast<int>(t.size()) - 1));
    }
    table[pair] = ms;
    pairs.push_back(pair);
  }
  auto space = select_features(table, 3);
  std::vector<std::optional<std::string>> labels(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); i += 2) labels[i] = "odd";
  auto data = build_matrix(pairs, labels, table, space);
  for (const auto &row : data.rows) {
    CHECK(row.values.dimension() == space.size());
    if (!row.values.is_zero()) CHECK(std::abs(row.values.norm() - 1.0) < 1e-9);
    for (auto x : row.values.values()) CHECK(x > 0.0);
  }
  std::stringstream s;
  data.write(s);
  auto back = Dataset::read(s);
  REQUIRE(back.size() == data.size());
  CHECK(back.space_checksum == data.space_checksum);
  CHECK(back.dimension == data.dimension);
  CHECK(back.labels == data.labels);
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(back.rows[i].pair == data.rows[i].pair);
    CHECK(back.rows[i].values == data.rows[i].values);
  }
}

TEST_CASE("malformed dataset text is a format error") {
  std::istringstream a("# pairclass-dataset v1 features=2 space=00 rows=1\n"
                       "a\tb\t?\t1,2,3\n");
  CHECK_THROWS_AS(Dataset::read(a), FormatError);
  std::istringstream b("# pairclass-dataset v9 features=2 space=00 rows=0\n");
  CHECK_THROWS_AS(Dataset::read(b), FormatError);
  std::istringstream c("# pairclass-dataset v1 features=1 space=00 rows=2\n"
                       "a\tb\t?\t0\n");
  CHECK_THROWS_AS(Dataset::read(c), FormatError);
}

}  // namespace
}  // namespace pairclass
