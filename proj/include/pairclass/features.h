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

#ifndef PAIRCLASS_FEATURES_H_
#define PAIRCLASS_FEATURES_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pairclass/common.h"
#include "pairclass/patterns.h"

namespace pairclass {

// Fixed-dimension vector holding only its nonzero entries, indices strictly
// increasing. Feature spaces reach tens of thousands of dimensions while a
// pair touches a few hundred patterns at most.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dimension) : dimension_(dimension) {}
  static SparseVector from_dense(std::span<const double> values);

  // Indices must arrive in increasing order. Zero values are dropped.
  void push_back(std::uint32_t index, double value);

  std::size_t dimension() const { return dimension_; }
  std::size_t nonzeros() const { return indices_.size(); }
  std::span<const std::uint32_t> indices() const { return indices_; }
  std::span<const double> values() const { return values_; }
  bool is_zero() const { return indices_.empty(); }

  double at(std::size_t i) const;
  std::vector<double> dense() const;
  double norm() const;
  bool operator==(const SparseVector &) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
};

double dot(const SparseVector &u, const SparseVector &v);
// Sum of squared componentwise differences, accumulated in index order.
double squared_distance(const SparseVector &u, const SparseVector &v);

struct FeatureVector {
  WordPair pair;
  SparseVector values;
};

// Rows in input pair order; labels are absent for unlabeled pairs.
struct Dataset {
  std::size_t dimension = 0;
  std::uint64_t space_checksum = 0;
  std::vector<FeatureVector> rows;
  std::vector<std::optional<std::string>> labels;

  std::size_t size() const { return rows.size(); }
  std::size_t zero_rows() const;

  // Header "# pairclass-dataset v1 features=<n> space=<hex> rows=<r>", then
  // "x\ty\tlabel\tv1,...,vn" per row with "?" for a missing label. Values
  // use shortest round-trip decimal text, so reading back is bit-exact.
  void write(std::ostream &out) const;
  static Dataset read(std::istream &in);
};

// log(f_i + 1) per feature, f_i being the number of the pair's phrases that
// pattern i matches, scaled to unit Euclidean length. A pair with no matches
// gets the zero vector.
FeatureVector build_vector(const WordPair &pair,
                           std::span<const PhraseMatch> phrases,
                           const FeatureSpace &space);

// Same computation with a prebuilt pattern lookup; use this when vectorizing
// many pairs against one space.
class Vectorizer {
 public:
  explicit Vectorizer(const FeatureSpace &space);
  FeatureVector operator()(const WordPair &pair,
                           std::span<const PhraseMatch> phrases) const;
  std::size_t dimension() const { return dimension_; }

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Throws std::invalid_argument if a pair is missing from the table.
Dataset build_matrix(std::span<const WordPair> pairs,
                     std::span<const std::optional<std::string>> labels,
                     const PhraseTable &table, const FeatureSpace &space);

}  // namespace pairclass

#endif  // PAIRCLASS_FEATURES_H_
