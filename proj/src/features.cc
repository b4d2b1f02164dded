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

#include "pairclass/features.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pairclass {

SparseVector SparseVector::from_dense(std::span<const double> values) {
  SparseVector v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    v.push_back(static_cast<std::uint32_t>(i), values[i]);
  }
  return v;
}

void SparseVector::push_back(std::uint32_t index, double value) {
  if (index >= dimension_ ||
      (!indices_.empty() && index <= indices_.back())) {
    throw std::invalid_argument("sparse index out of order or range");
  }
  if (value == 0.0) return;
  indices_.push_back(index);
  values_.push_back(value);
}

double SparseVector::at(std::size_t i) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
  if (it == indices_.end() || *it != i) return 0.0;
  return values_[it - indices_.begin()];
}

std::vector<double> SparseVector::dense() const {
  std::vector<double> out(dimension_, 0.0);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    out[indices_[i]] = values_[i];
  }
  return out;
}

double SparseVector::norm() const { return std::sqrt(dot(*this, *this)); }

double dot(const SparseVector &u, const SparseVector &v) {
  auto ui = u.indices(), vi = v.indices();
  auto uv = u.values(), vv = v.values();
  double sum = 0.0;
  std::size_t a = 0, b = 0;
  while (a < ui.size() && b < vi.size()) {
    if (ui[a] == vi[b]) {
      sum += uv[a++] * vv[b++];
    } else if (ui[a] < vi[b]) {
      ++a;
    } else {
      ++b;
    }
  }
  return sum;
}

double squared_distance(const SparseVector &u, const SparseVector &v) {
  auto ui = u.indices(), vi = v.indices();
  auto uv = u.values(), vv = v.values();
  double sum = 0.0;
  std::size_t a = 0, b = 0;
  while (a < ui.size() || b < vi.size()) {
    double d;
    if (b == vi.size() || (a < ui.size() && ui[a] < vi[b])) {
      d = uv[a++];
    } else if (a == ui.size() || vi[b] < ui[a]) {
      d = -vv[b++];
    } else {
      d = uv[a++] - vv[b++];
    }
    sum += d * d;
  }
  return sum;
}

std::size_t Dataset::zero_rows() const {
  std::size_t n = 0;
  for (const auto &r : rows) n += r.values.is_zero();
  return n;
}

void Dataset::write(std::ostream &out) const {
  out << "# pairclass-dataset v1 features=" << dimension
      << " space=" << hex64(space_checksum) << " rows=" << rows.size() << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto &row = rows[r];
    out << row.pair.x << '\t' << row.pair.y << '\t'
        << (labels[r] ? *labels[r] : std::string("?")) << '\t';
    auto idx = row.values.indices();
    auto val = row.values.values();
    std::size_t next = 0;
    for (std::size_t i = 0; i < dimension; ++i) {
      if (i) out << ',';
      if (next < idx.size() && idx[next] == i) {
        out << format_double(val[next++]);
      } else {
        out << '0';
      }
    }
    out << '\n';
  }
}

Dataset Dataset::read(std::istream &in) {
  Dataset ds;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("dataset: empty file");
  auto header = split(line, ' ');
  if (header.size() != 6 || header[0] != "#" ||
      header[1] != "pairclass-dataset" || header[2] != "v1" ||
      header[3].rfind("features=", 0) != 0 ||
      header[4].rfind("space=", 0) != 0 || header[5].rfind("rows=", 0) != 0) {
    throw FormatError("dataset: bad header '" + line + "'");
  }
  ds.dimension = std::stoull(header[3].substr(9));
  ds.space_checksum = std::stoull(header[4].substr(6), nullptr, 16);
  const auto expected_rows = std::stoull(header[5].substr(5));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 4) {
      throw FormatError("dataset: expected 4 tab-separated fields");
    }
    FeatureVector row;
    row.pair = {fields[0], fields[1]};
    row.values = SparseVector(ds.dimension);
    if (ds.dimension > 0) {
      auto values = split(fields[3], ',');
      if (values.size() != ds.dimension) {
        throw FormatError("dataset: row " + row.pair.str() + " has " +
                          std::to_string(values.size()) + " values, expected " +
                          std::to_string(ds.dimension));
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        row.values.push_back(static_cast<std::uint32_t>(i),
                             parse_double(values[i]));
      }
    }
    ds.rows.push_back(std::move(row));
    ds.labels.push_back(fields[2] == "?" ? std::nullopt
                                         : std::optional(fields[2]));
  }
  if (ds.rows.size() != expected_rows) {
    throw FormatError("dataset: row count mismatch");
  }
  return ds;
}

Vectorizer::Vectorizer(const FeatureSpace &space)
    : dimension_(space.size()) {
  index_.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    index_.emplace(space.patterns[i], static_cast<std::uint32_t>(i));
  }
}

FeatureVector Vectorizer::operator()(
    const WordPair &pair, std::span<const PhraseMatch> phrases) const {
  // A pattern matches a phrase exactly when it is one of the phrase's
  // generated patterns, so counting generated texts counts matches.
  std::unordered_map<std::uint32_t, std::uint32_t> freq;
  for (const auto &phrase : phrases) {
    for (const auto &text : pattern_texts(phrase)) {
      auto it = index_.find(text);
      if (it != index_.end()) ++freq[it->second];
    }
  }
  std::vector<std::pair<std::uint32_t, double>> entries;
  entries.reserve(freq.size());
  double sq = 0.0;
  for (auto [i, f] : freq) {
    double v = std::log(static_cast<double>(f) + 1.0);
    entries.emplace_back(i, v);
  }
  std::sort(entries.begin(), entries.end());
  for (const auto &e : entries) sq += e.second * e.second;

  FeatureVector out;
  out.pair = pair;
  out.values = SparseVector(dimension_);
  if (sq > 0.0) {
    const double norm = std::sqrt(sq);
    for (const auto &[i, v] : entries) out.values.push_back(i, v / norm);
  }
  return out;
}

FeatureVector build_vector(const WordPair &pair,
                           std::span<const PhraseMatch> phrases,
                           const FeatureSpace &space) {
  return Vectorizer(space)(pair, phrases);
}

Dataset build_matrix(std::span<const WordPair> pairs,
                     std::span<const std::optional<std::string>> labels,
                     const PhraseTable &table, const FeatureSpace &space) {
  if (!labels.empty() && labels.size() != pairs.size()) {
    throw std::invalid_argument("build_matrix: labels/pairs size mismatch");
  }
  Dataset ds;
  ds.dimension = space.size();
  ds.space_checksum = space.checksum();
  Vectorizer vectorize(space);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto it = table.find(pairs[i]);
    if (it == table.end()) {
      throw std::invalid_argument("build_matrix: no phrases recorded for " +
                                  pairs[i].str());
    }
    ds.rows.push_back(vectorize(pairs[i], it->second));
    if (ds.rows.back().values.dimension() != ds.dimension) {
      throw std::invalid_argument("build_matrix: dimension mismatch");
    }
    ds.labels.push_back(labels.empty() ? std::nullopt : labels[i]);
  }
  return ds;
}

}  // namespace pairclass
