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

#ifndef PAIRCLASS_COMMON_H_
#define PAIRCLASS_COMMON_H_

#include <cstdint>
#include <compare>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pairclass {

// Error categories. The CLI maps each one onto a distinct exit status.

// Missing or malformed user input (files, config values, dataset lines).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An on-disk artifact written by a different format version, or one whose
// checksum does not match what the reader expects.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Classifier training or calibration could not produce a model.
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An ordered pair of surface words, X:Y.
struct WordPair {
  std::string x;
  std::string y;

  std::string str() const { return x + ":" + y; }
  auto operator<=>(const WordPair &) const = default;
  bool operator==(const WordPair &) const = default;
};

// Parses "x:y". Throws InputError on anything else.
WordPair parse_pair(std::string_view text);

// 64-bit FNV-1a. Used for checksums that must be stable across platforms
// and runs (std::hash is neither).
class Fnv1a {
 public:
  void update(std::string_view bytes);
  void update(const void *data, std::size_t size);
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Derives an independent stream seed for a named stage (and optional index)
// from the root seed, so each stage can be replayed on its own.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stage,
                          std::uint64_t index = 0);

// Uniform integer in [0, n) by rejection sampling. Unlike
// std::uniform_int_distribution its output is the same on every standard
// library, which keeps seeded runs reproducible across toolchains.
std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t n);

template <typename T>
void seeded_shuffle(std::vector<T> &items, std::mt19937_64 &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[uniform_below(rng, i)]);
  }
}

// Splits on a single character, keeping empty fields.
std::vector<std::string> split(std::string_view text, char sep);

// Shortest decimal text that parses back to the identical double.
std::string format_double(double value);
double parse_double(std::string_view text);

}  // namespace pairclass

#endif  // PAIRCLASS_COMMON_H_
