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

#ifndef PAIRCLASS_PATTERNS_H_
#define PAIRCLASS_PATTERNS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pairclass/common.h"
#include "pairclass/corpus_index.h"

namespace pairclass {

// A phrase template. Canonical text joins the slots with single spaces:
// "X" and "Y" for the pair members, "*" for a one-word wildcard and the word
// itself for a literal. Literals are lowercase, so the text form is
// unambiguous.
class Pattern {
 public:
  enum class Kind : std::uint8_t { kVarX, kVarY, kWildcard, kLiteral };
  struct Slot {
    Kind kind;
    std::string word;  // literals only
    bool operator==(const Slot &) const = default;
  };

  Pattern() = default;
  // Throws std::invalid_argument unless there is exactly one X and one Y.
  explicit Pattern(std::vector<Slot> slots);
  // Throws std::invalid_argument on malformed text.
  static Pattern parse(std::string_view text);

  const std::vector<Slot> &slots() const { return slots_; }
  std::size_t size() const { return slots_.size(); }
  std::string text() const;

  bool operator==(const Pattern &) const = default;

 private:
  std::vector<Slot> slots_;
};

// All 2^(n-2) patterns of an n-word normalized phrase: the pair members
// become X and Y in surface order and each context word is either kept or
// replaced by a wildcard. Returned in canonical-text order.
std::vector<Pattern> patterns_from_phrase(const PhraseMatch &match);
// Same set, canonical text only. This is the hot path for counting.
std::vector<std::string> pattern_texts(const PhraseMatch &match);

bool pattern_matches(const Pattern &pattern, const PhraseMatch &match);

// Phrases harvested for each input pair.
using PhraseTable = std::map<WordPair, std::vector<PhraseMatch>>;

struct FeatureSpace {
  std::vector<std::string> patterns;   // canonical text, selection order
  std::vector<std::uint32_t> counts;   // generating-pair count per pattern
  int k = 20;
  std::size_t n_pairs = 0;

  std::size_t size() const { return patterns.size(); }
  std::uint64_t checksum() const;

  // Header line "# pairclass-features v1 k=<k> pairs=<n> size=<m>", then
  // one "<count>\t<pattern>" line per feature.
  void write(std::ostream &out) const;
  static FeatureSpace read(std::istream &in);
};

// Counts, for every pattern, the number of distinct pairs whose phrases
// generate it; keeps the top k * |table| by descending count, ties broken by
// ascending canonical text. Throws std::invalid_argument when k <= 0.
FeatureSpace select_features(const PhraseTable &table, int k);

// Keeps at most limit phrases, sampled uniformly without replacement with a
// fixed seed; order of the survivors is preserved.
std::vector<PhraseMatch> downsample_phrases(std::vector<PhraseMatch> phrases,
                                            std::size_t limit,
                                            std::uint64_t seed);

}  // namespace pairclass

#endif  // PAIRCLASS_PATTERNS_H_
