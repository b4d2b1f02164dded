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

#ifndef PAIRCLASS_SYNTHETIC_H_
#define PAIRCLASS_SYNTHETIC_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "pairclass/tasks.h"

namespace pairclass {

// A relation class signaled by marker contexts such as "X such as Y". Each
// marker holds exactly one X and one Y; the other tokens are literal words.
struct RelationClass {
  std::string label;
  std::vector<std::string> markers;
  // Pairs to plant for this class. Generated pseudo-word pairs top the list
  // up to pairs_per_class.
  std::vector<WordPair> pairs;
};

struct SyntheticSpec {
  std::vector<RelationClass> classes;
  int pairs_per_class = 20;
  int sentences_per_pair = 30;
  // Share of a pair's sentences that hold it in a marker-free context (the
  // two words with 0-3 random words between them, either order).
  double distractor_rate = 0.2;
  // Share of mentions written as an inflected form instead of the base word.
  double variant_rate = 0.2;
  std::uint64_t seed = 0;

  // Throws InputError unless there are two or more classes, each with a
  // well-formed marker.
  void validate() const;
};

// One sentence per paragraph, in shuffled order, plus the planted pairs in
// class order.
struct SyntheticCorpus {
  std::string text;
  std::vector<LabeledPair> pairs;
};

SyntheticCorpus make_synthetic_corpus(const SyntheticSpec &spec);

// n distinct pronounceable lowercase words that the morphology treats as
// regular base forms, whose inflections collide neither with each other nor
// with anything in avoid.
std::vector<std::string> pseudo_words(std::size_t n, std::uint64_t seed,
                                      const std::set<std::string> &avoid = {});

// n marker templates, each with its own literal words: a fixed list of
// English contexts, then generated "X <word> Y" markers.
std::vector<std::string> default_markers(std::size_t n, std::uint64_t seed = 0);

// Classes rel1..relN, each with its own markers_per_class default markers.
SyntheticSpec labeled_spec(int classes, int markers_per_class,
                           std::uint64_t seed);

struct PlantedSat {
  std::string text;
  std::vector<SatQuestion> questions;
};

// Questions whose stem and answer come from the same relation and whose four
// other choices come from four different other relations.
PlantedSat make_planted_sat(int relations, int questions_per_relation,
                            int sentences_per_pair, double distractor_rate,
                            std::uint64_t seed);

struct PlantedChoice {
  std::string text;
  std::vector<ChoiceQuestion> questions;
};

// Stem and answer share synonym markers; the stem co-occurs with the three
// wrong choices only in contrast markers.
PlantedChoice make_planted_choice(int questions, int sentences_per_pair,
                                  double distractor_rate, std::uint64_t seed);

}  // namespace pairclass

#endif  // PAIRCLASS_SYNTHETIC_H_
