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

#include "pairclass/synthetic.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "pairclass/morphology.h"

namespace pairclass {

namespace {

constexpr std::string_view kConsonants = "bdfgklmnprtvz";
constexpr std::string_view kVowels = "aeiou";
// Final letters that never look like a suffix to the lemmatizer.
constexpr std::string_view kFinals = "bklmnprt";
constexpr std::size_t kFillerWords = 200;

bool is_word(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(),
                                   [](char c) { return c >= 'a' && c <= 'z'; });
}

struct Marker {
  std::vector<std::string> tokens;  // "X" and "Y" stand for the pair
};

Marker parse_marker(const std::string &text) {
  Marker m;
  int xs = 0, ys = 0;
  for (auto &t : split(text, ' ')) {
    if (t == "X") {
      ++xs;
    } else if (t == "Y") {
      ++ys;
    } else if (!is_word(t)) {
      throw InputError("marker '" + text + "': '" + t +
                       "' is not a lowercase word");
    }
    m.tokens.push_back(std::move(t));
  }
  if (xs != 1 || ys != 1) {
    throw InputError("marker '" + text + "' needs exactly one X and one Y");
  }
  return m;
}

void insert_variants(const std::string &word, std::set<std::string> *out) {
  auto v = inflect(word).variants;
  out->insert(v.begin(), v.end());
}

class Writer {
 public:
  Writer(std::mt19937_64 &rng, const std::vector<std::string> &fillers,
         double variant_rate)
      : rng_(rng), fillers_(fillers), variant_rate_(variant_rate) {}

  void fill(int lo, int hi, std::vector<std::string> *out) {
    const int n = lo + static_cast<int>(uniform_below(rng_, hi - lo + 1));
    for (int i = 0; i < n; ++i) {
      out->push_back(fillers_[uniform_below(rng_, fillers_.size())]);
    }
  }

  std::string form(const std::string &word) {
    if (chance() >= variant_rate_) return word;
    const auto variants = inflect(word).variants;
    std::vector<std::string> others;
    for (const auto &v : variants) {
      if (v != word) others.push_back(v);
    }
    if (others.empty()) return word;
    return others[uniform_below(rng_, others.size())];
  }

  double chance() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 &rng_;
  const std::vector<std::string> &fillers_;
  double variant_rate_;
};

std::string sentence(const std::vector<std::string> &tokens) {
  std::string s;
  for (const auto &t : tokens) {
    if (!s.empty()) s.push_back(' ');
    s += t;
  }
  if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s + ".";
}

}  // namespace

void SyntheticSpec::validate() const {
  if (classes.size() < 2) {
    throw InputError("synthetic corpus needs at least two relation classes");
  }
  std::set<std::string> labels;
  for (const auto &c : classes) {
    if (c.label.empty() || c.label.find_first_of(" \t\n") != std::string::npos) {
      throw InputError("relation label '" + c.label + "' is empty or has spaces");
    }
    if (!labels.insert(c.label).second) {
      throw InputError("relation label '" + c.label + "' is repeated");
    }
    if (c.markers.empty()) {
      throw InputError("relation '" + c.label + "' has no marker context");
    }
    for (const auto &m : c.markers) parse_marker(m);
    for (const auto &p : c.pairs) {
      if (!is_word(p.x) || !is_word(p.y)) {
        throw InputError("planted pair " + p.str() + " is not two lowercase words");
      }
    }
  }
  if (pairs_per_class < 0 || sentences_per_pair < 1) {
    throw InputError("pairs_per_class must be >= 0 and sentences_per_pair >= 1");
  }
  if (!(distractor_rate >= 0.0 && distractor_rate <= 1.0) ||
      !(variant_rate >= 0.0 && variant_rate <= 1.0)) {
    throw InputError("rates must lie in [0, 1]");
  }
}

std::vector<std::string> pseudo_words(std::size_t n, std::uint64_t seed,
                                      const std::set<std::string> &avoid) {
  std::mt19937_64 rng(seed);
  std::set<std::string> taken(avoid.begin(), avoid.end());
  std::vector<std::string> out;
  const std::size_t max_attempts = 1000 * n + 10000;
  for (std::size_t attempt = 0; out.size() < n; ++attempt) {
    if (attempt >= max_attempts) {
      throw std::runtime_error("pseudo_words: vocabulary exhausted");
    }
    const int syllables = 2 + static_cast<int>(uniform_below(rng, 2));
    std::string w;
    for (int s = 0; s < syllables; ++s) {
      w.push_back(kConsonants[uniform_below(rng, kConsonants.size())]);
      w.push_back(kVowels[uniform_below(rng, kVowels.size())]);
    }
    w.push_back(kFinals[uniform_below(rng, kFinals.size())]);
    if (lemmatize(w) != w) continue;
    const auto variants = inflect(w).variants;
    bool ok = true;
    for (const auto &v : variants) {
      if (taken.count(v) || lemmatize(v) != w) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    taken.insert(variants.begin(), variants.end());
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::string> default_markers(std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> kFixed = {
      "X such as Y",     "either X or Y",      "X made from Y",
      "X used for Y",    "X part of Y",        "X causes Y",
      "X lives in Y",    "X works with Y",     "X becomes Y",
      "X against the Y", "X near Y",           "X without any Y"};
  std::vector<std::string> out(kFixed.begin(),
                               kFixed.begin() + std::min(n, kFixed.size()));
  if (n > kFixed.size()) {
    std::set<std::string> avoid;
    for (const auto &m : kFixed) {
      for (const auto &t : split(m, ' ')) {
        if (t != "X" && t != "Y") insert_variants(t, &avoid);
      }
    }
    for (const auto &w : pseudo_words(n - kFixed.size(),
                                      derive_seed(seed, "markers"), avoid)) {
      out.push_back("X " + w + " Y");
    }
  }
  return out;
}

SyntheticSpec labeled_spec(int classes, int markers_per_class,
                           std::uint64_t seed) {
  if (classes < 2 || markers_per_class < 1) {
    throw std::invalid_argument("labeled_spec needs 2+ classes and 1+ marker");
  }
  const auto markers = default_markers(
      static_cast<std::size_t>(classes * markers_per_class), seed);
  SyntheticSpec spec;
  spec.seed = seed;
  for (int c = 0; c < classes; ++c) {
    RelationClass rc;
    rc.label = "rel" + std::to_string(c + 1);
    rc.markers.assign(markers.begin() + c * markers_per_class,
                      markers.begin() + (c + 1) * markers_per_class);
    spec.classes.push_back(std::move(rc));
  }
  return spec;
}

SyntheticCorpus make_synthetic_corpus(const SyntheticSpec &spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);

  std::vector<std::vector<Marker>> markers;
  std::set<std::string> avoid;
  std::size_t generated_pairs = 0;
  for (const auto &c : spec.classes) {
    markers.emplace_back();
    for (const auto &m : c.markers) {
      markers.back().push_back(parse_marker(m));
      for (const auto &t : markers.back().back().tokens) {
        if (t != "X" && t != "Y") insert_variants(t, &avoid);
      }
    }
    for (const auto &p : c.pairs) {
      insert_variants(p.x, &avoid);
      insert_variants(p.y, &avoid);
    }
    const auto wanted = static_cast<std::size_t>(spec.pairs_per_class);
    if (c.pairs.size() < wanted) generated_pairs += wanted - c.pairs.size();
  }

  auto words = pseudo_words(2 * generated_pairs + kFillerWords,
                            derive_seed(spec.seed, "words"), avoid);
  const std::vector<std::string> fillers(words.end() - kFillerWords,
                                         words.end());
  SyntheticCorpus out;
  std::size_t next = 0;
  for (const auto &c : spec.classes) {
    for (const auto &p : c.pairs) out.pairs.push_back({p, c.label});
    for (std::size_t i = c.pairs.size();
         i < static_cast<std::size_t>(spec.pairs_per_class); ++i) {
      out.pairs.push_back({{words[next], words[next + 1]}, c.label});
      next += 2;
    }
  }

  Writer writer(rng, fillers, spec.variant_rate);
  std::map<std::string, std::size_t> class_of;
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    class_of[spec.classes[c].label] = c;
  }
  const int distractors = static_cast<int>(
      std::lround(spec.distractor_rate * spec.sentences_per_pair));
  std::vector<std::string> sentences;
  for (const auto &item : out.pairs) {
    const auto &class_markers = markers[class_of[item.label]];
    for (int s = 0; s < spec.sentences_per_pair; ++s) {
      std::vector<std::string> tokens;
      writer.fill(0, 2, &tokens);
      if (s < distractors) {
        const bool x_first = uniform_below(rng, 2) == 0;
        tokens.push_back(writer.form(x_first ? item.pair.x : item.pair.y));
        writer.fill(0, 3, &tokens);
        tokens.push_back(writer.form(x_first ? item.pair.y : item.pair.x));
      } else {
        const auto &m = class_markers[uniform_below(rng, class_markers.size())];
        for (const auto &t : m.tokens) {
          if (t == "X") {
            tokens.push_back(writer.form(item.pair.x));
          } else if (t == "Y") {
            tokens.push_back(writer.form(item.pair.y));
          } else {
            tokens.push_back(t);
          }
        }
      }
      writer.fill(0, 2, &tokens);
      sentences.push_back(sentence(tokens));
    }
  }
  seeded_shuffle(sentences, rng);
  for (const auto &s : sentences) {
    out.text += s;
    out.text += "\n\n";
  }
  return out;
}

PlantedSat make_planted_sat(int relations, int questions_per_relation,
                            int sentences_per_pair, double distractor_rate,
                            std::uint64_t seed) {
  if (relations < 5 || questions_per_relation < 1) {
    throw std::invalid_argument(
        "planted SAT needs at least 5 relations and 1 question each");
  }
  SyntheticSpec spec;
  spec.seed = derive_seed(seed, "corpus");
  spec.pairs_per_class = 6 * questions_per_relation;
  spec.sentences_per_pair = sentences_per_pair;
  spec.distractor_rate = distractor_rate;
  const auto markers = default_markers(relations, seed);
  for (int r = 0; r < relations; ++r) {
    spec.classes.push_back({"rel" + std::to_string(r), {markers[r]}, {}});
  }
  auto corpus = make_synthetic_corpus(spec);

  std::vector<std::vector<WordPair>> by_relation(relations);
  for (int r = 0; r < relations; ++r) {
    for (int i = 0; i < spec.pairs_per_class; ++i) {
      by_relation[r].push_back(corpus.pairs[r * spec.pairs_per_class + i].pair);
    }
  }
  const std::size_t stems = 2 * questions_per_relation;
  std::mt19937_64 rng(derive_seed(seed, "questions"));
  PlantedSat out;
  out.text = std::move(corpus.text);
  for (int r = 0; r < relations; ++r) {
    for (int j = 0; j < questions_per_relation; ++j) {
      SatQuestion q;
      q.stem = by_relation[r][2 * j];
      std::vector<int> others;
      for (int o = 0; o < relations; ++o) {
        if (o != r) others.push_back(o);
      }
      seeded_shuffle(others, rng);
      std::vector<WordPair> choices;
      for (int d = 0; d < 4; ++d) {
        const auto &pool = by_relation[others[d]];
        choices.push_back(
            pool[stems + uniform_below(rng, pool.size() - stems)]);
      }
      q.answer = static_cast<int>(uniform_below(rng, 5));
      choices.insert(choices.begin() + q.answer, by_relation[r][2 * j + 1]);
      std::copy(choices.begin(), choices.end(), q.choices.begin());
      out.questions.push_back(q);
    }
  }
  seeded_shuffle(out.questions, rng);
  return out;
}

PlantedChoice make_planted_choice(int questions, int sentences_per_pair,
                                  double distractor_rate, std::uint64_t seed) {
  if (questions < 1) throw std::invalid_argument("need at least one question");
  RelationClass synonym{kPositive, {"X also called Y", "X or rather Y"}, {}};
  RelationClass contrast{kNegative, {"X unlike Y", "X versus Y"}, {}};
  std::set<std::string> avoid;
  for (const auto *c : {&synonym, &contrast}) {
    for (const auto &m : c->markers) {
      for (const auto &t : split(m, ' ')) {
        if (t != "X" && t != "Y") insert_variants(t, &avoid);
      }
    }
  }
  const auto words =
      pseudo_words(5 * questions, derive_seed(seed, "words"), avoid);
  std::mt19937_64 rng(derive_seed(seed, "questions"));
  PlantedChoice out;
  for (int q = 0; q < questions; ++q) {
    ChoiceQuestion question;
    question.stem = words[5 * q];
    question.answer = static_cast<int>(uniform_below(rng, 4));
    for (int c = 0; c < 4; ++c) {
      question.choices[c] = words[5 * q + 1 + c];
      WordPair pair{question.stem, question.choices[c]};
      (c == question.answer ? synonym : contrast).pairs.push_back(pair);
    }
    out.questions.push_back(question);
  }
  SyntheticSpec spec;
  spec.seed = derive_seed(seed, "corpus");
  spec.pairs_per_class = 0;
  spec.sentences_per_pair = sentences_per_pair;
  spec.distractor_rate = distractor_rate;
  spec.classes = {synonym, contrast};
  out.text = make_synthetic_corpus(spec).text;
  return out;
}

}  // namespace pairclass
