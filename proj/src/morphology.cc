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

#include "pairclass/morphology.h"

#include <array>
#include <fstream>
#include <stdexcept>

#include "pairclass/common.h"

namespace pairclass {

namespace {

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool plain_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// 'y' counts as a vowel after a consonant (carry, fly) and as a consonant
// otherwise (yard, play).
bool is_vowel(std::string_view w, std::size_t i) {
  if (plain_vowel(w[i])) return true;
  return w[i] == 'y' && i > 0 && !is_vowel(w, i - 1);
}

bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel(w, i)) return true;
  }
  return false;
}

// Number of vowel-consonant sequences: [C](VC)^m[V].
int measure(std::string_view w) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bool v = is_vowel(w, i);
    if (prev_vowel && !v) ++m;
    prev_vowel = v;
  }
  return m;
}

// Consonant-vowel-consonant ending whose last letter is not w, x or y.
bool ends_cvc(std::string_view w) {
  auto n = w.size();
  if (n < 3) return false;
  char last = w[n - 1];
  if (last == 'w' || last == 'x' || last == 'y') return false;
  return !is_vowel(w, n - 3) && is_vowel(w, n - 2) && !is_vowel(w, n - 1);
}

bool consonant_at(std::string_view w, std::size_t i) {
  return !is_vowel(w, i);
}

// Monosyllables like stop or grab double their final consonant before -ed
// and -ing.
bool doubles_final(std::string_view base) {
  return ends_cvc(base) && measure(base) == 1;
}

constexpr std::array<std::string_view, 10> kNominalSuffixes = {
    "ness", "ship", "hood", "ity", "ism", "ist", "ian", "son", "ics", "ology"};

bool nominal(std::string_view base) {
  for (auto s : kNominalSuffixes) {
    if (base.size() > s.size() && ends_with(base, s)) return true;
  }
  return false;
}

// Undoes e-drop or consonant doubling on a stem left after removing -ed or
// -ing.
std::string restore_stem(std::string stem) {
  const auto n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && consonant_at(stem, n - 1)) {
    char c = stem[n - 1];
    std::string_view shorter(stem.data(), n - 1);
    if (c != 'l' && c != 's' && c != 'z' && c != 'f' && ends_cvc(shorter) &&
        measure(shorter) == 1) {
      stem.pop_back();
      return stem;
    }
  }
  if (ends_cvc(stem) && measure(stem) == 1) return stem + "e";
  // toed, shoed, hoed; longer -o stems (echoed) keep their plain form.
  if (stem[n - 1] == 'o' && measure(stem) == 0) return stem + "e";
  if (ends_with(stem, "uid") || ends_with(stem, "uar")) return stem + "e";

  const char last = stem[n - 1];
  const char prev = n >= 2 ? stem[n - 2] : '\0';
  if ((last == 'u' && n >= 2 && consonant_at(stem, n - 2)) || last == 'v' ||
      last == 'c' || (last == 'z' && n >= 2 && is_vowel(stem, n - 2)) ||
      (last == 'l' && std::string_view("bcdfgkptzs").find(prev) !=
                          std::string_view::npos && n >= 2) ||
      ends_with(stem, "rg") || ends_with(stem, "dg")) {
    return stem + "e";
  }

  if (n >= 4 && measure(stem) >= 2) {
    const bool c3 = consonant_at(stem, n - 3);
    if (c3 && (ends_with(stem, "at") || ends_with(stem, "ut") ||
               ends_with(stem, "in") || ends_with(stem, "ar") ||
               ends_with(stem, "ib"))) {
      return stem + "e";
    }
    if (c3 && last == 'd' && std::string_view("iuao").find(prev) !=
                                 std::string_view::npos) {
      return stem + "e";
    }
    if (last == 'r' && (prev == 'i' || prev == 'u') &&
        std::string_view("aeo").find(stem[n - 3]) == std::string_view::npos) {
      return stem + "e";
    }
  }

  if (last == 's' && prev != 's') return stem + "e";
  return stem;
}

// One suffix-stripping step; returns the input unchanged when no rule fires.
std::string strip_once(const std::string &w) {
  const auto n = w.size();
  if (n <= 3) return w;

  if (ends_with(w, "ies") || ends_with(w, "ied")) {
    if (n > 4) return w.substr(0, n - 3) + "y";
    return w.substr(0, n - 1);
  }

  if (w[n - 1] == 's') {
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) {
      return w;
    }
    if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "zzes") ||
        ends_with(w, "ches") || ends_with(w, "shes")) {
      return w.substr(0, n - 2);
    }
    return w.substr(0, n - 1);
  }

  if (ends_with(w, "eed")) return w;
  if (ends_with(w, "ed")) {
    std::string stem = w.substr(0, n - 2);
    if (!has_vowel(stem)) return w;
    return restore_stem(std::move(stem));
  }

  if (ends_with(w, "ing")) {
    std::string stem = w.substr(0, n - 3);
    if (stem.size() == 2 && stem[1] == 'y') return stem.substr(0, 1) + "ie";
    if (!has_vowel(stem)) return w;
    if (stem.back() == 'e') return stem;
    return restore_stem(std::move(stem));
  }
  return w;
}

void check_word(std::string_view word) {
  if (word.empty()) throw std::invalid_argument("empty word");
  for (char c : word) {
    if (c < 'a' || c > 'z') {
      throw std::invalid_argument("not a lowercase alphabetic word: '" +
                                  std::string(word) + "'");
    }
  }
}

}  // namespace

std::set<std::string> Morphology::regular_forms(std::string_view base_view) {
  std::string base(base_view);
  std::set<std::string> forms{base};
  const auto n = base.size();
  const bool cons_y = n >= 2 && base[n - 1] == 'y' && !is_vowel(base, n - 2);

  if (ends_with(base, "s") || ends_with(base, "x") || ends_with(base, "z") ||
      ends_with(base, "ch") || ends_with(base, "sh")) {
    forms.insert(base + "es");
  } else if (cons_y) {
    forms.insert(base.substr(0, n - 1) + "ies");
  } else {
    forms.insert(base + "s");
  }
  if (nominal(base)) return forms;

  const bool doubled = doubles_final(base);
  if (base.back() == 'e') {
    forms.insert(base + "d");
  } else if (cons_y) {
    forms.insert(base.substr(0, n - 1) + "ied");
  } else if (doubled) {
    forms.insert(base + base.back() + "ed");
  } else {
    forms.insert(base + "ed");
  }

  if (ends_with(base, "ie")) {
    forms.insert(base.substr(0, n - 2) + "ying");
  } else if (ends_with(base, "ee") || ends_with(base, "oe") ||
             ends_with(base, "ye")) {
    forms.insert(base + "ing");
  } else if (base.back() == 'e' && n > 1) {
    forms.insert(base.substr(0, n - 1) + "ing");
  } else if (doubled) {
    forms.insert(base + base.back() + "ing");
  } else {
    forms.insert(base + "ing");
  }
  return forms;
}

Morphology Morphology::with_exceptions(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read exception lexicon " + path.string());
  Morphology m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": expected lemma<TAB>form");
    }
    m.add_exception(fields[0], fields[1]);
  }
  return m;
}

void Morphology::add_exception(std::string_view lemma, std::string_view form) {
  check_word(lemma);
  check_word(form);
  lemma_of_[std::string(form)] = std::string(lemma);
  forms_of_[std::string(lemma)].insert(std::string(form));
}

std::string Morphology::lemmatize(std::string_view word) const {
  std::string w(word);
  // Every firing rule shortens the word, so this terminates well before the
  // cap; the cap only guards against cyclic exception entries.
  for (int i = 0; i < 64; ++i) {
    auto it = lemma_of_.find(w);
    std::string next = it != lemma_of_.end() ? it->second : strip_once(w);
    if (next == w) break;
    w = std::move(next);
  }
  return w;
}

VariantSet Morphology::inflect(std::string_view word) const {
  check_word(word);
  VariantSet out;
  out.base = lemmatize(word);
  out.variants = regular_forms(out.base);
  if (auto it = forms_of_.find(out.base); it != forms_of_.end()) {
    out.variants.insert(it->second.begin(), it->second.end());
  }
  out.variants.insert(std::string(word));
  return out;
}

PhraseMatch Morphology::normalize_phrase(const PhraseMatch &match) const {
  PhraseMatch out = match;
  for (auto &t : out.tokens) t = lemmatize(t);
  return out;
}

namespace {
const Morphology &rules_only() {
  static const Morphology m;
  return m;
}
}  // namespace

VariantSet inflect(std::string_view word) {
  return rules_only().inflect(word);
}

std::string lemmatize(std::string_view word) {
  return rules_only().lemmatize(word);
}

PhraseMatch normalize_phrase(const PhraseMatch &match) {
  return rules_only().normalize_phrase(match);
}

}  // namespace pairclass
