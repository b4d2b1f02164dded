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

#ifndef PAIRCLASS_MORPHOLOGY_H_
#define PAIRCLASS_MORPHOLOGY_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "pairclass/corpus_index.h"

namespace pairclass {

struct VariantSet {
  std::string base;
  std::set<std::string> variants;  // always contains base
};

// Rule-based regular English inflection and its inverse.
//
// Inflection generates the plural / third person (-s, -es, -ies) and, unless
// the word ends in a nominal suffix (-ness, -ship, -son, ...), the past and
// progressive forms with e-drop, y->i and monosyllabic consonant doubling.
// Lemmatization strips those suffixes again, restoring a dropped e and
// undoing doubling, and is iterated to a fixpoint so it is idempotent.
//
// Irregular forms are handled only through an optional exception lexicon.
class Morphology {
 public:
  Morphology() = default;

  // Reads "lemma<TAB>form" lines; blank lines and '#' comments are skipped.
  // Throws InputError on unreadable files or malformed lines.
  static Morphology with_exceptions(const std::filesystem::path &path);
  void add_exception(std::string_view lemma, std::string_view form);

  // Variants of the word's lemma plus the word itself. Throws
  // std::invalid_argument for an empty word.
  VariantSet inflect(std::string_view word) const;
  std::string lemmatize(std::string_view word) const;
  PhraseMatch normalize_phrase(const PhraseMatch &match) const;

  // Regular forms of a base word (including the base), no exceptions.
  static std::set<std::string> regular_forms(std::string_view base);

 private:
  std::map<std::string, std::string> lemma_of_;
  std::map<std::string, std::set<std::string>> forms_of_;
};

// Shorthands using rules only.
VariantSet inflect(std::string_view word);
std::string lemmatize(std::string_view word);
PhraseMatch normalize_phrase(const PhraseMatch &match);

}  // namespace pairclass

#endif  // PAIRCLASS_MORPHOLOGY_H_
