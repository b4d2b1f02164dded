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

#ifndef PAIRCLASS_CORPUS_INDEX_H_
#define PAIRCLASS_CORPUS_INDEX_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pairclass {

using WordId = std::uint32_t;
using WordSet = std::unordered_set<std::string>;

// Words are maximal runs of ASCII letters, lowercased. Everything else,
// including every non-ASCII code point and malformed UTF-8, separates words.
std::vector<std::string> tokenize(std::string_view text);

// Bidirectional word <-> id map. Ids are assigned in order of first
// appearance.
class Vocabulary {
 public:
  WordId intern(std::string_view word);
  // Returns false if the word is unknown.
  bool find(std::string_view word, WordId *id) const;
  const std::string &word(WordId id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> ids_;
};

// Documents are paragraphs: runs of lines separated by one or more blank
// lines. Windows never cross a document boundary.
class TokenizedCorpus {
 public:
  void add_text(std::string_view text);
  void add_document(std::span<const std::string> tokens);

  const Vocabulary &vocabulary() const { return vocabulary_; }
  std::size_t document_count() const { return documents_.size(); }
  std::span<const WordId> document(std::size_t doc) const {
    return documents_[doc];
  }
  std::uint64_t token_count() const { return token_count_; }

 private:
  Vocabulary vocabulary_;
  std::vector<std::vector<WordId>> documents_;
  std::uint64_t token_count_ = 0;
};

// Admissible sizes of the context around a co-occurrence:
// [before] X [between] Y [after], with X and Y in either order.
struct WindowSpec {
  struct Range {
    int min = 0;
    int max = 0;
  };
  Range before{0, 1};
  Range between{0, 3};
  Range after{0, 1};

  // Throws std::invalid_argument on negative bounds or min > max.
  void validate() const;
  // Longest phrase this spec admits.
  int max_length() const { return 2 + before.max + between.max + after.max; }
};

// One corpus window containing both pair members.
struct PhraseMatch {
  std::vector<std::string> tokens;
  int x_index = 0;
  int y_index = 0;
  bool x_first = true;
  // Location in the corpus; not part of the phrase identity.
  std::uint32_t doc = 0;
  std::uint32_t start = 0;
};

// Immutable positional index: document-partitioned postings with delta
// encoding, plus the forward token stream of each document so windows can be
// materialized without the raw text.
//
// On disk an index is a directory holding three files:
//   meta       format version, token and document counts, corpus checksum,
//              vocabulary
//   postings   per-word list of (doc delta, count, position deltas)
//   documents  per-document token id stream
// All integers after the fixed header are LEB128 varints.
class CorpusIndex {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  CorpusIndex() = default;
  explicit CorpusIndex(const TokenizedCorpus &corpus,
                       std::uint64_t corpus_checksum = 0);

  // Throws FormatError on a version or magic mismatch and InputError when
  // the directory is unreadable.
  static CorpusIndex open(const std::filesystem::path &dir);
  // Returns true if dir holds an index this build can open.
  static bool is_valid(const std::filesystem::path &dir);

  // Writes to a sibling temporary directory and renames it into place, so an
  // interrupted write never leaves a partial index at dir.
  void write(const std::filesystem::path &dir) const;

  std::uint64_t token_count() const { return token_count_; }
  std::size_t document_count() const { return doc_offsets_.size() - 1; }
  std::uint64_t corpus_checksum() const { return corpus_checksum_; }
  const std::vector<std::string> &vocabulary() const { return words_; }

  struct Posting {
    std::uint32_t doc;
    std::uint32_t pos;
  };
  // Decoded postings for a word; empty if the word is absent.
  std::vector<Posting> postings(std::string_view word) const;
  std::span<const WordId> document(std::uint32_t doc) const;

  // Every window where a member of x_variants and a member of y_variants
  // co-occur under spec, in either order. Flanks are as wide as the spec
  // and the document allow; each (x position, y position) yields at most
  // one match. Results are sorted by (doc, start, x position, y position).
  //
  // Throws std::invalid_argument if either set is empty or the sets share a
  // word (which covers X = Y).
  std::vector<PhraseMatch> find_phrases(const WordSet &x_variants,
                                        const WordSet &y_variants,
                                        const WindowSpec &spec = {}) const;

 private:
  std::vector<Posting> merged_postings(const WordSet &words) const;

  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> ids_;
  std::vector<std::vector<std::uint8_t>> postings_;
  std::vector<WordId> tokens_;
  std::vector<std::uint64_t> doc_offsets_{0};
  std::uint64_t token_count_ = 0;
  std::uint64_t corpus_checksum_ = 0;
};

// Tokenizes the given files (in order), builds the index and writes it to
// output. An empty corpus yields a valid empty index.
CorpusIndex build_index(std::span<const std::filesystem::path> corpus_paths,
                        const std::filesystem::path &output);

// Checksum over the raw bytes of the corpus files, in order.
std::uint64_t corpus_checksum(
    std::span<const std::filesystem::path> corpus_paths);

std::string read_file(const std::filesystem::path &path);

}  // namespace pairclass

#endif  // PAIRCLASS_CORPUS_INDEX_H_
