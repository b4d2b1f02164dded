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

#include "pairclass/corpus_index.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "pairclass/common.h"

namespace pairclass {

namespace fs = std::filesystem;

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      current.push_back(static_cast<char>(c | 0x20));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

WordId Vocabulary::intern(std::string_view word) {
  auto it = ids_.find(std::string(word));
  if (it != ids_.end()) return it->second;
  auto id = static_cast<WordId>(words_.size());
  words_.emplace_back(word);
  ids_.emplace(words_.back(), id);
  return id;
}

bool Vocabulary::find(std::string_view word, WordId *id) const {
  auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return false;
  *id = it->second;
  return true;
}

void TokenizedCorpus::add_document(std::span<const std::string> tokens) {
  if (tokens.empty()) return;
  std::vector<WordId> ids;
  ids.reserve(tokens.size());
  for (const auto &t : tokens) ids.push_back(vocabulary_.intern(t));
  token_count_ += ids.size();
  documents_.push_back(std::move(ids));
}

void TokenizedCorpus::add_text(std::string_view text) {
  // A blank line is one holding nothing but spaces, tabs or CR.
  std::size_t para_start = 0;
  std::size_t pos = 0;
  auto flush = [&](std::size_t end) {
    auto tokens = tokenize(text.substr(para_start, end - para_start));
    add_document(tokens);
  };
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
    if (blank) {
      flush(pos);
      para_start = std::min(eol + 1, text.size());
    }
    pos = eol + 1;
  }
  if (para_start < text.size()) flush(text.size());
}

void WindowSpec::validate() const {
  for (const Range *r : {&before, &between, &after}) {
    if (r->min < 0 || r->max < 0 || r->min > r->max) {
      throw std::invalid_argument(
          "window ranges must satisfy 0 <= min <= max");
    }
  }
}

namespace {

constexpr char kMetaMagic[8] = {'P', 'C', 'I', 'X', 'M', 'E', 'T', 'A'};
constexpr char kPostMagic[8] = {'P', 'C', 'I', 'X', 'P', 'O', 'S', 'T'};
constexpr char kDocsMagic[8] = {'P', 'C', 'I', 'X', 'D', 'O', 'C', 'S'};

void put_varint(std::vector<std::uint8_t> &out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_fixed(std::vector<std::uint8_t> &out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void put_header(std::vector<std::uint8_t> &out, const char (&magic)[8]) {
  out.insert(out.end(), magic, magic + 8);
  put_fixed(out, CorpusIndex::kFormatVersion, 4);
}

class Reader {
 public:
  Reader(const std::uint8_t *data, std::size_t size, std::string what)
      : data_(data), size_(size), what_(std::move(what)) {}

  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      need(1);
      std::uint8_t b = data_[pos_++];
      v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if (!(b & 0x80)) return v;
    }
    throw FormatError(what_ + ": malformed varint");
  }

  std::uint64_t fixed(int bytes) {
    need(bytes);
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
    }
    return v;
  }

  const std::uint8_t *take(std::size_t n) {
    need(n);
    const std::uint8_t *p = data_ + pos_;
    pos_ += n;
    return p;
  }

  void header(const char (&magic)[8]) {
    const std::uint8_t *m = take(8);
    if (std::memcmp(m, magic, 8) != 0) {
      throw FormatError(what_ + ": not a pairclass index file");
    }
    auto version = fixed(4);
    if (version != CorpusIndex::kFormatVersion) {
      throw FormatError(what_ + ": index format version " +
                        std::to_string(version) + ", expected " +
                        std::to_string(CorpusIndex::kFormatVersion));
    }
  }

  bool done() const { return pos_ == size_; }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > size_) throw FormatError(what_ + ": truncated");
  }

  const std::uint8_t *data_;
  std::size_t size_;
  std::size_t pos_ = 0;
  std::string what_;
};

void write_bytes(const fs::path &path, const std::vector<std::uint8_t> &bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("write failed: " + path.string());
}

std::vector<std::uint8_t> read_bytes(const fs::path &path) {
  std::string s = read_file(path);
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputError("read failed: " + path.string());
  return ss.str();
}

CorpusIndex::CorpusIndex(const TokenizedCorpus &corpus,
                         std::uint64_t corpus_checksum)
    : token_count_(corpus.token_count()), corpus_checksum_(corpus_checksum) {
  const Vocabulary &vocab = corpus.vocabulary();
  words_.reserve(vocab.size());
  for (WordId id = 0; id < vocab.size(); ++id) {
    words_.push_back(vocab.word(id));
    ids_.emplace(words_.back(), id);
  }

  // Documents are visited in order, so each word's postings are appended in
  // (doc, pos) order and can be delta-encoded as they arrive.
  postings_.assign(words_.size(), {});
  std::vector<std::uint32_t> last_doc(words_.size(), 0);
  std::vector<std::vector<std::uint32_t>> positions(words_.size());
  std::vector<WordId> touched;
  tokens_.reserve(corpus.token_count());
  for (std::uint32_t d = 0; d < corpus.document_count(); ++d) {
    auto doc = corpus.document(d);
    tokens_.insert(tokens_.end(), doc.begin(), doc.end());
    doc_offsets_.push_back(tokens_.size());
    touched.clear();
    for (std::uint32_t p = 0; p < doc.size(); ++p) {
      if (positions[doc[p]].empty()) touched.push_back(doc[p]);
      positions[doc[p]].push_back(p);
    }
    std::sort(touched.begin(), touched.end());
    for (WordId w : touched) {
      auto &out = postings_[w];
      put_varint(out, d - last_doc[w]);
      last_doc[w] = d;
      put_varint(out, positions[w].size());
      std::uint32_t prev = 0;
      for (std::uint32_t p : positions[w]) {
        put_varint(out, p - prev);
        prev = p;
      }
      positions[w].clear();
    }
  }
}

std::vector<CorpusIndex::Posting> CorpusIndex::postings(
    std::string_view word) const {
  std::vector<Posting> out;
  auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return out;
  const auto &bytes = postings_[it->second];
  Reader r(bytes.data(), bytes.size(), "postings");
  std::uint32_t doc = 0;
  while (!r.done()) {
    doc += static_cast<std::uint32_t>(r.varint());
    auto count = r.varint();
    std::uint32_t pos = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      pos += static_cast<std::uint32_t>(r.varint());
      out.push_back({doc, pos});
    }
  }
  return out;
}

std::span<const WordId> CorpusIndex::document(std::uint32_t doc) const {
  return std::span<const WordId>(tokens_).subspan(
      doc_offsets_[doc], doc_offsets_[doc + 1] - doc_offsets_[doc]);
}

std::vector<CorpusIndex::Posting> CorpusIndex::merged_postings(
    const WordSet &words) const {
  std::vector<Posting> all;
  for (const auto &w : words) {
    auto p = postings(w);
    all.insert(all.end(), p.begin(), p.end());
  }
  std::sort(all.begin(), all.end(), [](const Posting &a, const Posting &b) {
    return a.doc != b.doc ? a.doc < b.doc : a.pos < b.pos;
  });
  return all;
}

std::vector<PhraseMatch> CorpusIndex::find_phrases(
    const WordSet &x_variants, const WordSet &y_variants,
    const WindowSpec &spec) const {
  if (x_variants.empty() || y_variants.empty()) {
    throw std::invalid_argument("find_phrases: empty variant set");
  }
  for (const auto &w : x_variants) {
    if (y_variants.count(w)) {
      throw std::invalid_argument("find_phrases: X and Y share the word '" +
                                  w + "'");
    }
  }
  spec.validate();

  std::vector<PhraseMatch> matches;
  auto xs = merged_postings(x_variants);
  auto ys = merged_postings(y_variants);
  if (xs.empty() || ys.empty()) return matches;

  struct Hit {
    std::uint32_t doc, start, x, y;
    int before, after;
  };
  std::vector<Hit> hits;
  const auto lo_gap = static_cast<std::int64_t>(spec.between.min) + 1;
  const auto hi_gap = static_cast<std::int64_t>(spec.between.max) + 1;

  std::size_t yi = 0;
  std::size_t xi = 0;
  while (xi < xs.size() && yi < ys.size()) {
    // Intersect on documents, then pair positions within the shared one.
    std::uint32_t doc = xs[xi].doc;
    if (ys[yi].doc < doc) {
      ++yi;
      continue;
    }
    if (ys[yi].doc > doc) {
      ++xi;
      continue;
    }
    std::size_t x_end = xi;
    while (x_end < xs.size() && xs[x_end].doc == doc) ++x_end;
    std::size_t y_end = yi;
    while (y_end < ys.size() && ys[y_end].doc == doc) ++y_end;

    const auto len = static_cast<std::int64_t>(doc_offsets_[doc + 1] -
                                               doc_offsets_[doc]);
    for (std::size_t a = xi; a < x_end; ++a) {
      const std::int64_t p = xs[a].pos;
      auto first = std::lower_bound(
          ys.begin() + yi, ys.begin() + y_end, p - hi_gap,
          [](const Posting &q, std::int64_t v) { return q.pos < v; });
      for (auto it = first; it != ys.begin() + y_end; ++it) {
        const std::int64_t q = it->pos;
        if (q > p + hi_gap) break;
        const std::int64_t dist = q > p ? q - p : p - q;
        if (dist < lo_gap) continue;
        const std::int64_t lo = std::min(p, q);
        const std::int64_t hi = std::max(p, q);
        const auto before = std::min<std::int64_t>(spec.before.max, lo);
        const auto after = std::min<std::int64_t>(spec.after.max, len - 1 - hi);
        if (before < spec.before.min || after < spec.after.min) continue;
        hits.push_back({doc, static_cast<std::uint32_t>(lo - before),
                        static_cast<std::uint32_t>(p),
                        static_cast<std::uint32_t>(q), static_cast<int>(before),
                        static_cast<int>(after)});
      }
    }
    xi = x_end;
    yi = y_end;
  }

  std::sort(hits.begin(), hits.end(), [](const Hit &a, const Hit &b) {
    if (a.doc != b.doc) return a.doc < b.doc;
    if (a.start != b.start) return a.start < b.start;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });

  matches.reserve(hits.size());
  for (const Hit &h : hits) {
    auto tokens = document(h.doc);
    const std::uint32_t hi = std::max(h.x, h.y);
    PhraseMatch m;
    m.doc = h.doc;
    m.start = h.start;
    for (std::uint32_t i = h.start; i <= hi + h.after; ++i) {
      m.tokens.push_back(words_[tokens[i]]);
    }
    m.x_index = static_cast<int>(h.x - h.start);
    m.y_index = static_cast<int>(h.y - h.start);
    m.x_first = h.x < h.y;
    matches.push_back(std::move(m));
  }
  return matches;
}

void CorpusIndex::write(const fs::path &dir) const {
  std::vector<std::uint8_t> meta;
  put_header(meta, kMetaMagic);
  put_varint(meta, token_count_);
  put_varint(meta, document_count());
  put_fixed(meta, corpus_checksum_, 8);
  put_varint(meta, words_.size());
  for (const auto &w : words_) {
    put_varint(meta, w.size());
    meta.insert(meta.end(), w.begin(), w.end());
  }

  std::vector<std::uint8_t> post;
  put_header(post, kPostMagic);
  put_varint(post, postings_.size());
  for (const auto &p : postings_) {
    put_varint(post, p.size());
    post.insert(post.end(), p.begin(), p.end());
  }

  std::vector<std::uint8_t> docs;
  put_header(docs, kDocsMagic);
  put_varint(docs, document_count());
  for (std::uint32_t d = 0; d < document_count(); ++d) {
    auto doc = document(d);
    put_varint(docs, doc.size());
    for (WordId id : doc) put_varint(docs, id);
  }

  fs::path target = fs::absolute(dir);
  if (fs::exists(target)) {
    if (!fs::is_directory(target) ||
        (!fs::is_empty(target) && !is_valid(target))) {
      throw InputError("refusing to overwrite " + target.string() +
                       ": not an index directory");
    }
  }
  fs::path partial = target;
  partial += ".partial";
  std::error_code ec;
  fs::remove_all(partial, ec);
  if (!fs::create_directories(partial, ec) && ec) {
    throw InputError("cannot create " + partial.string() + ": " +
                     ec.message());
  }
  write_bytes(partial / "meta", meta);
  write_bytes(partial / "postings", post);
  write_bytes(partial / "documents", docs);
  fs::remove_all(target, ec);
  fs::rename(partial, target, ec);
  if (ec) {
    throw InputError("cannot move index into " + target.string() + ": " +
                     ec.message());
  }
}

CorpusIndex CorpusIndex::open(const fs::path &dir) {
  if (!fs::is_directory(dir)) {
    throw InputError("index directory not found: " + dir.string());
  }
  CorpusIndex index;
  {
    auto bytes = read_bytes(dir / "meta");
    Reader r(bytes.data(), bytes.size(), (dir / "meta").string());
    r.header(kMetaMagic);
    index.token_count_ = r.varint();
    auto docs = r.varint();
    index.corpus_checksum_ = r.fixed(8);
    auto nwords = r.varint();
    index.words_.reserve(nwords);
    for (std::uint64_t i = 0; i < nwords; ++i) {
      auto n = r.varint();
      const auto *p = r.take(n);
      index.words_.emplace_back(reinterpret_cast<const char *>(p), n);
      index.ids_.emplace(index.words_.back(), static_cast<WordId>(i));
    }
    index.doc_offsets_.reserve(docs + 1);
  }
  {
    auto bytes = read_bytes(dir / "postings");
    Reader r(bytes.data(), bytes.size(), (dir / "postings").string());
    r.header(kPostMagic);
    auto n = r.varint();
    if (n != index.words_.size()) {
      throw FormatError(dir.string() + ": postings/vocabulary size mismatch");
    }
    index.postings_.resize(n);
    for (auto &p : index.postings_) {
      auto len = r.varint();
      const auto *b = r.take(len);
      p.assign(b, b + len);
    }
  }
  {
    auto bytes = read_bytes(dir / "documents");
    Reader r(bytes.data(), bytes.size(), (dir / "documents").string());
    r.header(kDocsMagic);
    auto n = r.varint();
    index.tokens_.reserve(index.token_count_);
    for (std::uint64_t d = 0; d < n; ++d) {
      auto len = r.varint();
      for (std::uint64_t i = 0; i < len; ++i) {
        auto id = r.varint();
        if (id >= index.words_.size()) {
          throw FormatError(dir.string() + ": token id out of range");
        }
        index.tokens_.push_back(static_cast<WordId>(id));
      }
      index.doc_offsets_.push_back(index.tokens_.size());
    }
    if (index.tokens_.size() != index.token_count_) {
      throw FormatError(dir.string() + ": token count mismatch");
    }
  }
  return index;
}

bool CorpusIndex::is_valid(const fs::path &dir) {
  std::error_code ec;
  if (!fs::is_regular_file(dir / "meta", ec)) return false;
  try {
    auto bytes = read_bytes(dir / "meta");
    Reader r(bytes.data(), bytes.size(), "meta");
    r.header(kMetaMagic);
    return fs::is_regular_file(dir / "postings", ec) &&
           fs::is_regular_file(dir / "documents", ec);
  } catch (const std::exception &) {
    return false;
  }
}

std::uint64_t corpus_checksum(std::span<const fs::path> corpus_paths) {
  Fnv1a h;
  for (const auto &path : corpus_paths) h.update(read_file(path));
  return h.digest();
}

CorpusIndex build_index(std::span<const fs::path> corpus_paths,
                        const fs::path &output) {
  TokenizedCorpus corpus;
  Fnv1a h;
  for (const auto &path : corpus_paths) {
    std::string text = read_file(path);
    h.update(text);
    corpus.add_text(text);
  }
  CorpusIndex index(corpus, h.digest());
  index.write(output);
  spdlog::info("indexed {} tokens in {} documents from {} file(s) into {}",
               index.token_count(), index.document_count(),
               corpus_paths.size(), output.string());
  return index;
}

}  // namespace pairclass
