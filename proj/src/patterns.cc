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

#include "pairclass/patterns.h"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace pairclass {

Pattern::Pattern(std::vector<Slot> slots) : slots_(std::move(slots)) {
  int xs = 0, ys = 0;
  for (const auto &s : slots_) {
    if (s.kind == Kind::kVarX) ++xs;
    if (s.kind == Kind::kVarY) ++ys;
    if (s.kind == Kind::kLiteral && s.word.empty()) {
      throw std::invalid_argument("pattern literal is empty");
    }
  }
  if (xs != 1 || ys != 1) {
    throw std::invalid_argument("pattern needs exactly one X and one Y");
  }
}

Pattern Pattern::parse(std::string_view text) {
  std::vector<Slot> slots;
  for (const auto &field : split(text, ' ')) {
    if (field == "X") {
      slots.push_back({Kind::kVarX, {}});
    } else if (field == "Y") {
      slots.push_back({Kind::kVarY, {}});
    } else if (field == "*") {
      slots.push_back({Kind::kWildcard, {}});
    } else {
      if (field.empty()) {
        throw std::invalid_argument("malformed pattern '" + std::string(text) +
                                    "'");
      }
      for (char c : field) {
        if (c < 'a' || c > 'z') {
          throw std::invalid_argument("malformed pattern literal '" + field +
                                      "'");
        }
      }
      slots.push_back({Kind::kLiteral, field});
    }
  }
  return Pattern(std::move(slots));
}

std::string Pattern::text() const {
  std::string out;
  for (const auto &s : slots_) {
    if (!out.empty()) out.push_back(' ');
    switch (s.kind) {
      case Kind::kVarX: out.push_back('X'); break;
      case Kind::kVarY: out.push_back('Y'); break;
      case Kind::kWildcard: out.push_back('*'); break;
      case Kind::kLiteral: out += s.word; break;
    }
  }
  return out;
}

namespace {

void check_phrase(const PhraseMatch &m) {
  const int n = static_cast<int>(m.tokens.size());
  if (m.x_index < 0 || m.y_index < 0 || m.x_index >= n || m.y_index >= n ||
      m.x_index == m.y_index) {
    throw std::invalid_argument("phrase has invalid pair positions");
  }
  if (n - 2 > 24) throw std::invalid_argument("phrase too long");
}

}  // namespace

std::vector<std::string> pattern_texts(const PhraseMatch &match) {
  check_phrase(match);
  std::vector<int> context;
  const int n = static_cast<int>(match.tokens.size());
  for (int i = 0; i < n; ++i) {
    if (i != match.x_index && i != match.y_index) context.push_back(i);
  }
  const std::uint32_t combos = 1u << context.size();
  std::vector<std::string> out;
  out.reserve(combos);
  for (std::uint32_t mask = 0; mask < combos; ++mask) {
    std::string text;
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (i) text.push_back(' ');
      if (i == match.x_index) {
        text.push_back('X');
      } else if (i == match.y_index) {
        text.push_back('Y');
      } else {
        if (mask & (1u << c)) {
          text.push_back('*');
        } else {
          text += match.tokens[i];
        }
        ++c;
      }
    }
    out.push_back(std::move(text));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Pattern> patterns_from_phrase(const PhraseMatch &match) {
  std::vector<Pattern> out;
  for (const auto &t : pattern_texts(match)) out.push_back(Pattern::parse(t));
  return out;
}

bool pattern_matches(const Pattern &pattern, const PhraseMatch &match) {
  if (pattern.size() != match.tokens.size()) return false;
  const auto &slots = pattern.slots();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const int pos = static_cast<int>(i);
    switch (slots[i].kind) {
      case Pattern::Kind::kVarX:
        if (pos != match.x_index) return false;
        break;
      case Pattern::Kind::kVarY:
        if (pos != match.y_index) return false;
        break;
      case Pattern::Kind::kWildcard:
        if (pos == match.x_index || pos == match.y_index) return false;
        break;
      case Pattern::Kind::kLiteral:
        if (pos == match.x_index || pos == match.y_index ||
            slots[i].word != match.tokens[i]) {
          return false;
        }
        break;
    }
  }
  return true;
}

std::uint64_t FeatureSpace::checksum() const {
  Fnv1a h;
  for (const auto &p : patterns) {
    h.update(p);
    h.update("\n");
  }
  return h.digest();
}

void FeatureSpace::write(std::ostream &out) const {
  out << "# pairclass-features v1 k=" << k << " pairs=" << n_pairs
      << " size=" << patterns.size() << "\n";
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    out << counts[i] << '\t' << patterns[i] << '\n';
  }
}

FeatureSpace FeatureSpace::read(std::istream &in) {
  FeatureSpace space;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("feature space: empty file");
  std::size_t size = 0;
  {
    auto fields = split(line, ' ');
    if (fields.size() != 6 || fields[0] != "#" ||
        fields[1] != "pairclass-features" || fields[2] != "v1") {
      throw FormatError("feature space: bad header '" + line + "'");
    }
    auto value = [&](const std::string &f, std::string_view key) {
      if (f.rfind(key, 0) != 0) {
        throw FormatError("feature space: bad header field '" + f + "'");
      }
      return std::stoull(f.substr(key.size()));
    };
    space.k = static_cast<int>(value(fields[3], "k="));
    space.n_pairs = value(fields[4], "pairs=");
    size = value(fields[5], "size=");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError("feature space: bad line '" + line + "'");
    }
    space.counts.push_back(
        static_cast<std::uint32_t>(std::stoul(line.substr(0, tab))));
    space.patterns.push_back(line.substr(tab + 1));
  }
  if (space.patterns.size() != size) {
    throw FormatError("feature space: expected " + std::to_string(size) +
                      " patterns, found " +
                      std::to_string(space.patterns.size()));
  }
  return space;
}

FeatureSpace select_features(const PhraseTable &table, int k) {
  if (k <= 0) throw std::invalid_argument("k must be positive");
  FeatureSpace space;
  space.k = k;
  space.n_pairs = table.size();

  std::unordered_map<std::string, std::uint32_t> counts;
  std::unordered_set<std::string> seen;
  for (const auto &[pair, phrases] : table) {
    seen.clear();
    for (const auto &phrase : phrases) {
      for (auto &text : pattern_texts(phrase)) seen.insert(std::move(text));
    }
    for (const auto &text : seen) ++counts[text];
  }

  std::vector<std::pair<std::uint32_t, std::string>> ranked;
  ranked.reserve(counts.size());
  for (auto &[text, count] : counts) ranked.emplace_back(count, text);
  std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  const std::size_t limit = static_cast<std::size_t>(k) * table.size();
  if (ranked.size() > limit) ranked.resize(limit);
  for (auto &[count, text] : ranked) {
    space.counts.push_back(count);
    space.patterns.push_back(std::move(text));
  }
  return space;
}

std::vector<PhraseMatch> downsample_phrases(std::vector<PhraseMatch> phrases,
                                            std::size_t limit,
                                            std::uint64_t seed) {
  if (phrases.size() <= limit) return phrases;
  std::vector<std::size_t> order(phrases.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first `limit` slots become a uniform sample.
  for (std::size_t i = 0; i < limit; ++i) {
    std::swap(order[i], order[i + uniform_below(rng, order.size() - i)]);
  }
  order.resize(limit);
  std::sort(order.begin(), order.end());
  std::vector<PhraseMatch> kept;
  kept.reserve(limit);
  for (auto i : order) kept.push_back(std::move(phrases[i]));
  return kept;
}

}  // namespace pairclass
