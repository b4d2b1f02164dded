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

#include "pairclass/config.h"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

namespace pairclass {

namespace {

using Array = std::vector<std::variant<std::string, double, long long>>;
using Value = std::variant<std::string, double, long long, bool, Array>;

// Minimal reader for the flat TOML subset the config uses: bare keys,
// basic strings, integers, floats, booleans and one-line arrays of those.
class TomlReader {
 public:
  explicit TomlReader(std::string_view text) : text_(text) {}

  std::map<std::string, Value> read() {
    std::map<std::string, Value> out;
    while (pos_ < text_.size()) {
      skip_space();
      if (pos_ >= text_.size()) break;
      if (peek() == '\n') {
        next_line();
        continue;
      }
      if (peek() == '[') fail("tables are not supported; use flat keys");
      const auto key = read_key();
      skip_space();
      if (peek() != '=') fail("expected '=' after key '" + key + "'");
      ++pos_;
      skip_space();
      auto value = read_value();
      skip_space();
      if (pos_ < text_.size() && peek() != '\n') {
        fail("unexpected text after value of '" + key + "'");
      }
      if (!out.emplace(key, std::move(value)).second) {
        fail("key '" + key + "' appears twice");
      }
    }
    return out;
  }

 private:
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string &what) const {
    throw InputError("config line " + std::to_string(line_) + ": " + what);
  }

  void next_line() {
    ++pos_;
    ++line_;
  }

  // Spaces, tabs, carriage returns and comments, but not newlines.
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string read_key() {
    std::string key;
    while (pos_ < text_.size()) {
      const char c = peek();
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
          (c >= '0' && c <= '9') || c == '_' || c == '-') {
        key.push_back(c);
        ++pos_;
      } else {
        break;
      }
    }
    if (key.empty()) fail("expected a key");
    return key;
  }

  Value read_value() {
    if (pos_ >= text_.size()) fail("missing value");
    const char c = peek();
    if (c == '"') return read_string();
    if (c == '[') return read_array();
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    return read_number();
  }

  std::string read_string() {
    ++pos_;
    std::string s;
    while (true) {
      if (pos_ >= text_.size() || peek() == '\n') fail("unterminated string");
      char c = peek();
      ++pos_;
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated string");
        const char e = peek();
        ++pos_;
        switch (e) {
          case '"': s.push_back('"'); break;
          case '\\': s.push_back('\\'); break;
          case 'n': s.push_back('\n'); break;
          case 't': s.push_back('\t'); break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        s.push_back(c);
      }
    }
    return s;
  }

  std::variant<std::string, double, long long> read_scalar() {
    if (pos_ < text_.size() && peek() == '"') return read_string();
    auto v = read_number();
    if (auto *d = std::get_if<double>(&v)) return *d;
    return std::get<long long>(v);
  }

  Array read_array() {
    ++pos_;
    Array items;
    skip_space();
    if (pos_ < text_.size() && peek() == ']') {
      ++pos_;
      return items;
    }
    while (true) {
      skip_space();
      items.push_back(read_scalar());
      skip_space();
      if (pos_ >= text_.size()) fail("unterminated array");
      if (peek() == ',') {
        ++pos_;
        skip_space();
        if (pos_ < text_.size() && peek() == ']') {
          ++pos_;
          return items;
        }
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        return items;
      }
      fail("expected ',' or ']' in array");
    }
  }

  Value read_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = peek();
      if ((c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' ||
          c == 'e' || c == 'E' || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    std::string token;
    for (char c : text_.substr(start, pos_ - start)) {
      if (c != '_') token.push_back(c);
    }
    if (token.empty()) fail("expected a value");
    if (token[0] == '+') token.erase(0, 1);
    const bool is_float = token.find_first_of(".eE") != std::string::npos;
    if (!is_float) {
      long long v = 0;
      auto [end, ec] =
          std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || end != token.data() + token.size()) {
        fail("bad integer '" + token + "'");
      }
      return v;
    }
    try {
      return parse_double(token);
    } catch (const InputError &) {
      fail("bad number '" + token + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out + "\"";
}

// Floats always carry a '.' or exponent so they read back as floats.
std::string toml_float(double v) {
  auto s = format_double(v);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

class Binder {
 public:
  explicit Binder(std::map<std::string, Value> values)
      : values_(std::move(values)) {}

  void string(const char *key, std::string *out) {
    if (auto *v = take(key)) {
      if (auto *s = std::get_if<std::string>(v)) {
        *out = *s;
      } else {
        wrong(key, "a string");
      }
    }
  }

  void strings(const char *key, std::vector<std::string> *out) {
    if (auto *v = take(key)) {
      auto *a = std::get_if<Array>(v);
      if (!a) wrong(key, "an array of strings");
      out->clear();
      for (const auto &item : *a) {
        auto *s = std::get_if<std::string>(&item);
        if (!s) wrong(key, "an array of strings");
        out->push_back(*s);
      }
    }
  }

  template <typename T>
  void integer(const char *key, T *out) {
    if (auto *v = take(key)) {
      auto *i = std::get_if<long long>(v);
      if (!i) wrong(key, "an integer");
      if (*i < 0 && std::is_unsigned_v<T>) wrong(key, "a non-negative integer");
      *out = static_cast<T>(*i);
    }
  }

  void real(const char *key, double *out) {
    if (auto *v = take(key)) {
      if (auto *d = std::get_if<double>(v)) {
        *out = *d;
      } else if (auto *i = std::get_if<long long>(v)) {
        *out = static_cast<double>(*i);
      } else {
        wrong(key, "a number");
      }
    }
  }

  void range(const char *key, WindowSpec::Range *out) {
    if (auto *v = take(key)) {
      auto *a = std::get_if<Array>(v);
      if (!a || a->size() != 2) wrong(key, "[min, max]");
      auto *lo = std::get_if<long long>(&(*a)[0]);
      auto *hi = std::get_if<long long>(&(*a)[1]);
      if (!lo || !hi) wrong(key, "[min, max] integers");
      *out = {static_cast<int>(*lo), static_cast<int>(*hi)};
    }
  }

  void finish() const {
    if (!values_.empty()) {
      throw InputError("config: unknown key '" + values_.begin()->first + "'");
    }
  }

 private:
  Value *take(const char *key) {
    auto it = values_.find(key);
    if (it == values_.end()) return nullptr;
    taken_ = std::move(it->second);
    values_.erase(it);
    return &taken_;
  }

  [[noreturn]] void wrong(const char *key, const char *what) const {
    throw InputError(std::string("config: '") + key + "' must be " + what);
  }

  std::map<std::string, Value> values_;
  Value taken_;
};

}  // namespace

void RunConfig::validate() const {
  auto bad = [](const std::string &what) { throw InputError("config: " + what); };
  if (task != "sat" && task != "toefl" && task != "labeled") {
    bad("task must be sat, toefl or labeled (got '" + task + "')");
  }
  if (dataset.empty()) bad("dataset is required");
  if (out.empty()) bad("out is required");
  if (corpus.empty() && index.empty()) bad("corpus or index is required");
  if (seed > static_cast<std::uint64_t>(INT64_MAX)) bad("seed must be below 2^63");
  if (k <= 0) bad("k must be positive (got " + std::to_string(k) + ")");
  if (folds < 2) bad("folds must be at least 2");
  if (bagging_rounds < 1) bad("bagging_rounds must be at least 1");
  if (max_phrases_per_pair == 0) bad("max_phrases_per_pair must be positive");
  try {
    hp.validate();
    window.validate();
  } catch (const std::invalid_argument &e) {
    bad(e.what());
  }
}

std::filesystem::path RunConfig::resolve(const std::string &path) const {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

std::string RunConfig::to_toml() const {
  std::ostringstream text;
  text << "task = " << quote(task) << "\n";
  text << "corpus = [";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    text << (i ? ", " : "") << quote(corpus[i]);
  }
  text << "]\n";
  text << "index = " << quote(index) << "\n";
  text << "dataset = " << quote(dataset) << "\n";
  text << "out = " << quote(out) << "\n";
  text << "exceptions = " << quote(exceptions) << "\n";
  text << "seed = " << seed << "\n";
  text << "k = " << k << "\n";
  text << "folds = " << folds << "\n";
  text << "bagging_rounds = " << bagging_rounds << "\n";
  text << "max_phrases_per_pair = " << max_phrases_per_pair << "\n";
  text << "c = " << toml_float(hp.c) << "\n";
  text << "gamma = " << toml_float(hp.gamma) << "\n";
  text << "tol = " << toml_float(hp.tol) << "\n";
  text << "max_passes = " << hp.max_passes << "\n";
  auto range = [&](const char *key, const WindowSpec::Range &r) {
    text << key << " = [" << r.min << ", " << r.max << "]\n";
  };
  range("window_before", window.before);
  range("window_between", window.between);
  range("window_after", window.after);
  return text.str();
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig c;
  Binder b(TomlReader(text).read());
  b.string("task", &c.task);
  b.strings("corpus", &c.corpus);
  b.string("index", &c.index);
  b.string("dataset", &c.dataset);
  b.string("out", &c.out);
  b.string("exceptions", &c.exceptions);
  b.integer("seed", &c.seed);
  b.integer("k", &c.k);
  b.integer("folds", &c.folds);
  b.integer("bagging_rounds", &c.bagging_rounds);
  b.integer("max_phrases_per_pair", &c.max_phrases_per_pair);
  b.real("c", &c.hp.c);
  b.real("gamma", &c.hp.gamma);
  b.real("tol", &c.hp.tol);
  b.integer("max_passes", &c.hp.max_passes);
  b.range("window_before", &c.window.before);
  b.range("window_between", &c.window.between);
  b.range("window_after", &c.window.after);
  b.finish();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path &path) {
  auto c = parse(read_file(path));
  c.base_dir = path.parent_path();
  return c;
}

std::uint64_t RunConfig::hash() const {
  RunConfig copy = *this;
  copy.out.clear();
  copy.index.clear();
  return fnv1a(copy.to_toml());
}

}  // namespace pairclass
