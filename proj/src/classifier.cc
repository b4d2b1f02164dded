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

#include "pairclass/classifier.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace pairclass {

void Hyperparams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("c must be positive");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be positive");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::invalid_argument("tol must be positive");
  }
  if (max_passes < 0) throw std::invalid_argument("max_passes is negative");
}

double rbf_kernel(const SparseVector &u, const SparseVector &v, double gamma) {
  if (u.dimension() != v.dimension()) {
    throw std::invalid_argument("rbf_kernel: dimension mismatch");
  }
  return std::exp(-gamma * squared_distance(u, v));
}

namespace {

// Changes in alpha smaller than this (relative) count as no progress.
constexpr double kAlphaEps = 1e-10;
// Alphas within this fraction of c from a bound are put on the bound.
constexpr double kBoundEps = 1e-10;
// Largest training set whose full kernel matrix is precomputed.
constexpr std::size_t kGramLimit = 2048;

class Smo {
 public:
  Smo(std::span<const SparseVector> x, std::span<const int> y,
      const Hyperparams &hp)
      : x_(x), y_(y), hp_(hp), n_(x.size()), alpha_(n_, 0.0), err_(n_),
        rng_(hp.seed) {
    for (std::size_t i = 0; i < n_; ++i) err_[i] = -y_[i];
    if (n_ <= kGramLimit) {
      gram_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) {
        gram_[i * n_ + i] = rbf_kernel(x_[i], x_[i], hp_.gamma);
        for (std::size_t j = 0; j < i; ++j) {
          gram_[i * n_ + j] = gram_[j * n_ + i] =
              rbf_kernel(x_[i], x_[j], hp_.gamma);
        }
      }
    }
  }

  void run() {
    const long limit = hp_.max_passes > 0
                           ? hp_.max_passes
                           : std::max(10000L, 100 * static_cast<long>(n_));
    bool examine_all = true;
    bool refit_stalled = false;
    while (stats_.passes < limit) {
      long changed = 0;
      const std::size_t start = rng_() % n_;
      for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t i = (start + j) % n_;
        if (examine_all || bound_free(i)) changed += examine(i);
      }
      ++stats_.passes;
      stats_.objective.push_back(objective());

      if (examine_all) {
        if (changed == 0) {
          // Platt's rule for b is only a local choice; once no pair moves,
          // place b in the middle of the interval the KKT conditions allow
          // and keep going if that still leaves violators.
          refit_bias();
          if (max_violation() <= hp_.tol) {
            stats_.converged = true;
            break;
          }
          if (refit_stalled) break;
          refit_stalled = true;
          continue;
        }
        refit_stalled = false;
        examine_all = false;
      } else if (changed == 0) {
        examine_all = true;
      }
    }
    if (!stats_.converged) {
      spdlog::warn("smo: stopped after {} passes with KKT violation {:.3g}",
                   stats_.passes, max_violation());
    }
  }

  const std::vector<double> &alpha() const { return alpha_; }
  double bias() const { return b_; }
  const TrainStats &stats() const { return stats_; }

 private:
  double kernel(std::size_t i, std::size_t j) const {
    if (!gram_.empty()) return gram_[i * n_ + j];
    return rbf_kernel(x_[i], x_[j], hp_.gamma);
  }

  bool bound_free(std::size_t i) const {
    return alpha_[i] > 0.0 && alpha_[i] < hp_.c;
  }

  // KKT violation of point i under the current bias.
  double violation(std::size_t i) const {
    const double r = y_[i] * err_[i];
    if (alpha_[i] <= 0.0) return std::max(0.0, -r);
    if (alpha_[i] >= hp_.c) return std::max(0.0, r);
    return std::abs(r);
  }

  double max_violation() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i) worst = std::max(worst, violation(i));
    return worst;
  }

  // sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij, using the error
  // cache: sum_j alpha_j y_j K_ij = E_i + y_i - b.
  double objective() const {
    double sum = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      sum += alpha_[i];
      quad += alpha_[i] * y_[i] * (err_[i] + y_[i] - b_);
    }
    return sum - 0.5 * quad;
  }

  void refit_bias() {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i) {
      // The bias that would put y_i f(x_i) exactly at 1.
      const double target = y_[i] - (err_[i] + y_[i] - b_);
      const bool at_zero = alpha_[i] <= 0.0;
      const bool at_c = alpha_[i] >= hp_.c;
      if (!at_zero && !at_c) {
        lo = std::max(lo, target);
        hi = std::min(hi, target);
      } else if ((at_zero && y_[i] > 0) || (at_c && y_[i] < 0)) {
        lo = std::max(lo, target);
      } else {
        hi = std::min(hi, target);
      }
    }
    double b = b_;
    if (std::isfinite(lo) && std::isfinite(hi)) {
      b = 0.5 * (lo + hi);
    } else if (std::isfinite(lo)) {
      b = lo;
    } else if (std::isfinite(hi)) {
      b = hi;
    }
    const double db = b - b_;
    for (auto &e : err_) e += db;
    b_ = b;
  }

  int examine(std::size_t i2) {
    const double r2 = y_[i2] * err_[i2];
    if (!((r2 < -hp_.tol && alpha_[i2] < hp_.c) ||
          (r2 > hp_.tol && alpha_[i2] > 0.0))) {
      return 0;
    }
    // Second choice: the free point with the largest |E1 - E2|, scanning
    // from a random offset so ties fall to a seeded choice.
    const std::size_t start = rng_() % n_;
    std::size_t best = n_;
    double best_gap = -1.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t k = (start + j) % n_;
      if (k == i2 || !bound_free(k)) continue;
      const double gap = std::abs(err_[i2] - err_[k]);
      if (gap > best_gap) {
        best_gap = gap;
        best = k;
      }
    }
    if (best < n_ && take_step(best, i2)) return 1;

    std::size_t offset = rng_() % n_;
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t k = (offset + j) % n_;
      if (bound_free(k) && take_step(k, i2)) return 1;
    }
    offset = rng_() % n_;
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t k = (offset + j) % n_;
      if (!bound_free(k) && take_step(k, i2)) return 1;
    }
    return 0;
  }

  // Round-off leaves alphas a hair inside the box; such a point would count
  // as free but could barely move.
  double snap(double a) const {
    const double margin = kBoundEps * hp_.c;
    if (a < margin) return 0.0;
    if (a > hp_.c - margin) return hp_.c;
    return a;
  }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double c = hp_.c;
    const double a1 = alpha_[i1], a2 = alpha_[i2];
    const int y1 = y_[i1], y2 = y_[i2];
    const double e1 = err_[i1], e2 = err_[i2];
    const int s = y1 * y2;

    double lo, hi;
    if (s < 0) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c, c + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c);
      hi = std::min(c, a1 + a2);
    }
    if (lo >= hi) return false;

    const double k11 = kernel(i1, i1), k12 = kernel(i1, i2),
                 k22 = kernel(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;
    double new_a2;
    if (eta > 0.0) {
      new_a2 = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
    } else {
      // Objective along the constraint line as a function of the new a2.
      auto gain = [&](double t) {
        const double d = t - a2;
        return y2 * (e1 - e2) * d - 0.5 * eta * d * d;
      };
      const double g_lo = gain(lo), g_hi = gain(hi);
      if (g_lo > g_hi + kAlphaEps) {
        new_a2 = lo;
      } else if (g_hi > g_lo + kAlphaEps) {
        new_a2 = hi;
      } else {
        new_a2 = a2;
      }
    }
    if (std::abs(new_a2 - a2) < kAlphaEps * (new_a2 + a2 + kAlphaEps)) {
      return false;
    }

    double new_a1 = a1 + s * (a2 - new_a2);
    if (new_a1 < 0.0) {
      new_a2 += s * new_a1;
      new_a1 = 0.0;
    } else if (new_a1 > c) {
      new_a2 += s * (new_a1 - c);
      new_a1 = c;
    }
    new_a1 = snap(new_a1);
    new_a2 = snap(std::clamp(new_a2, 0.0, c));

    const double d1 = new_a1 - a1, d2 = new_a2 - a2;
    const double b1 = b_ - e1 - y1 * d1 * k11 - y2 * d2 * k12;
    const double b2 = b_ - e2 - y1 * d1 * k12 - y2 * d2 * k22;
    double new_b;
    if (new_a1 > 0.0 && new_a1 < c) {
      new_b = b1;
    } else if (new_a2 > 0.0 && new_a2 < c) {
      new_b = b2;
    } else {
      new_b = 0.5 * (b1 + b2);
    }
    const double db = new_b - b_;
    for (std::size_t k = 0; k < n_; ++k) {
      err_[k] += y1 * d1 * kernel(i1, k) + y2 * d2 * kernel(i2, k) + db;
    }
    alpha_[i1] = new_a1;
    alpha_[i2] = new_a2;
    b_ = new_b;
    ++stats_.steps;
    return true;
  }

  std::span<const SparseVector> x_;
  std::span<const int> y_;
  Hyperparams hp_;
  std::size_t n_;
  std::vector<double> alpha_;
  std::vector<double> err_;  // f(x_i) - y_i
  double b_ = 0.0;
  std::vector<double> gram_;
  std::mt19937 rng_;
  TrainStats stats_;
};

}  // namespace

BinaryModel train_binary(std::span<const SparseVector> x,
                         std::span<const int> y, const Hyperparams &hp) {
  hp.validate();
  if (x.size() != y.size()) {
    throw std::invalid_argument("train_binary: x and y sizes differ");
  }
  bool has_pos = false, has_neg = false;
  for (int label : y) {
    if (label == 1) {
      has_pos = true;
    } else if (label == -1) {
      has_neg = true;
    } else {
      throw std::invalid_argument("train_binary: labels must be +1 or -1");
    }
  }
  if (!has_pos || !has_neg) {
    throw TrainingError("train_binary: need at least one example per label");
  }
  for (const auto &v : x) {
    if (v.dimension() != x[0].dimension()) {
      throw std::invalid_argument("train_binary: dimension mismatch");
    }
    for (double value : v.values()) {
      if (!std::isfinite(value)) {
        throw TrainingError("train_binary: non-finite feature value");
      }
    }
  }

  Smo smo(x, y, hp);
  smo.run();

  BinaryModel model;
  model.hp = hp;
  model.bias = smo.bias();
  model.stats = smo.stats();
  const auto &alpha = smo.alpha();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (alpha[i] > 0.0) {
      model.support_vectors.push_back(x[i]);
      model.support_indices.push_back(i);
      model.coef.push_back(alpha[i] * y[i]);
    }
  }
  return model;
}

double decision(const BinaryModel &model, const SparseVector &v) {
  double f = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    f += model.coef[i] *
         rbf_kernel(model.support_vectors[i], v, model.hp.gamma);
  }
  return f;
}

double Sigmoid::operator()(double f) const {
  const double z = a * f + b;
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

Sigmoid fit_sigmoid(std::span<const double> decisions,
                    std::span<const int> labels) {
  if (decisions.size() != labels.size()) {
    throw std::invalid_argument("fit_sigmoid: size mismatch");
  }
  constexpr int kMaxIter = 100;
  constexpr double kMinStep = 1e-10;
  constexpr double kSigma = 1e-12;
  constexpr double kEps = 1e-5;

  double n_pos = 0, n_neg = 0;
  for (int label : labels) (label > 0 ? n_pos : n_neg) += 1;
  const double t_pos = (n_pos + 1.0) / (n_pos + 2.0);
  const double t_neg = 1.0 / (n_neg + 2.0);
  const std::size_t n = decisions.size();

  auto target = [&](std::size_t i) { return labels[i] > 0 ? t_pos : t_neg; };
  auto loss = [&](double a, double b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = decisions[i] * a + b;
      const double t = target(i);
      sum += z >= 0 ? t * z + std::log1p(std::exp(-z))
                    : (t - 1.0) * z + std::log1p(std::exp(z));
    }
    return sum;
  };

  Sigmoid s{0.0, std::log((n_neg + 1.0) / (n_pos + 1.0))};
  double fval = loss(s.a, s.b);
  double g1 = 0.0, g2 = 0.0;
  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0;
    g1 = g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = decisions[i] * s.a + s.b;
      double p, q;
      if (z >= 0) {
        const double e = std::exp(-z);
        p = e / (1.0 + e);
        q = 1.0 / (1.0 + e);
      } else {
        const double e = std::exp(z);
        p = 1.0 / (1.0 + e);
        q = e / (1.0 + e);
      }
      const double d2 = p * q;
      h11 += decisions[i] * decisions[i] * d2;
      h22 += d2;
      h21 += decisions[i] * d2;
      const double d1 = target(i) - p;
      g1 += decisions[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < kEps && std::abs(g2) < kEps) return s;

    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    while (step >= kMinStep) {
      const double na = s.a + step * da, nb = s.b + step * db;
      const double nf = loss(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        s = {na, nb};
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < kMinStep) {
      // No descent direction left at double precision: this is the optimum
      // as far as it can be resolved.
      spdlog::debug("fit_sigmoid: line search stopped, gradient ({:.3g}, {:.3g})",
                    g1, g2);
      return s;
    }
  }
  throw TrainingError(
      "fit_sigmoid: no convergence after " + std::to_string(kMaxIter) +
      " iterations (a=" + format_double(s.a) + ", b=" + format_double(s.b) +
      ", gradient=" + format_double(g1) + "," + format_double(g2) + ", n=" +
      std::to_string(n) + ")");
}

CalibratedModel::CalibratedModel(std::vector<std::string> classes,
                                 std::vector<ClassModel> models)
    : classes_(std::move(classes)), models_(std::move(models)) {
  if (classes_.empty()) throw std::invalid_argument("model without classes");
  if (classes_.size() > 1 && models_.size() != classes_.size()) {
    throw std::invalid_argument("one binary model per class expected");
  }
  if (classes_.size() == 1 && !models_.empty()) {
    throw std::invalid_argument("single-class model takes no binary models");
  }
}

CalibratedModel CalibratedModel::train(std::span<const SparseVector> x,
                                       std::span<const std::string> labels,
                                       const Hyperparams &hp,
                                       std::vector<std::string> classes) {
  if (x.size() != labels.size()) {
    throw std::invalid_argument("CalibratedModel::train: size mismatch");
  }
  std::set<std::string> present(labels.begin(), labels.end());
  if (classes.empty()) classes.assign(present.begin(), present.end());
  if (classes.empty()) throw TrainingError("no training examples");
  std::set<std::string> declared(classes.begin(), classes.end());
  if (declared != present || declared.size() != classes.size()) {
    throw std::invalid_argument(
        "class list must name each training label exactly once");
  }
  if (classes.size() == 1) return CalibratedModel(std::move(classes), {});

  std::vector<BinaryModel> models;
  std::vector<int> y(x.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] = labels[i] == classes[c] ? 1 : -1;
    }
    Hyperparams class_hp = hp;
    class_hp.seed = derive_seed(hp.seed, "ovr", c);
    models.push_back(train_binary(x, y, class_hp));
  }
  return calibrate(std::move(models), std::move(classes), x, labels);
}

CalibratedModel calibrate(std::vector<BinaryModel> models,
                          std::vector<std::string> classes,
                          std::span<const SparseVector> x,
                          std::span<const std::string> labels) {
  if (models.size() != classes.size()) {
    throw std::invalid_argument("calibrate: one model per class expected");
  }
  std::vector<CalibratedModel::ClassModel> out;
  std::vector<double> f(x.size());
  std::vector<int> ind(x.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      f[i] = decision(models[c], x[i]);
      ind[i] = labels[i] == classes[c] ? 1 : -1;
    }
    out.push_back({std::move(models[c]), fit_sigmoid(f, ind)});
  }
  return CalibratedModel(std::move(classes), std::move(out));
}

std::vector<double> CalibratedModel::predict_proba(const SparseVector &v) const {
  if (models_.empty()) return {1.0};
  std::vector<double> p(models_.size());
  double sum = 0.0;
  for (std::size_t c = 0; c < models_.size(); ++c) {
    const auto &m = models_[c];
    if (!m.model.support_vectors.empty() &&
        m.model.support_vectors[0].dimension() != v.dimension()) {
      throw std::invalid_argument("predict_proba: dimension mismatch");
    }
    p[c] = m.sigmoid(decision(m.model, v));
    sum += p[c];
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    std::fill(p.begin(), p.end(), 1.0 / p.size());
    return p;
  }
  for (auto &x : p) x /= sum;
  return p;
}

std::size_t CalibratedModel::predict(const SparseVector &v) const {
  auto p = predict_proba(v);
  return std::max_element(p.begin(), p.end()) - p.begin();
}

void CalibratedModel::remap_support(std::span<const std::size_t> ids) {
  for (auto &m : models_) {
    for (auto &i : m.model.support_indices) {
      if (i >= ids.size()) {
        throw std::invalid_argument("remap_support: index out of range");
      }
      i = ids[i];
    }
  }
}

void ModelFile::write(std::ostream &out) const {
  out << "pairclass-model " << kVersion << "\n";
  out << "space " << hex64(space_checksum) << " rows " << rows << "\n";
  out << "hyperparams c " << format_double(hp.c) << " gamma "
      << format_double(hp.gamma) << " tol " << format_double(hp.tol)
      << " max_passes " << hp.max_passes << " seed " << hp.seed << "\n";
  for (const auto &[name, model] : sections) {
    out << "section " << name << " classes " << model.classes().size();
    for (const auto &c : model.classes()) out << ' ' << c;
    out << "\n";
    for (std::size_t c = 0; c < model.models().size(); ++c) {
      const auto &m = model.models()[c];
      out << "class " << model.classes()[c] << " bias "
          << format_double(m.model.bias) << " sigmoid "
          << format_double(m.sigmoid.a) << ' ' << format_double(m.sigmoid.b)
          << " sv " << m.model.coef.size() << "\n";
      for (std::size_t j = 0; j < m.model.coef.size(); ++j) {
        out << m.model.support_indices[j] << ' '
            << format_double(m.model.coef[j]) << "\n";
      }
    }
    out << "end\n";
  }
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream &in) : in_(in) {}

  bool next(std::istringstream *fields) {
    std::string line;
    if (!std::getline(in_, line)) return false;
    ++lineno_;
    fields->clear();
    fields->str(line);
    return true;
  }

  std::istringstream expect() {
    std::istringstream fields;
    if (!next(&fields)) fail("unexpected end of file");
    return fields;
  }

  [[noreturn]] void fail(const std::string &what) const {
    throw FormatError("model file line " + std::to_string(lineno_) + ": " +
                      what);
  }

  void keyword(std::istringstream &fields, std::string_view word) const {
    std::string got;
    if (!(fields >> got) || got != word) {
      fail("expected '" + std::string(word) + "'");
    }
  }

  template <typename T>
  T value(std::istringstream &fields) const {
    std::string text;
    if (!(fields >> text)) fail("missing value");
    if constexpr (std::is_same_v<T, double>) {
      try {
        return parse_double(text);
      } catch (const InputError &) {
        fail("bad number '" + text + "'");
      }
    } else if constexpr (std::is_same_v<T, std::string>) {
      return text;
    } else {
      T v{};
      std::istringstream parse(text);
      if (!(parse >> v) || !parse.eof()) fail("bad integer '" + text + "'");
      return v;
    }
  }

 private:
  std::istream &in_;
  int lineno_ = 0;
};

}  // namespace

ModelFile ModelFile::read(std::istream &in, const Dataset &dataset) {
  LineReader r(in);
  ModelFile file;
  auto header = r.expect();
  r.keyword(header, "pairclass-model");
  if (r.value<int>(header) != kVersion) {
    r.fail("unsupported model format version");
  }
  auto space = r.expect();
  r.keyword(space, "space");
  file.space_checksum = std::stoull(r.value<std::string>(space), nullptr, 16);
  r.keyword(space, "rows");
  file.rows = r.value<std::size_t>(space);
  if (file.space_checksum != dataset.space_checksum ||
      file.rows != dataset.size()) {
    throw FormatError("model file was trained on a different dataset (space " +
                      hex64(file.space_checksum) + ", dataset has " +
                      hex64(dataset.space_checksum) + ")");
  }
  auto hp = r.expect();
  r.keyword(hp, "hyperparams");
  r.keyword(hp, "c");
  file.hp.c = r.value<double>(hp);
  r.keyword(hp, "gamma");
  file.hp.gamma = r.value<double>(hp);
  r.keyword(hp, "tol");
  file.hp.tol = r.value<double>(hp);
  r.keyword(hp, "max_passes");
  file.hp.max_passes = r.value<long>(hp);
  r.keyword(hp, "seed");
  file.hp.seed = r.value<std::uint64_t>(hp);

  std::istringstream fields;
  while (r.next(&fields)) {
    std::string word;
    if (!(fields >> word)) continue;
    if (word != "section") r.fail("expected 'section'");
    const auto name = r.value<std::string>(fields);
    r.keyword(fields, "classes");
    const auto k = r.value<std::size_t>(fields);
    std::vector<std::string> classes;
    for (std::size_t c = 0; c < k; ++c) {
      classes.push_back(r.value<std::string>(fields));
    }
    std::vector<CalibratedModel::ClassModel> models;
    for (std::size_t c = 0; k > 1 && c < k; ++c) {
      auto line = r.expect();
      r.keyword(line, "class");
      if (r.value<std::string>(line) != classes[c]) r.fail("class order");
      CalibratedModel::ClassModel m;
      m.model.hp = file.hp;
      r.keyword(line, "bias");
      m.model.bias = r.value<double>(line);
      r.keyword(line, "sigmoid");
      m.sigmoid.a = r.value<double>(line);
      m.sigmoid.b = r.value<double>(line);
      r.keyword(line, "sv");
      const auto count = r.value<std::size_t>(line);
      for (std::size_t j = 0; j < count; ++j) {
        auto sv = r.expect();
        const auto row = r.value<std::size_t>(sv);
        if (row >= dataset.size()) r.fail("support vector row out of range");
        m.model.support_indices.push_back(row);
        m.model.support_vectors.push_back(dataset.rows[row].values);
        m.model.coef.push_back(r.value<double>(sv));
      }
      models.push_back(std::move(m));
    }
    auto end = r.expect();
    r.keyword(end, "end");
    try {
      file.sections.emplace_back(
          name, CalibratedModel(std::move(classes), std::move(models)));
    } catch (const std::invalid_argument &e) {
      r.fail(e.what());
    }
  }
  return file;
}

}  // namespace pairclass
