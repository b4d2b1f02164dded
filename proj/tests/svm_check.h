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

#ifndef PAIRCLASS_TESTS_SVM_CHECK_H_
#define PAIRCLASS_TESTS_SVM_CHECK_H_

#include <algorithm>
#include <cmath>
#include <vector>

#include "pairclass/classifier.h"

namespace pairclass::testing {

// Kernel matrix from the dense definition, independent of rbf_kernel.
inline std::vector<std::vector<double>> rbf_matrix(
    const std::vector<std::vector<double>> &x, double gamma) {
  const auto n = x.size();
  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double d = 0.0;
      for (std::size_t f = 0; f < x[i].size(); ++f) {
        d += (x[i][f] - x[j][f]) * (x[i][f] - x[j][f]);
      }
      k[i][j] = std::exp(-gamma * d);
    }
  }
  return k;
}

// Dual variables of a trained model, recovered from its support set.
inline std::vector<double> alphas_of(const BinaryModel &m, std::size_t n) {
  std::vector<double> a(n, 0.0);
  for (std::size_t s = 0; s < m.coef.size(); ++s) {
    a[m.support_indices[s]] = std::abs(m.coef[s]);
  }
  return a;
}

struct KktReport {
  double max_violation = 0.0;  // worst KKT case violation of y_i f(x_i)
  double box = 0.0;            // worst excursion outside [0, c]
  double equality = 0.0;       // |sum a_i y_i|
};

// f(x_i) from the model's own decision function; KKT cases per alpha.
inline KktReport check_kkt(const BinaryModel &m,
                           const std::vector<SparseVector> &x,
                           const std::vector<int> &y, double c) {
  KktReport r;
  const auto a = alphas_of(m, x.size());
  const double eps = 1e-9 * c;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += a[i] * y[i];
    r.box = std::max({r.box, -a[i], a[i] - c});
    const double yf = y[i] * decision(m, x[i]);
    double v = 0.0;
    if (a[i] <= eps) {
      v = 1.0 - yf;
    } else if (a[i] >= c - eps) {
      v = yf - 1.0;
    } else {
      v = std::abs(yf - 1.0);
    }
    r.max_violation = std::max(r.max_violation, v);
  }
  r.equality = std::abs(sum);
  return r;
}

}  // namespace pairclass::testing

#endif  // PAIRCLASS_TESTS_SVM_CHECK_H_
