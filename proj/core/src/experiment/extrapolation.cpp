// Copyright 2026 The lotsim Authors
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

#include "lotsim/experiment/extrapolation.hpp"

#include <cmath>

#include "lotsim/error.hpp"

namespace lotsim {

namespace {

void check_abscissae(std::span<const double> x, std::size_t n) {
  if (x.size() < 2) throw InvalidArgument("extrapolation needs at least two samples");
  if (x.size() != n) throw InvalidArgument("extrapolation abscissae and values differ in length");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw InvalidArgument("extrapolation abscissa is not finite");
    for (std::size_t j = 0; j < i; ++j) {
      if (x[i] == x[j]) throw InvalidArgument("extrapolation abscissae must be distinct");
    }
  }
}

// Neville step towards x = 0 combining P_{i-j+1..i} (newer) and P_{i-j..i-1} (older).
template <typename T>
T neville(double xi, double xij, const T& newer, const T& older) {
  return (xi * older - xij * newer) / (xi - xij);
}

}  // namespace

Extrapolation richardson_to_zero(std::span<const double> x, std::span<const double> y) {
  check_abscissae(x, y.size());
  const std::size_t n = x.size();
  Extrapolation out;
  out.tableau.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    out.tableau[i].resize(i + 1);
    out.tableau[i][0] = y[i];
    for (std::size_t j = 1; j <= i; ++j) {
      out.tableau[i][j] = neville(x[i], x[i - j], out.tableau[i][j - 1], out.tableau[i - 1][j - 1]);
    }
  }
  const auto& last = out.tableau[n - 1];
  out.value = last[n - 1];
  out.error = std::abs(last[n - 1] - last[n - 2]);
  double previous = std::abs(last[1] - last[0]);
  for (std::size_t j = 2; j < n; ++j) {
    const double step = std::abs(last[j] - last[j - 1]);
    if (step > previous) out.residuals_monotone = false;
    previous = step;
  }
  return out;
}

Eigen::MatrixXcd richardson_to_zero(std::span<const double> x, std::span<const Eigen::MatrixXcd> y) {
  check_abscissae(x, y.size());
  for (const auto& m : y) {
    if (m.rows() != y[0].rows() || m.cols() != y[0].cols()) {
      throw InvalidArgument("extrapolated matrices differ in shape");
    }
  }
  std::vector<Eigen::MatrixXcd> row(y.begin(), y.end());
  // In-place Neville: after pass j, row[i] holds P_{i-j..i}.
  for (std::size_t j = 1; j < x.size(); ++j) {
    for (std::size_t i = x.size() - 1; i >= j; --i) {
      row[i] = neville(x[i], x[i - j], Eigen::MatrixXcd(row[i]), Eigen::MatrixXcd(row[i - 1]));
      if (i == j) break;
    }
  }
  return row.back();
}

}  // namespace lotsim
