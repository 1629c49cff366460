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

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace lotsim {

/// Polynomial extrapolation of samples y(x_i) to x = 0 (Neville tableau).
struct Extrapolation {
  double value = 0.0;
  /// |T[n-1][n-1] - T[n-1][n-2]|: change contributed by the last order.
  double error = 0.0;
  /// True when the successive order corrections along the last row do not grow.
  bool residuals_monotone = true;
  /// tableau[i][j] for j <= i.
  std::vector<std::vector<double>> tableau;
};

/// Throws InvalidArgument for fewer than two samples, mismatched lengths, or
/// repeated abscissae.
Extrapolation richardson_to_zero(std::span<const double> x, std::span<const double> y);

/// Elementwise extrapolation of equally shaped matrices.
Eigen::MatrixXcd richardson_to_zero(std::span<const double> x, std::span<const Eigen::MatrixXcd> y);

}  // namespace lotsim
