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
#include <utility>
#include <vector>

#include "lotsim/fock/operator.hpp"

namespace lotsim {

inline constexpr double kHermiticityTolerance = 1e-12;
/// Largest anti-Hermitian residue that symmetrization may silently absorb.
inline constexpr double kSymmetrizeTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;
/// Traces below this are treated as structurally zero.
inline constexpr double kZeroProbability = 1e-14;

enum class TraceFlag { normalized, subnormalized };

/// Hermitian, positive operator with trace in (0, 1].
///
/// Construction symmetrizes the input to (M + M^dagger) / 2 and throws
/// NumericalError when that correction exceeds kSymmetrizeTolerance. A trace
/// within kTraceTolerance of 1 is flagged normalized, anything smaller is
/// subnormalized with weight() equal to the trace.
class DensityOperator {
 public:
  DensityOperator(SpacePtr space, const SparseMatrix& matrix);

  static DensityOperator from_pure(const StateVector& state);
  static DensityOperator from_dense(SpacePtr space, const Eigen::MatrixXcd& matrix);

  const SpacePtr& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }

  TraceFlag trace_flag() const { return flag_; }
  bool is_normalized() const { return flag_ == TraceFlag::normalized; }
  double trace() const { return trace_; }
  double weight() const { return trace_; }

  DensityOperator normalized() const;
  Complex element(Index row, Index col) const { return matrix_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)); }
  /// <v|rho|v>
  double expectation(const StateVector& v) const;
  double min_eigenvalue() const;
  /// tr(rho^2) / tr(rho)^2
  double purity() const;

 private:
  SpacePtr space_;
  SparseMatrix matrix_;
  double trace_ = 0.0;
  TraceFlag flag_ = TraceFlag::normalized;
};

/// sum_k w_k |psi_k><psi_k|
DensityOperator mixture(std::span<const std::pair<double, StateVector>> terms);

/// Reduced operator on `keep` (a non-empty subset of the space's modes, in the
/// space's mode order). The trace is preserved.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const ModeLabel> keep);

/// O rho O^dagger; the trace flag becomes subnormalized when the trace drops.
DensityOperator apply_operator(const Operator& op, const DensityOperator& rho);

/// <phi|rho|phi> for normalized rho and phi.
double fidelity_pure(const DensityOperator& rho, const StateVector& phi);

struct Eigenpair {
  double value;
  StateVector vector;
};

/// Eigenpairs sorted by descending eigenvalue. Each eigenvector's largest
/// component is made real and positive.
std::vector<Eigenpair> eigendecompose(const DensityOperator& rho);

struct DenseEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXcd vectors;  // columns
};

/// Throws NumericalError when `m` is not Hermitian within `tolerance`.
DenseEigen eigendecompose_hermitian(const Eigen::MatrixXcd& m, double tolerance = kHermiticityTolerance);

/// max_ij |M_ij - conj(M_ji)|
double hermiticity_defect(const Eigen::MatrixXcd& m);

/// Principal square root of a Hermitian positive semidefinite matrix; negative
/// eigenvalues down to -kPositivityTolerance are clipped.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m);

}  // namespace lotsim
