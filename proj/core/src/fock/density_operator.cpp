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

#include "lotsim/fock/density_operator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "lotsim/error.hpp"

namespace lotsim {

namespace {

using Triplet = Eigen::Triplet<Complex>;

double max_abs(const SparseMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

}  // namespace

DensityOperator::DensityOperator(SpacePtr space, const SparseMatrix& matrix) : space_(std::move(space)) {
  const auto d = static_cast<Eigen::Index>(space_->dimension());
  if (matrix.rows() != d || matrix.cols() != d) {
    throw InvalidArgument("density matrix does not match the dimension of " + space_->describe());
  }
  SparseMatrix adj = matrix.adjoint();
  const double defect = max_abs(SparseMatrix(matrix - adj));
  if (defect > kSymmetrizeTolerance) {
    throw NumericalError("density matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  matrix_ = (matrix + adj) * Complex{0.5};
  matrix_.prune(Complex{0.0}, 0.0);
  matrix_.makeCompressed();

  trace_ = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) trace_ += matrix_.coeff(k, k).real();
  if (trace_ < kZeroProbability) throw ZeroProbability("density operator has zero trace", trace_);
  if (trace_ > 1.0 + kTraceTolerance) {
    throw InvalidArgument("density operator trace " + std::to_string(trace_) + " exceeds 1");
  }
  flag_ = std::abs(trace_ - 1.0) <= kTraceTolerance ? TraceFlag::normalized : TraceFlag::subnormalized;
}

DensityOperator DensityOperator::from_pure(const StateVector& state) {
  return DensityOperator(state.space(), Operator::projector(state).matrix());
}

DensityOperator DensityOperator::from_dense(SpacePtr space, const Eigen::MatrixXcd& matrix) {
  return DensityOperator(std::move(space), matrix.sparseView(Complex{0.0}, 0.0));
}

DensityOperator DensityOperator::normalized() const {
  return DensityOperator(space_, matrix_ * Complex{1.0 / trace_});
}

double DensityOperator::expectation(const StateVector& v) const {
  if (!same_space(space_, v.space())) throw SpaceMismatch("expectation value across different spaces");
  Complex s{};
  for (const auto& [j, x] : v.entries()) {
    for (SparseMatrix::InnerIterator it(matrix_, static_cast<Eigen::Index>(j)); it; ++it) {
      s += std::conj(v.amplitude(static_cast<Index>(it.row()))) * it.value() * x;
    }
  }
  return s.real();
}

double DensityOperator::min_eigenvalue() const {
  const auto e = eigendecompose_hermitian(dense(), kSymmetrizeTolerance);
  return e.values.size() ? e.values(e.values.size() - 1) : 0.0;
}

double DensityOperator::purity() const {
  Complex s{};
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) s += std::norm(it.value());
  }
  return s.real() / (trace_ * trace_);
}

DensityOperator mixture(std::span<const std::pair<double, StateVector>> terms) {
  if (terms.empty()) throw InvalidArgument("mixture of no states");
  const auto space = terms.front().second.space();
  SparseMatrix m(static_cast<Eigen::Index>(space->dimension()), static_cast<Eigen::Index>(space->dimension()));
  for (const auto& [w, psi] : terms) {
    if (!same_space(space, psi.space())) throw SpaceMismatch("mixture components live on different spaces");
    if (w < 0.0) throw InvalidArgument("negative mixture weight");
    m += Operator::projector(psi).matrix() * Complex{w};
  }
  return DensityOperator(space, m);
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const ModeLabel> keep) {
  const auto& space = *rho.space();
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  std::vector<bool> kept(space.num_modes(), false);
  for (const auto& m : keep) {
    const auto p = space.position(m);
    if (!p) throw InvalidArgument("partial_trace: mode " + m.name() + " is not in " + space.describe());
    kept[*p] = true;
  }
  std::vector<ModeLabel> kept_modes;
  std::vector<ModeLabel> rest_modes;
  for (std::size_t k = 0; k < space.num_modes(); ++k) {
    (kept[k] ? kept_modes : rest_modes).push_back(space.modes()[k]);
  }
  auto out_space = make_space(kept_modes, space.cutoff());
  const FockSpace rest_space(rest_modes, space.cutoff());

  // Split each touched basis index into (kept index, rest index) once.
  std::unordered_map<Index, std::pair<Index, Index>> split;
  Occupation occ(space.num_modes());
  Occupation a(kept_modes.size());
  Occupation b(rest_modes.size());
  auto split_of = [&](Index i) -> const std::pair<Index, Index>& {
    auto it = split.find(i);
    if (it != split.end()) return it->second;
    space.occupation(i, occ);
    std::size_t ia = 0;
    std::size_t ib = 0;
    for (std::size_t k = 0; k < occ.size(); ++k) (kept[k] ? a[ia++] : b[ib++]) = occ[k];
    return split.emplace(i, std::make_pair(out_space->index_of(a), rest_space.index_of(b))).first->second;
  };

  std::vector<Triplet> t;
  const auto& m = rho.matrix();
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    const auto cs = split_of(static_cast<Index>(col));
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      const auto& rs = split_of(static_cast<Index>(it.row()));
      if (rs.second != cs.second) continue;
      t.emplace_back(static_cast<Eigen::Index>(rs.first), static_cast<Eigen::Index>(cs.first), it.value());
    }
  }
  const auto d = static_cast<Eigen::Index>(out_space->dimension());
  SparseMatrix r(d, d);
  r.setFromTriplets(t.begin(), t.end());
  return DensityOperator(out_space, r);
}

DensityOperator apply_operator(const Operator& op, const DensityOperator& rho) {
  if (!same_space(op.space(), rho.space())) throw SpaceMismatch("operator and density operator live on different spaces");
  SparseMatrix r = op.matrix() * rho.matrix() * SparseMatrix(op.matrix().adjoint());
  return DensityOperator(rho.space(), r);
}

double fidelity_pure(const DensityOperator& rho, const StateVector& phi) {
  if (!same_space(rho.space(), phi.space())) throw SpaceMismatch("fidelity_pure: state and operator spaces differ");
  if (!rho.is_normalized()) throw InvalidArgument("fidelity_pure: density operator is not normalized");
  if (!phi.is_normalized()) throw InvalidArgument("fidelity_pure: reference state is not normalized");
  Complex s{};
  for (const auto& [j, x] : phi.entries()) {
    for (SparseMatrix::InnerIterator it(rho.matrix(), static_cast<Eigen::Index>(j)); it; ++it) {
      s += std::conj(phi.amplitude(static_cast<Index>(it.row()))) * it.value() * x;
    }
  }
  if (std::abs(s.imag()) > kHermiticityTolerance) throw NumericalError("fidelity has an imaginary residue");
  return std::clamp(s.real(), 0.0, 1.0);
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DenseEigen eigendecompose_hermitian(const Eigen::MatrixXcd& m, double tolerance) {
  if (m.rows() == 0) return {};
  const double defect = hermiticity_defect(m);
  if (defect > tolerance) throw NumericalError("eigendecompose: matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver((m + m.adjoint()) * 0.5);
  if (solver.info() != Eigen::Success) throw NumericalError("eigendecompose: solver did not converge");
  // Eigen returns ascending order.
  DenseEigen out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    Eigen::Index r = 0;
    out.vectors.col(c).cwiseAbs().maxCoeff(&r);
    const Complex z = out.vectors(r, c);
    out.vectors.col(c) *= std::conj(z) / std::abs(z);
  }
  return out;
}

std::vector<Eigenpair> eigendecompose(const DensityOperator& rho) {
  const auto e = eigendecompose_hermitian(rho.dense(), kSymmetrizeTolerance);
  std::vector<Eigenpair> out;
  out.reserve(static_cast<std::size_t>(e.values.size()));
  for (Eigen::Index c = 0; c < e.values.size(); ++c) {
    std::vector<StateVector::Entry> entries;
    for (Eigen::Index r = 0; r < e.vectors.rows(); ++r) entries.emplace_back(static_cast<Index>(r), e.vectors(r, c));
    out.push_back({e.values(c), StateVector(rho.space(), std::move(entries)).normalized()});
  }
  return out;
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  const auto e = eigendecompose_hermitian(m, kSymmetrizeTolerance);
  if (e.values.size() && e.values(e.values.size() - 1) < -kPositivityTolerance) {
    throw NumericalError("psd_sqrt: matrix has a negative eigenvalue");
  }
  Eigen::VectorXd s = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

}  // namespace lotsim
