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

#include "lotsim/fock/operator.hpp"

#include <cmath>

#include "lotsim/error.hpp"

namespace lotsim {

Operator::Operator(SpacePtr space, SparseMatrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_->dimension());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw InvalidArgument("operator matrix does not match the dimension of " + space_->describe());
  }
  matrix_.makeCompressed();
}

Operator Operator::identity(SpacePtr space) {
  const auto d = static_cast<Eigen::Index>(space->dimension());
  SparseMatrix m(d, d);
  m.setIdentity();
  return Operator(std::move(space), std::move(m));
}

Operator Operator::projector(const StateVector& v) {
  const auto d = static_cast<Eigen::Index>(v.space()->dimension());
  std::vector<Eigen::Triplet<Complex>> t;
  for (const auto& [i, a] : v.entries()) {
    for (const auto& [j, b] : v.entries()) {
      t.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), a * std::conj(b));
    }
  }
  SparseMatrix m(d, d);
  m.setFromTriplets(t.begin(), t.end());
  return Operator(v.space(), std::move(m));
}

Operator Operator::adjoint() const { return Operator(space_, SparseMatrix(matrix_.adjoint())); }

double Operator::unitarity_defect() const {
  SparseMatrix p = matrix_.adjoint() * matrix_;
  const auto d = p.rows();
  SparseMatrix id(d, d);
  id.setIdentity();
  p -= id;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < p.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(p, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  if (!same_space(lhs.space(), rhs.space())) throw SpaceMismatch("operator product across different spaces");
  return Operator(lhs.space(), SparseMatrix(lhs.matrix() * rhs.matrix()));
}

namespace {

Operator ladder(SpacePtr space, const ModeLabel& mode, int shift) {
  const auto pos = space->mode_index(mode);
  const auto d = static_cast<Eigen::Index>(space->dimension());
  std::vector<Eigen::Triplet<Complex>> t;
  Occupation occ(space->num_modes());
  int total = 0;
  for (Index i = 0; i < space->dimension(); ++i) {
    space->occupation(i, occ);
    total = 0;
    for (int n : occ) total += n;
    const int n = occ[pos];
    if (shift > 0) {
      if (total + 1 > space->cutoff()) continue;
      occ[pos] = n + 1;
      t.emplace_back(static_cast<Eigen::Index>(space->index_of(occ)), static_cast<Eigen::Index>(i),
                     std::sqrt(static_cast<double>(n + 1)));
    } else {
      if (n == 0) continue;
      occ[pos] = n - 1;
      t.emplace_back(static_cast<Eigen::Index>(space->index_of(occ)), static_cast<Eigen::Index>(i),
                     std::sqrt(static_cast<double>(n)));
    }
  }
  SparseMatrix m(d, d);
  m.setFromTriplets(t.begin(), t.end());
  return Operator(std::move(space), std::move(m));
}

}  // namespace

Operator creation(SpacePtr space, const ModeLabel& mode) { return ladder(std::move(space), mode, +1); }
Operator annihilation(SpacePtr space, const ModeLabel& mode) { return ladder(std::move(space), mode, -1); }

Operator number_operator(SpacePtr space, std::span<const ModeLabel> modes) {
  std::vector<std::size_t> pos;
  for (const auto& m : modes) pos.push_back(space->mode_index(m));
  const auto d = static_cast<Eigen::Index>(space->dimension());
  std::vector<Eigen::Triplet<Complex>> t;
  Occupation occ(space->num_modes());
  for (Index i = 0; i < space->dimension(); ++i) {
    space->occupation(i, occ);
    int n = 0;
    if (pos.empty()) {
      for (int x : occ) n += x;
    } else {
      for (auto p : pos) n += occ[p];
    }
    if (n) t.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i), static_cast<double>(n));
  }
  SparseMatrix m(d, d);
  m.setFromTriplets(t.begin(), t.end());
  return Operator(std::move(space), std::move(m));
}

StateVector apply_operator(const Operator& op, const StateVector& state) {
  if (!same_space(op.space(), state.space())) throw SpaceMismatch("operator and state live on different spaces");
  std::vector<StateVector::Entry> out;
  const auto& m = op.matrix();
  for (const auto& [j, x] : state.entries()) {
    for (SparseMatrix::InnerIterator it(m, static_cast<Eigen::Index>(j)); it; ++it) {
      out.emplace_back(static_cast<Index>(it.row()), it.value() * x);
    }
  }
  StateVector result(state.space(), std::move(out));
  if (state.is_normalized() && std::abs(result.norm() - 1.0) <= kNormTolerance) return result.normalized();
  return result;
}

}  // namespace lotsim
