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

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "lotsim/fock/state_vector.hpp"

namespace lotsim {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// General (not necessarily unitary) linear operator on a Fock space, stored sparse
/// in basis order.
class Operator {
 public:
  Operator(SpacePtr space, SparseMatrix matrix);

  static Operator identity(SpacePtr space);
  /// |v><v| for the given ket (not renormalized).
  static Operator projector(const StateVector& v);

  const SpacePtr& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }

  Operator adjoint() const;
  /// max |(U^dagger U - I)_ij|
  double unitarity_defect() const;

 private:
  SpacePtr space_;
  SparseMatrix matrix_;
};

/// lhs * rhs (rhs acts first).
Operator operator*(const Operator& lhs, const Operator& rhs);

/// Creation and annihilation operators on the truncated space. Creation maps the
/// top photon-number sector to zero.
Operator creation(SpacePtr space, const ModeLabel& mode);
Operator annihilation(SpacePtr space, const ModeLabel& mode);
/// Total photon number on `modes` (all modes of the space when empty).
Operator number_operator(SpacePtr space, std::span<const ModeLabel> modes = {});

/// O|psi>. Throws SpaceMismatch when the spaces differ. The result keeps the
/// normalized flag only when its norm stays 1.
StateVector apply_operator(const Operator& op, const StateVector& state);

}  // namespace lotsim
