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

#include <vector>

#include <Eigen/Dense>

#include "lotsim/fock/operator.hpp"

namespace lotsim {

inline constexpr double kModeUnitarityTolerance = 1e-12;

/// Passive linear-optical transformation on a list of modes.
///
/// matrix()(j, i) is the amplitude for a photon entering modes()[i] to leave in
/// modes()[j]. Creation operators therefore map as a_i^dagger -> sum_j W_ji a_j^dagger,
/// the product of transforms is the ordinary matrix product, and lift() is a
/// group homomorphism: lift(U * V) = lift(U) * lift(V).
class ModeTransform {
 public:
  /// Throws InvalidArgument for duplicate modes, a shape mismatch, or a
  /// non-unitary matrix.
  ModeTransform(std::vector<ModeLabel> modes, Eigen::MatrixXcd matrix);

  static ModeTransform identity(std::vector<ModeLabel> modes);

  const std::vector<ModeLabel>& modes() const { return modes_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  /// Same transform acting on `superset` (identity on the added modes).
  ModeTransform embedded(const std::vector<ModeLabel>& superset) const;
  ModeTransform inverse() const;

 private:
  std::vector<ModeLabel> modes_;
  Eigen::MatrixXcd matrix_;
};

/// lhs after rhs, on the union of their modes (lhs's modes first).
ModeTransform operator*(const ModeTransform& lhs, const ModeTransform& rhs);

/// Real polarization rotation of one beam: |H> -> cos(a)|H> + sin(a)|V>.
ModeTransform polarization_rotation(Beam beam, double angle);

/// Fock-space operator of the transform. It conserves total photon number and is
/// unitary on every sector of the truncated space. Throws SpaceMismatch when a
/// transform mode is missing from `space`.
Operator lift(const ModeTransform& t, SpacePtr space);

/// lift(t) applied to `state`, without materializing the operator.
StateVector apply(const ModeTransform& t, const StateVector& state);

}  // namespace lotsim
