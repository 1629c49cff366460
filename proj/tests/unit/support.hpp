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

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "lotsim/fock/density_operator.hpp"
#include "lotsim/fock/state_vector.hpp"

namespace lotsim::testing {

inline Eigen::MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = {n(rng), n(rng)};
  }
  return m;
}

inline Eigen::MatrixXcd random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(dim, dim, rng));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

/// Random mixed state of the given rank on the full space.
inline DensityOperator random_density(const SpacePtr& space, std::mt19937_64& rng, Eigen::Index rank = 3) {
  const auto d = static_cast<Eigen::Index>(space->dimension());
  const Eigen::MatrixXcd a = random_matrix(d, rank, rng);
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::from_dense(space, 0.5 * (rho + rho.adjoint()));
}

inline StateVector random_state(const SpacePtr& space, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::vector<StateVector::Entry> entries;
  for (Index i = 0; i < space->dimension(); ++i) entries.emplace_back(i, Complex{n(rng), n(rng)});
  return StateVector(space, std::move(entries)).normalized();
}

inline Eigen::VectorXcd dense(const StateVector& s) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s.space()->dimension()));
  for (const auto& [i, a] : s.entries()) v(static_cast<Eigen::Index>(i)) = a;
  return v;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace lotsim::testing
