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

#include "lotsim/sources/spdc.hpp"

#include <cmath>

#include "lotsim/error.hpp"

namespace lotsim {

void SpdcParams::validate() const {
  if (!(coupling >= 0.0 && coupling < 1.0)) {
    throw InvalidArgument("SPDC coupling " + std::to_string(coupling) + " must lie in [0, 1)");
  }
  if (max_pairs < 0) throw InvalidArgument("SPDC max_pairs must be non-negative");
  if (beam_i == beam_j) throw InvalidArgument("SPDC beams must differ");
  if (!(max_discarded_weight >= 0.0)) throw InvalidArgument("SPDC max_discarded_weight must be non-negative");
}

Operator pair_creation_generator(SpacePtr space, Beam i, Beam j) {
  SparseMatrix g = (creation(space, H(i)) * creation(space, V(j))).matrix() -
                   (creation(space, V(i)) * creation(space, H(j))).matrix();
  return Operator(std::move(space), std::move(g));
}

StateVector spdc_local_state(const SpdcParams& params, SpdcCoefficients* coefficients) {
  params.validate();
  const std::vector<ModeLabel> modes{H(params.beam_i), V(params.beam_i), H(params.beam_j), V(params.beam_j)};
  auto work = make_space(modes, 2 * params.max_pairs + 2);
  const Operator g = pair_creation_generator(work, params.beam_i, params.beam_j);
  const SparseMatrix k = (g.matrix() - SparseMatrix(g.matrix().adjoint())) * Complex{params.coupling};

  // exp(K)|0> by its Taylor series; K is a finite matrix on the truncated space.
  const auto d = static_cast<Eigen::Index>(work->dimension());
  Eigen::VectorXcd term = Eigen::VectorXcd::Zero(d);
  term(0) = 1.0;
  Eigen::VectorXcd sum = term;
  for (int n = 1; n < 400; ++n) {
    term = (k * term) / static_cast<double>(n);
    sum += term;
    if (term.norm() < 1e-18 * sum.norm()) break;
  }

  std::vector<StateVector::Entry> entries;
  for (Eigen::Index i = 0; i < d; ++i) entries.emplace_back(static_cast<Index>(i), sum(i));
  const StateVector full(work, std::move(entries));

  auto [kept, discarded] = embed(full, make_space(modes, 2 * params.max_pairs));
  if (discarded > params.max_discarded_weight) {
    throw TruncationError("SPDC truncation at " + std::to_string(params.max_pairs) + " pairs discards weight " +
                          std::to_string(discarded) + " at coupling " + std::to_string(params.coupling) +
                          " (limit " + std::to_string(params.max_discarded_weight) + ")");
  }
  const Complex a0 = kept.amplitude(Index{0});
  StateVector out = kept.scaled(std::conj(a0) / std::abs(a0)).normalized();

  if (coefficients) {
    coefficients->discarded_weight = discarded;
    coefficients->amplitudes.assign(static_cast<std::size_t>(params.max_pairs) + 1, 0.0);
    Occupation occ(4);
    for (const auto& [i, x] : out.entries()) {
      out.space()->occupation(i, occ);
      coefficients->amplitudes[static_cast<std::size_t>(occ[0] + occ[1])] += std::norm(x);
    }
    for (auto& a : coefficients->amplitudes) a = std::sqrt(a);
  }
  return out;
}

SpdcCoefficients spdc_coefficients(const SpdcParams& params) {
  SpdcCoefficients c;
  spdc_local_state(params, &c);
  return c;
}

StateVector spdc_state(const SpdcParams& params, SpacePtr space) {
  params.validate();
  for (const auto b : {params.beam_i, params.beam_j}) {
    if (!space->contains(H(b)) || !space->contains(V(b))) {
      throw SpaceMismatch("SPDC beam " + b.name() + " is missing from " + space->describe());
    }
  }
  if (2 * params.max_pairs > space->cutoff()) {
    throw InvalidArgument("space cutoff " + std::to_string(space->cutoff()) + " cannot hold " +
                          std::to_string(params.max_pairs) + " pairs");
  }
  auto [state, discarded] = embed(spdc_local_state(params), std::move(space));
  return state.normalized();
}

StateVector pair_component(const StateVector& state, Beam i, int pairs) {
  const ModeLabel modes[] = {H(i), V(i)};
  return project_number(state, modes, pairs).normalized();
}

}  // namespace lotsim
