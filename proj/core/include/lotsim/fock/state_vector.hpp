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
#include <span>
#include <utility>
#include <vector>

#include "lotsim/fock/fock_space.hpp"

namespace lotsim {

using Complex = std::complex<double>;

/// Amplitudes with magnitude below this are dropped from sparse states.
inline constexpr double kPruneThreshold = 1e-14;
/// Tolerance on the norm of states flagged as normalized.
inline constexpr double kNormTolerance = 1e-12;

enum class NormFlag { normalized, unnormalized };

/// Sparse superposition over the occupation basis of a FockSpace.
///
/// Immutable. Entries are sorted by basis index, unique, and never smaller
/// than the prune threshold in magnitude.
class StateVector {
 public:
  using Entry = std::pair<Index, Complex>;

  /// Duplicate indices are summed. With NormFlag::normalized the norm must be 1
  /// within kNormTolerance.
  StateVector(SpacePtr space, std::vector<Entry> entries, NormFlag flag = NormFlag::unnormalized,
              double prune_threshold = kPruneThreshold);

  const SpacePtr& space() const { return space_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  NormFlag norm_flag() const { return flag_; }
  bool is_normalized() const { return flag_ == NormFlag::normalized; }

  Complex amplitude(Index i) const;
  Complex amplitude(std::span<const int> occupation) const;
  double norm() const;
  double squared_norm() const;

  /// Copy rescaled to unit norm. Throws ZeroProbability on the zero vector.
  StateVector normalized() const;
  StateVector scaled(Complex factor) const;

  /// <this|other>
  Complex inner(const StateVector& other) const;

 private:
  SpacePtr space_;
  std::vector<Entry> entries_;
  NormFlag flag_;
};

StateVector vacuum(SpacePtr space);

/// Unit-norm basis state. Throws InvalidArgument on a length mismatch or when the
/// occupations exceed the cutoff.
StateVector make_basis_state(SpacePtr space, std::span<const int> occupations);
StateVector make_basis_state(SpacePtr space, std::initializer_list<int> occupations);

/// Single photon in a superposition of the given modes: sum_k coeffs[k] |1_{modes[k]}>.
StateVector single_photon(SpacePtr space, std::span<const ModeLabel> modes, std::span<const Complex> coeffs);

/// Polarization qubit cos(theta)|H> + e^{i phase} sin(theta)|V> carried by one photon in `beam`.
StateVector polarized_photon(SpacePtr space, Beam beam, double theta, double phase = 0.0);

/// a + b on a common space.
StateVector add(const StateVector& a, const StateVector& b);

/// Product state on the concatenated mode list (a's modes first). The result's
/// cutoff is the sum of the input cutoffs so no amplitude is lost; the norm is
/// norm(a) * norm(b). Throws SpaceMismatch when the mode sets overlap.
StateVector tensor(const StateVector& a, const StateVector& b);

struct Truncation {
  StateVector state;        // unnormalized
  double discarded_weight;  // squared norm removed
};

/// Re-expresses `state` on `target`, which must contain every mode of the state's
/// space; extra modes are placed in vacuum. Components whose photon number exceeds
/// the target cutoff are dropped and their weight reported.
Truncation embed(const StateVector& state, SpacePtr target);

/// Keeps only the component with exactly `n` photons in total on `modes`.
StateVector project_number(const StateVector& state, std::span<const ModeLabel> modes, int n);

}  // namespace lotsim
