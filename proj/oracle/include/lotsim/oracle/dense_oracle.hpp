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
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lotsim/experiment/scenario.hpp"
#include "lotsim/experiment/setup.hpp"

/// Brute-force reference implementation.
///
/// Everything here is computed on dense matrices over an explicitly enumerated
/// basis, with textbook formulas: sources by matrix exponential of the pair
/// generator, optics by permanents of the creation-operator map, detectors by
/// closed-form counting statistics. Only the configuration types are shared with
/// the optimized pipeline.
namespace lotsim::oracle {

using Occ = std::vector<int>;

struct DenseBasis {
  int modes = 0;
  int cutoff = 0;
  std::vector<Occ> states;
  std::map<Occ, int> index;

  int dimension() const { return static_cast<int>(states.size()); }
  /// -1 when absent.
  int find(const Occ& occ) const;
};

DenseBasis enumerate_basis(int modes, int cutoff);

/// Dense a_mode^dagger on the truncated basis (the top sector maps to zero).
Eigen::MatrixXcd creation_matrix(const DenseBasis& basis, int mode);

/// Fock-space matrix of the passive map a_i^dagger -> sum_j c(i, j) a_j^dagger,
/// <m|U|n> = perm(c[n-rows, m-cols]) / sqrt(prod n! prod m!).
Eigen::MatrixXcd fock_unitary(const Eigen::MatrixXcd& creation_map, const DenseBasis& basis);

std::complex<double> permanent(const Eigen::MatrixXcd& m);

/// exp(g (G - G^dagger))|0> on (iH, iV, jH, jV), evaluated at cutoff
/// 2 max_pairs + 2, truncated to max_pairs pairs and renormalized; vacuum
/// amplitude positive. Returned on the cutoff 2 max_pairs basis.
Eigen::VectorXcd spdc_state(double coupling, int max_pairs, const DenseBasis& basis, double* discarded = nullptr);

/// Norm of each n-pair component of spdc_state.
std::vector<double> spdc_amplitudes(double coupling, int max_pairs);

/// Outcome probabilities given n photons on the watched modes.
double threshold_click(int n, double efficiency);
double number_resolved(int k, int n, double efficiency);
double cascade_clicks(int clicks, int stages, int n, double efficiency);

struct Result {
  double probability = 0.0;
  double fidelity = 0.0;
  double vacuum_weight = 0.0;
  Eigen::MatrixXcd rho3;
  std::vector<Occ> rho3_basis;  ///< (nH, nV) of beam 3 per row
};

Result run(const SetupConfig& config, const Scenario& scenario);

/// Lagrange interpolating polynomial through (x_i, y_i), evaluated at 0.
double lagrange_at_zero(std::span<const double> x, std::span<const double> y);

/// Fidelity at each coupling (larger coupling = g, ratio kept), extrapolated in g^2.
double leading_order_fidelity(const SetupConfig& config, const Scenario& scenario, std::span<const double> couplings);

}  // namespace lotsim::oracle
