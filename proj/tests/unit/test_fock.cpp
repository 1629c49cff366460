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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "lotsim/error.hpp"
#include "lotsim/fock/density_operator.hpp"
#include "lotsim/fock/fock_space.hpp"
#include "lotsim/fock/operator.hpp"
#include "lotsim/fock/state_vector.hpp"
#include "lotsim/fock/text_io.hpp"
#include "lotsim/sources/spdc.hpp"
#include "support.hpp"

namespace lotsim {
namespace {

using testing::max_abs;

std::vector<ModeLabel> first_modes(std::size_t m) {
  std::vector<ModeLabel> all;
  for (std::uint16_t b = 1; all.size() < m; ++b) {
    all.push_back(H(Beam(b)));
    if (all.size() < m) all.push_back(V(Beam(b)));
  }
  return all;
}

// Number of occupation vectors over m modes with total <= n, counted by brute
// force enumeration.
std::size_t brute_count(std::size_t m, int n) {
  if (m == 0) return 1;
  std::size_t total = 0;
  for (int k = 0; k <= n; ++k) total += brute_count(m - 1, n - k);
  return total;
}

TEST(FockSpace, BasisIsABijectionAndHasTheExpectedSize) {
  for (std::size_t m = 1; m <= 10; ++m) {
    for (int cutoff = 0; cutoff <= 6; ++cutoff) {
      FockSpace space(first_modes(m), cutoff);
      ASSERT_EQ(space.dimension(), brute_count(m, cutoff)) << m << " modes, cutoff " << cutoff;
      for (Index i = 0; i < space.dimension(); ++i) {
        const auto occ = space.occupation(i);
        int total = 0;
        for (int n : occ) total += n;
        ASSERT_LE(total, cutoff);
        ASSERT_EQ(space.index_of(occ), i);
      }
    }
  }
}

TEST(FockSpace, OrderIsLexicographicWithFirstModeMostSignificant) {
  FockSpace space({H(kBeam1), H(kBeam2)}, 2);
  std::vector<Occupation> expected = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
  ASSERT_EQ(space.dimension(), expected.size());
  for (Index i = 0; i < expected.size(); ++i) EXPECT_EQ(space.occupation(i), expected[i]);
}

TEST(FockSpace, RejectsDuplicateModes) {
  EXPECT_THROW(FockSpace({H(kBeam1), H(kBeam1)}, 2), Error);
}

TEST(StateVector, AllZeroOccupationIsTheVacuum) {
  auto space = make_space(first_modes(4), 3);
  const auto v = make_basis_state(space, {0, 0, 0, 0});
  EXPECT_NEAR(std::abs(v.inner(vacuum(space)) - 1.0), 0.0, 1e-15);
  EXPECT_TRUE(v.is_normalized());
}

TEST(StateVector, OnePhotonIsOrthogonalToVacuum) {
  auto space = make_space(first_modes(4), 3);
  EXPECT_EQ(make_basis_state(space, {1, 0, 0, 0}).inner(vacuum(space)), Complex(0.0));
}

TEST(StateVector, OccupationAboveCutoffIsRejected) {
  auto space = make_space(first_modes(2), 3);
  EXPECT_THROW(make_basis_state(space, {2, 2}), Error);
  EXPECT_THROW(make_basis_state(space, {1, 0, 0}), Error);
}

TEST(StateVector, AmplitudesBelowThePruneThresholdAreDropped) {
  auto space = make_space(first_modes(2), 2);
  StateVector s(space, {{0, Complex(1.0)}, {1, Complex(1e-16)}});
  EXPECT_EQ(s.size(), 1u);
}

TEST(StateVector, NormalizedFlagRequiresUnitNorm) {
  auto space = make_space(first_modes(2), 2);
  EXPECT_THROW(StateVector(space, {{0, Complex(2.0)}}, NormFlag::normalized), InvalidArgument);
}

TEST(Tensor, VacuumTimesVacuumIsVacuum) {
  auto a = make_space({H(kBeam1), V(kBeam1)}, 2);
  auto b = make_space({H(kBeam2), V(kBeam2)}, 2);
  const auto t = tensor(vacuum(a), vacuum(b));
  EXPECT_EQ(t.space()->num_modes(), 4u);
  EXPECT_NEAR(std::abs(t.inner(vacuum(t.space()))), 1.0, 1e-15);
}

TEST(Tensor, ProductOfBasisStatesSetsBothOccupations) {
  auto a = make_space({H(kBeam1)}, 1);
  auto b = make_space({H(kBeam2)}, 1);
  const auto t = tensor(make_basis_state(a, {1}), make_basis_state(b, {1}));
  EXPECT_NEAR(std::abs(t.amplitude(std::vector<int>{1, 1})), 1.0, 1e-15);
  EXPECT_EQ(t.size(), 1u);
}

TEST(Tensor, OverlappingModesAreRejected) {
  auto a = make_space({H(kBeam1)}, 1);
  EXPECT_THROW(tensor(vacuum(a), vacuum(a)), SpaceMismatch);
}

TEST(Tensor, NormIsMultiplicative) {
  std::mt19937_64 rng(7);
  auto a = make_space({H(kBeam1), V(kBeam1)}, 2);
  auto b = make_space({H(kBeam2)}, 2);
  const auto x = testing::random_state(a, rng).scaled(0.7);
  const auto y = testing::random_state(b, rng).scaled(1.3);
  EXPECT_NEAR(tensor(x, y).norm(), 0.7 * 1.3, 1e-12);
}

TEST(Tensor, TwoSpdcStatesStayNormalized) {
  SpdcParams p1{0.1, 3, kBeam1, kBeam4};
  SpdcParams p2{0.1, 3, kBeam2, kBeam3};
  const auto t = tensor(spdc_local_state(p1), spdc_local_state(p2));
  // Reference: the squared norm summed entry by entry.
  double sq = 0.0;
  for (const auto& [i, a] : t.entries()) sq += std::norm(a);
  EXPECT_NEAR(sq, 1.0, 1e-12);
}

TEST(PartialTrace, KeepingEverythingLeavesTheStateUnchanged) {
  std::mt19937_64 rng(3);
  auto space = make_space(first_modes(3), 2);
  const auto rho = testing::random_density(space, rng);
  const auto same = partial_trace(rho, space->modes());
  EXPECT_LE(max_abs(same.dense() - rho.dense()), 1e-14);
}

TEST(PartialTrace, ProductStateFactorizes) {
  std::mt19937_64 rng(4);
  auto a = make_space({H(kBeam1), V(kBeam1)}, 2);
  auto b = make_space({H(kBeam2), V(kBeam2)}, 2);
  const auto x = testing::random_state(a, rng);
  const auto y = testing::random_state(b, rng);
  const auto rho = DensityOperator::from_pure(tensor(x, y));
  const auto reduced = partial_trace(rho, a->modes());
  // The reduced operator keeps the parent cutoff.
  ASSERT_EQ(reduced.space()->cutoff(), 4);
  const auto lifted = embed(x, reduced.space());
  ASSERT_NEAR(lifted.discarded_weight, 0.0, 1e-15);
  EXPECT_LE(max_abs(reduced.dense() - DensityOperator::from_pure(lifted.state).dense()), 1e-12);
}

TEST(PartialTrace, SingletReducesToTheMaximallyMixedPolarization) {
  auto space = make_space({H(kBeam1), V(kBeam1), H(kBeam4), V(kBeam4)}, 2);
  const double r = std::sqrt(0.5);
  const auto psi = add(make_basis_state(space, {1, 0, 0, 1}).scaled(r), make_basis_state(space, {0, 1, 1, 0}).scaled(-r));
  const auto reduced = partial_trace(DensityOperator::from_pure(psi), std::vector<ModeLabel>{H(kBeam1), V(kBeam1)});

  // Reference: the same reduction as an explicit 4x4 computation in the
  // (pol_1 x pol_4) product basis, indices (H,H),(H,V),(V,H),(V,V).
  Eigen::Vector4cd v(0.0, r, -r, 0.0);
  Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) expected(i, k) += v(2 * i + j) * std::conj(v(2 * k + j));

  const auto& rs = *reduced.space();
  const Index h = rs.index_of(std::vector<int>{1, 0});
  const Index vv = rs.index_of(std::vector<int>{0, 1});
  EXPECT_NEAR(std::abs(reduced.element(h, h) - expected(0, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(reduced.element(vv, vv) - expected(1, 1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(reduced.element(h, vv) - expected(0, 1)), 0.0, 1e-12);
  const auto eig = eigendecompose(reduced);
  EXPECT_NEAR(eig[0].value, 0.5, 1e-12);
  EXPECT_NEAR(eig[1].value, 0.5, 1e-12);
  for (std::size_t k = 2; k < eig.size(); ++k) EXPECT_NEAR(eig[k].value, 0.0, 1e-12);
}

TEST(PartialTrace, PreservesTraceOnRandomStates) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto space = make_space(first_modes(4), 3);
    const auto rho = testing::random_density(space, rng, 1 + trial % 4);
    const std::vector<ModeLabel> keep = {space->modes()[trial % 4], space->modes()[(trial + 1) % 4]};
    const auto reduced = partial_trace(rho, keep);
    EXPECT_NEAR(reduced.trace(), rho.trace(), 1e-12);
    EXPECT_GE(reduced.min_eigenvalue(), -1e-10);
  }
}

TEST(PartialTrace, UnknownModeIsRejected) {
  auto space = make_space(first_modes(2), 2);
  const auto rho = DensityOperator::from_pure(vacuum(space));
  EXPECT_THROW(partial_trace(rho, std::vector<ModeLabel>{H(kBeam3)}), InvalidArgument);
}

TEST(ApplyOperator, IdentityLeavesTheStateUnchanged) {
  std::mt19937_64 rng(5);
  auto space = make_space(first_modes(2), 2);
  const auto rho = testing::random_density(space, rng);
  EXPECT_LE(max_abs(apply_operator(Operator::identity(space), rho).dense() - rho.dense()), 1e-15);
  const auto psi = testing::random_state(space, rng);
  EXPECT_NEAR(std::abs(apply_operator(Operator::identity(space), psi).inner(psi)), 1.0, 1e-14);
}

TEST(ApplyOperator, VacuumProjectorOnVacuumKeepsWeightOne) {
  auto space = make_space(first_modes(1), 1);
  const auto rho = DensityOperator::from_pure(vacuum(space));
  const auto out = apply_operator(Operator::projector(vacuum(space)), rho);
  EXPECT_NEAR(out.trace(), 1.0, 1e-15);
  EXPECT_TRUE(out.is_normalized());
}

TEST(ApplyOperator, VacuumProjectorOnSuperpositionHalvesTheWeight) {
  auto space = make_space(first_modes(1), 1);
  const double r = std::sqrt(0.5);
  const auto psi = add(vacuum(space).scaled(r), make_basis_state(space, {1}).scaled(r));
  const auto out = apply_operator(Operator::projector(vacuum(space)), DensityOperator::from_pure(psi));
  EXPECT_NEAR(out.trace(), 0.5, 1e-15);
  EXPECT_EQ(out.trace_flag(), TraceFlag::subnormalized);
  EXPECT_NEAR(out.normalized().expectation(vacuum(space)), 1.0, 1e-15);
}

TEST(ApplyOperator, SpaceMismatchIsRejected) {
  auto a = make_space(first_modes(1), 1);
  auto b = make_space(first_modes(2), 1);
  EXPECT_THROW(apply_operator(Operator::identity(a), DensityOperator::from_pure(vacuum(b))), SpaceMismatch);
}

TEST(Operator, LadderOperatorsSatisfyTheCommutatorBelowTheCutoff) {
  auto space = make_space(first_modes(2), 4);
  const auto a = annihilation(space, H(kBeam1));
  const auto ad = creation(space, H(kBeam1));
  const Eigen::MatrixXcd comm = Eigen::MatrixXcd((a * ad).matrix()) - Eigen::MatrixXcd((ad * a).matrix());
  for (Index i = 0; i < space->dimension(); ++i) {
    const auto occ = space->occupation(i);
    if (occ[0] + occ[1] < 4) {
      EXPECT_NEAR(std::abs(comm(i, i) - 1.0), 0.0, 1e-12);
    }
  }
}

TEST(Fidelity, PureStateSelfFidelityIsOne) {
  std::mt19937_64 rng(8);
  auto space = make_space(first_modes(2), 1);
  const auto phi = testing::random_state(space, rng);
  EXPECT_NEAR(fidelity_pure(DensityOperator::from_pure(phi), phi), 1.0, 1e-12);
}

TEST(Fidelity, HalfVacuumHalfPhotonMixtureGivesOneHalf) {
  auto space = make_space({H(kBeam3), V(kBeam3)}, 1);
  const auto phi = polarized_photon(space, kBeam3, 0.3);
  const std::vector<std::pair<double, StateVector>> terms = {{0.5, vacuum(space)}, {0.5, phi}};
  EXPECT_NEAR(fidelity_pure(mixture(terms), phi), 0.5, 1e-12);
}

TEST(Fidelity, MaximallyMixedPolarizationGivesOneHalfForAnyTarget) {
  auto space = make_space({H(kBeam3), V(kBeam3)}, 1);
  const std::vector<std::pair<double, StateVector>> terms = {{0.5, make_basis_state(space, {1, 0})},
                                                             {0.5, make_basis_state(space, {0, 1})}};
  const auto rho = mixture(terms);
  for (double theta : {0.0, 0.4, 1.2, 2.9}) {
    for (double phase : {0.0, 0.8}) {
      const auto phi = polarized_photon(space, kBeam3, theta, phase);
      // Reference: the 2x2 computation with rho = I/2.
      Eigen::Vector2cd c(phi.amplitude(std::vector<int>{1, 0}), phi.amplitude(std::vector<int>{0, 1}));
      const double expected = (c.adjoint() * (0.5 * Eigen::Matrix2cd::Identity()) * c)(0, 0).real();
      EXPECT_NEAR(fidelity_pure(rho, phi), expected, 1e-12);
    }
  }
}

TEST(Fidelity, IsLinearInTheState) {
  std::mt19937_64 rng(9);
  auto space = make_space(first_modes(3), 2);
  const auto phi = testing::random_state(space, rng);
  const auto r1 = testing::random_density(space, rng);
  const auto r2 = testing::random_density(space, rng);
  for (double alpha : {0.0, 0.25, 0.6, 1.0}) {
    const auto mix = DensityOperator::from_dense(space, alpha * r1.dense() + (1.0 - alpha) * r2.dense());
    EXPECT_NEAR(fidelity_pure(mix, phi), alpha * fidelity_pure(r1, phi) + (1.0 - alpha) * fidelity_pure(r2, phi),
                1e-12);
  }
}

TEST(Fidelity, UnnormalizedInputsAreRejected) {
  auto space = make_space(first_modes(1), 1);
  const auto sub = apply_operator(Operator::projector(vacuum(space)),
                                  DensityOperator::from_dense(space, 0.5 * Eigen::MatrixXcd::Identity(2, 2)));
  EXPECT_THROW(fidelity_pure(sub, vacuum(space)), InvalidArgument);
}

TEST(Eigendecompose, PureStateHasASingleUnitEigenvalue) {
  std::mt19937_64 rng(10);
  auto space = make_space(first_modes(2), 2);
  const auto eig = eigendecompose(DensityOperator::from_pure(testing::random_state(space, rng)));
  EXPECT_NEAR(eig[0].value, 1.0, 1e-12);
  for (std::size_t k = 1; k < eig.size(); ++k) EXPECT_NEAR(eig[k].value, 0.0, 1e-12);
}

TEST(Eigendecompose, VacuumPhotonMixtureHasTwoHalfEigenvalues) {
  auto space = make_space({H(kBeam3), V(kBeam3)}, 2);
  const auto phi = polarized_photon(space, kBeam3, 0.9);
  const std::vector<std::pair<double, StateVector>> terms = {{0.5, vacuum(space)}, {0.5, phi}};
  const auto eig = eigendecompose(mixture(terms));
  EXPECT_NEAR(eig[0].value, 0.5, 1e-12);
  EXPECT_NEAR(eig[1].value, 0.5, 1e-12);
  for (std::size_t k = 2; k < eig.size(); ++k) EXPECT_NEAR(eig[k].value, 0.0, 1e-12);
}

TEST(Eigendecompose, RandomHermitianRoundTrips) {
  std::mt19937_64 rng(12);
  const Eigen::MatrixXcd a = testing::random_matrix(7, 7, rng);
  const Eigen::MatrixXcd h = a + a.adjoint();
  const auto e = eigendecompose_hermitian(h);
  for (Eigen::Index k = 1; k < e.values.size(); ++k) EXPECT_GE(e.values(k - 1), e.values(k));
  const Eigen::MatrixXcd back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  EXPECT_LE(max_abs(back - h), 1e-10);
}

TEST(Eigendecompose, NonHermitianInputIsRejected) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eigendecompose_hermitian(m), NumericalError);
}

TEST(DensityOperator, NonHermitianMatrixIsRejected) {
  auto space = make_space(first_modes(1), 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
  m(0, 1) = 0.3;
  EXPECT_THROW(DensityOperator::from_dense(space, m), NumericalError);
}

TEST(TextIo, StateRoundTrips) {
  std::mt19937_64 rng(13);
  auto space = make_space(first_modes(3), 2);
  const auto psi = testing::random_state(space, rng);
  std::istringstream in(to_text(psi));
  const auto back = read_state_text(in);
  EXPECT_NEAR(std::abs(back.inner(psi)), 1.0, 1e-12);
  EXPECT_EQ(back.space()->modes(), space->modes());
}

}  // namespace
}  // namespace lotsim
