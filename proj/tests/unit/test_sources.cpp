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

#include "lotsim/error.hpp"
#include "lotsim/fock/density_operator.hpp"
#include "lotsim/optics/mode_transform.hpp"
#include "lotsim/oracle/dense_oracle.hpp"
#include "lotsim/sources/spdc.hpp"
#include "support.hpp"

namespace lotsim {
namespace {

const std::vector<ModeLabel> kModes14 = {H(kBeam1), V(kBeam1), H(kBeam4), V(kBeam4)};

SpdcParams params(double g, int max_pairs, double guard = 1e-6) { return {g, max_pairs, kBeam1, kBeam4, guard}; }

StateVector rotate_both(const StateVector& s, const Eigen::Matrix2cd& u) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m.block(0, 0, 2, 2) = u;
  m.block(2, 2, 2, 2) = u;
  return apply(ModeTransform(kModes14, m), s);
}

TEST(SpdcCoefficients, ZeroCouplingIsVacuum) {
  const auto c = spdc_coefficients(params(0.0, 3));
  ASSERT_EQ(c.amplitudes.size(), 4u);
  EXPECT_NEAR(c.amplitudes[0], 1.0, 1e-15);
  for (std::size_t n = 1; n < c.amplitudes.size(); ++n) EXPECT_NEAR(c.amplitudes[n], 0.0, 1e-15);
}

TEST(SpdcCoefficients, TwoToOnePairRatioIsLinearInCouplingWithTheSeriesConstant) {
  // Reference: second-order expansion exp(gK)|0> ~ |0> + g G|0> + g^2/2 G^2|0>
  // with G built from dense creation matrices at cutoff 4.
  const auto basis = oracle::enumerate_basis(4, 4);
  const Eigen::MatrixXcd g_op = oracle::creation_matrix(basis, 0) * oracle::creation_matrix(basis, 3) -
                                oracle::creation_matrix(basis, 1) * oracle::creation_matrix(basis, 2);
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(basis.dimension());
  vac(basis.find({0, 0, 0, 0})) = 1.0;
  const Eigen::VectorXcd one = g_op * vac;
  const Eigen::VectorXcd two = g_op * one;
  const double constant = 0.5 * two.norm() / one.norm();

  for (double g : {1e-3, 2e-3}) {
    const auto c = spdc_coefficients(params(g, 3));
    EXPECT_NEAR(c.amplitudes[2] / c.amplitudes[1] / g, constant, 1e-4 * constant) << g;
  }
}

TEST(SpdcCoefficients, MatchTheDenseMatrixExponential) {
  const auto c = spdc_coefficients(params(0.1, 2, 1e-3));
  const auto ref = oracle::spdc_amplitudes(0.1, 2);
  ASSERT_EQ(c.amplitudes.size(), ref.size());
  for (std::size_t n = 0; n < ref.size(); ++n) EXPECT_NEAR(c.amplitudes[n], ref[n], 1e-10) << n;
}

TEST(SpdcCoefficients, SquaresSumToAtMostOne) {
  for (double g : {0.01, 0.05, 0.1}) {
    const auto c = spdc_coefficients(params(g, 3));
    double s = 0.0;
    for (double a : c.amplitudes) s += a * a;
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_GT(c.amplitudes[0], 0.0);
    EXPECT_LE(c.discarded_weight, 1e-6);
  }
}

TEST(SpdcCoefficients, OnePairRatioIncreasesWithCoupling) {
  double last = -1.0;
  for (double g = 0.025; g < 0.5; g += 0.025) {
    const auto c = spdc_coefficients(params(g, 4, 1.0));
    const double r = c.amplitudes[1] / c.amplitudes[0];
    EXPECT_GT(r, last) << g;
    last = r;
  }
}

TEST(SpdcParams, OutOfRangeCouplingIsRejected) {
  EXPECT_THROW(spdc_coefficients(params(1.0, 2)), InvalidArgument);
  EXPECT_THROW(spdc_coefficients(params(-0.1, 2)), InvalidArgument);
}

TEST(SpdcParams, ExcessTruncationWeightIsRejected) {
  EXPECT_THROW(spdc_coefficients(params(0.3, 1)), TruncationError);
}

TEST(SpdcState, ZeroCouplingIsVacuum) {
  auto space = make_space(kModes14, 4);
  const auto s = spdc_state(params(0.0, 2), space);
  EXPECT_NEAR(std::abs(s.inner(vacuum(space))), 1.0, 1e-15);
}

TEST(SpdcState, MissingModesAreRejected) {
  auto space = make_space({H(kBeam1), V(kBeam1)}, 4);
  EXPECT_THROW(spdc_state(params(0.1, 2), space), SpaceMismatch);
}

TEST(SpdcState, OnePairComponentIsTheSinglet) {
  auto space = make_space(kModes14, 6);
  const auto s = spdc_state(params(0.05, 3), space);
  const auto one = pair_component(s, kBeam1, 1);
  const double r = std::sqrt(0.5);
  const auto singlet =
      add(make_basis_state(space, {1, 0, 0, 1}).scaled(r), make_basis_state(space, {0, 1, 1, 0}).scaled(-r))
          .normalized();
  EXPECT_NEAR(fidelity_pure(DensityOperator::from_pure(one), singlet), 1.0, 1e-12);
  // Sign convention: positive overlap with the singlet once A0 > 0.
  EXPECT_GT(one.inner(singlet).real(), 0.0);
}

TEST(SpdcState, TwoPairComponentIsRotationallyInvariant) {
  std::mt19937_64 rng(31);
  auto space = make_space(kModes14, 6);
  const auto two = pair_component(spdc_state(params(0.05, 3), space), kBeam1, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::Matrix2cd u = testing::random_unitary(2, rng);
    EXPECT_NEAR(std::abs(rotate_both(two, u).inner(two)), 1.0, 1e-10);
  }
}

TEST(SpdcState, WholeStateIsRotationallyInvariant) {
  std::mt19937_64 rng(32);
  auto space = make_space(kModes14, 6);
  for (double g : {0.05, 0.15, 0.3}) {
    const auto s = spdc_state(params(g, 3, 1.0), space);
    for (int trial = 0; trial < 3; ++trial) {
      // The n-pair term picks up det(u)^n, so only SU(2) leaves the sum invariant.
      Eigen::Matrix2cd u = testing::random_unitary(2, rng);
      u /= std::sqrt(u.determinant());
      EXPECT_GE(std::norm(rotate_both(s, u).inner(s)), 1.0 - 1e-10) << g;
    }
  }
}

TEST(SpdcState, PhotonsArePairCorrelated) {
  auto space = make_space(kModes14, 6);
  const auto s = spdc_state(params(0.2, 3, 1.0), space);
  for (const auto& [i, a] : s.entries()) {
    const auto occ = space->occupation(i);
    EXPECT_EQ(occ[0] + occ[1], occ[2] + occ[3]);
    EXPECT_EQ(occ[0], occ[3]);
    EXPECT_EQ(occ[1], occ[2]);
  }
}

TEST(SpdcState, AgreesWithTheDenseOracleAmplitudeByAmplitude) {
  auto space = make_space(kModes14, 4);
  const auto s = spdc_state(params(0.05, 2), space);
  const auto basis = oracle::enumerate_basis(4, 4);
  const Eigen::VectorXcd ref = oracle::spdc_state(0.05, 2, basis);
  for (int k = 0; k < basis.dimension(); ++k) {
    EXPECT_NEAR(std::abs(s.amplitude(basis.states[static_cast<std::size_t>(k)]) - ref(k)), 0.0, 1e-12);
  }
}

}  // namespace
}  // namespace lotsim
