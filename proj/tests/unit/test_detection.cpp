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
#include <numbers>
#include <random>

#include "lotsim/detection/conditioning.hpp"
#include "lotsim/detection/detector.hpp"
#include "lotsim/error.hpp"
#include "lotsim/experiment/setup.hpp"
#include "lotsim/optics/elements.hpp"
#include "lotsim/optics/mode_transform.hpp"
#include "lotsim/oracle/dense_oracle.hpp"
#include "support.hpp"

namespace lotsim {
namespace {

using testing::max_abs;

double outcome(const DetectorModel& d, const std::string& label, const StateVector& s) {
  const NamedDetector nd{"d", d};
  return outcome_probability(s, {{"d", label}}, std::span<const NamedDetector>(&nd, 1));
}

std::vector<DetectorModel> all_models() {
  std::vector<DetectorModel> out;
  for (const DetectorKind& k : {DetectorKind{Threshold{}}, DetectorKind{NumberResolving{}}, DetectorKind{Cascade{1}},
                                DetectorKind{Cascade{2}}, DetectorKind{Cascade{3}}}) {
    for (double eta : {1.0, 0.6, 0.0}) {
      out.push_back(DetectorModel::on_beam(kBeam1, k, eta));
      out.push_back(DetectorModel::on_mode(V(kBeam2), k, eta));
    }
  }
  return out;
}

TEST(Povm, ThresholdOnVacuumNeverClicks) {
  auto space = make_space(beam_modes(kBeam1), 3);
  EXPECT_NEAR(outcome(DetectorModel::on_beam(kBeam1), "no_click", vacuum(space)), 1.0, 1e-15);
}

TEST(Povm, ThresholdEfficiencyScalesTheOnePhotonClickProbability) {
  auto space = make_space(beam_modes(kBeam1), 3);
  const auto photon = make_basis_state(space, {0, 1});
  EXPECT_NEAR(outcome(DetectorModel::on_beam(kBeam1), "click", photon), 1.0, 1e-15);
  EXPECT_NEAR(outcome(DetectorModel::on_beam(kBeam1, Threshold{}, 0.5), "click", photon), 0.5, 1e-15);
}

TEST(Povm, TwoStageCascadeResolvesTwoPhotonsHalfTheTime) {
  auto space = make_space({H(kBeam1)}, 2);
  const auto two = make_basis_state(space, {2});
  const double p = outcome(DetectorModel::on_mode(H(kBeam1), Cascade{2}), "clicks=2", two);
  // Reference: |2,0> through a balanced splitter by the permanent formula;
  // both stages fire on the |1,1> output.
  const auto basis = oracle::enumerate_basis(2, 2);
  const Eigen::MatrixXcd u = oracle::fock_unitary(beamsplitter_creation_map(0.5, 0.0), basis);
  const double ref = std::norm(u(basis.find({1, 1}), basis.find({2, 0})));
  EXPECT_NEAR(p, ref, 1e-14);
  EXPECT_NEAR(p, oracle::cascade_clicks(2, 2, 2, 1.0), 1e-14);
}

TEST(Povm, OneStageCascadeEqualsThreshold) {
  std::mt19937_64 rng(41);
  auto space = make_space(beam_modes(kBeam1), 4);
  for (double eta : {1.0, 0.7, 0.2}) {
    const auto s = testing::random_state(space, rng);
    EXPECT_NEAR(outcome(DetectorModel::on_beam(kBeam1, Cascade{1}, eta), "clicks=1", s),
                outcome(DetectorModel::on_beam(kBeam1, Threshold{}, eta), "click", s), 1e-12);
  }
}

TEST(Povm, CascadeStatisticsMatchTheClosedForm) {
  auto space = make_space({H(kBeam1)}, 6);
  for (int stages : {2, 3, 4}) {
    for (double eta : {1.0, 0.8}) {
      for (int n = 0; n <= 6; ++n) {
        const auto s = make_basis_state(space, {n});
        for (int c = 0; c <= stages; ++c) {
          EXPECT_NEAR(outcome(DetectorModel::on_mode(H(kBeam1), Cascade{stages}, eta),
                              "clicks=" + std::to_string(c), s),
                      oracle::cascade_clicks(c, stages, n, eta), 1e-12)
              << stages << " " << eta << " " << n << " " << c;
        }
      }
    }
  }
}

TEST(Povm, NumberResolvingMatchesTheBinomialLaw) {
  auto space = make_space({H(kBeam1)}, 5);
  for (int n = 0; n <= 5; ++n) {
    for (int k = 0; k <= n; ++k) {
      EXPECT_NEAR(outcome(DetectorModel::on_mode(H(kBeam1), NumberResolving{}, 0.7), "n=" + std::to_string(k),
                          make_basis_state(space, {n})),
                  oracle::number_resolved(k, n, 0.7), 1e-12);
    }
  }
}

TEST(Povm, EveryModelIsCompleteAndPositive) {
  for (const auto& d : all_models()) {
    const auto elements = povm(d, 4);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(elements.front().op.space()->dimension(),
                                                  elements.front().op.space()->dimension());
    for (const auto& e : elements) {
      const Eigen::MatrixXcd m(e.op.matrix());
      sum += m;
      EXPECT_GE(eigendecompose_hermitian(m).values.minCoeff(), -1e-12) << kind_name(d.kind) << " " << e.label;
    }
    EXPECT_LE(max_abs(sum - Eigen::MatrixXcd::Identity(sum.rows(), sum.cols())), 1e-10) << kind_name(d.kind);
  }
}

TEST(Povm, OutcomeProbabilitiesSumToOneOnRandomStates) {
  std::mt19937_64 rng(42);
  auto space = make_space({H(kBeam1), V(kBeam1), H(kBeam2), V(kBeam2)}, 4);
  for (const auto& d : all_models()) {
    const auto s = testing::random_state(space, rng);
    double total = 0.0;
    for (const auto& label : d.outcome_labels(4)) total += outcome(d, label, s);
    EXPECT_NEAR(total, 1.0, 1e-10) << kind_name(d.kind);
  }
}

TEST(DetectorModel, InvalidModelsAreRejected) {
  EXPECT_THROW(DetectorModel::on_beam(kBeam1, Threshold{}, 1.5).validate(), InvalidArgument);
  EXPECT_THROW(DetectorModel::on_beam(kBeam1, Cascade{0}).validate(), InvalidArgument);
}

TEST(Condition, EmptyPatternLeavesTheStateUnchanged) {
  std::mt19937_64 rng(43);
  auto space = make_space(beam_modes(kBeam3), 2);
  const auto rho = testing::random_density(space, rng);
  const auto c = condition(rho, {}, {});
  EXPECT_NEAR(c.probability, 1.0, 1e-14);
  EXPECT_LE(max_abs(c.state.dense() - rho.dense()), 1e-14);
}

TEST(Condition, ClickOnHalfPhotonSuperpositionSelectsThePhoton) {
  // (|0>_1|0>_3 + |1>_1|1>_3)/sqrt(2); the partner mode carries the record.
  auto space = make_space({H(kBeam1), H(kBeam3)}, 2);
  const double r = std::sqrt(0.5);
  const auto s = add(vacuum(space).scaled(r), make_basis_state(space, {1, 1}).scaled(r));
  const std::vector<NamedDetector> dets = {{"d", DetectorModel::on_mode(H(kBeam1))}};
  const auto c = condition(s, {{"d", "click"}}, dets);
  EXPECT_NEAR(c.probability, 0.5, 1e-15);
  EXPECT_NEAR(c.state.expectation(make_basis_state(c.state.space(), {1})), 1.0, 1e-14);
}

TEST(Condition, ZeroProbabilityIsReportedDistinctly) {
  auto space = make_space({H(kBeam1), H(kBeam3)}, 2);
  const std::vector<NamedDetector> dets = {{"d", DetectorModel::on_mode(H(kBeam1))}};
  EXPECT_THROW(condition(vacuum(space), {{"d", "click"}}, dets), ZeroProbability);
}

TEST(Condition, OverlappingDetectorsAreRejected) {
  auto space = make_space(beam_modes(kBeam1), 2);
  const std::vector<NamedDetector> dets = {{"a", DetectorModel::on_beam(kBeam1)},
                                           {"b", DetectorModel::on_mode(H(kBeam1))}};
  EXPECT_THROW(condition(vacuum(space), {}, dets), InvalidArgument);
}

TEST(Condition, UnknownDetectorInPatternIsRejected) {
  auto space = make_space(beam_modes(kBeam1), 2);
  const std::vector<NamedDetector> dets = {{"a", DetectorModel::on_beam(kBeam1)}};
  EXPECT_THROW(condition(vacuum(space), {{"z", "click"}}, dets), InvalidArgument);
}

TEST(Condition, DetectorOrderDoesNotMatter) {
  std::mt19937_64 rng(44);
  auto space = make_space({H(kBeam1), V(kBeam1), H(kBeam2), V(kBeam2), H(kBeam3), V(kBeam3)}, 3);
  const auto rho = testing::random_density(space, rng, 4);
  std::vector<NamedDetector> dets = {{"a", DetectorModel::on_beam(kBeam1, Threshold{}, 0.8)},
                                     {"b", DetectorModel::on_beam(kBeam2, Cascade{2}, 0.9)}};
  const OutcomePattern pattern = {{"a", "click"}, {"b", "clicks=1"}};
  const auto first = condition(rho, pattern, dets);
  std::swap(dets[0], dets[1]);
  const auto second = condition(rho, pattern, dets);
  EXPECT_NEAR(first.probability, second.probability, 1e-12);
  EXPECT_LE(max_abs(first.state.dense() - second.state.dense()), 1e-10);
}

TEST(Condition, EfficienciesComposeAlongOneLossPath) {
  std::mt19937_64 rng(45);
  const ModeLabel loss = H(Beam::loss_for(kBeam1));
  auto space = make_space({H(kBeam1), H(kBeam3), loss}, 3);
  auto base = make_space({H(kBeam1), H(kBeam3)}, 3);
  const auto s = testing::random_state(base, rng);
  const double eta1 = 0.7, eta2 = 0.6;
  // Explicit first loss stage, then a detector with the second efficiency.
  const auto embedded = embed(s, space).state;
  const auto lossy = apply(beamsplitter(eta1, 0.0, H(kBeam1), loss).transform(), embedded);
  const std::vector<NamedDetector> two_step = {{"d", DetectorModel::on_mode(H(kBeam1), Threshold{}, eta2)}};
  const std::vector<NamedDetector> one_step = {{"d", DetectorModel::on_mode(H(kBeam1), Threshold{}, eta1 * eta2)}};
  const auto a = condition(lossy, {{"d", "click"}}, two_step);
  const auto b = condition(s, {{"d", "click"}}, one_step);
  EXPECT_NEAR(a.probability, b.probability, 1e-10);
  EXPECT_LE(max_abs(a.state.dense() - b.state.dense()), 1e-10);
}

TEST(Condition, ThreefoldPatternMatchesTheDenseOracle) {
  SetupConfig cfg;
  cfg.cutoff = 4;
  cfg.coupling_I = cfg.coupling_II = 0.05;
  const Circuit circuit = build_circuit(cfg);
  const auto global = prepare_global_state(cfg, circuit);
  const OutcomePattern pattern = {{"p", "click"}, {"f1", "click"}, {"f2", "click"}};
  const double p = outcome_probability(global, pattern, circuit.detectors);
  EXPECT_NEAR(p, oracle::run(cfg, Threefold{}).probability, 1e-10);
}

TEST(Qnd, ZeroPhotonsOnVacuum) {
  auto space = make_space(beam_modes(kBeam3), 2);
  const auto c = qnd_total_number(DensityOperator::from_pure(vacuum(space)), kBeam3, 0);
  EXPECT_NEAR(c.probability, 1.0, 1e-15);
  EXPECT_NEAR(c.state.expectation(vacuum(space)), 1.0, 1e-15);
}

TEST(Qnd, OnePhotonRemovesTheVacuumFromTheHalfMixture) {
  auto space = make_space(beam_modes(kBeam3), 2);
  const auto phi = polarized_photon(space, kBeam3, 0.7, 0.3);
  const std::vector<std::pair<double, StateVector>> terms = {{0.5, vacuum(space)}, {0.5, phi}};
  const auto c = qnd_total_number(mixture(terms), kBeam3, 1);
  EXPECT_NEAR(c.probability, 0.5, 1e-14);
  EXPECT_NEAR(fidelity_pure(c.state, phi), 1.0, 1e-14);
  EXPECT_EQ(c.state.space()->modes(), space->modes());
}

TEST(Qnd, CommutesWithPolarizationRotations) {
  std::mt19937_64 rng(46);
  auto space = make_space({H(kBeam3), V(kBeam3), H(kBeam2)}, 3);
  const auto rho = testing::random_density(space, rng, 3);
  for (int trial = 0; trial < 4; ++trial) {
    const double angle = std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng);
    const auto r = lift(polarization_rotation(kBeam3, angle), space);
    const auto before = qnd_total_number(apply_operator(r, rho), kBeam3, 1);
    const auto after = qnd_total_number(rho, kBeam3, 1);
    EXPECT_NEAR(before.probability, after.probability, 1e-10);
    EXPECT_LE(max_abs(before.state.dense() - apply_operator(r, after.state).dense()), 1e-10);
  }
}

TEST(Qnd, ZeroProbabilityIsReportedDistinctly) {
  auto space = make_space(beam_modes(kBeam3), 2);
  EXPECT_THROW(qnd_total_number(DensityOperator::from_pure(vacuum(space)), kBeam3, 1), ZeroProbability);
}

}  // namespace
}  // namespace lotsim
