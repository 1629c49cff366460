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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "lotsim/analysis/baseline.hpp"
#include "lotsim/analysis/report.hpp"
#include "lotsim/analysis/tomography.hpp"
#include "lotsim/error.hpp"
#include "lotsim/fock/operator.hpp"
#include "lotsim/optics/mode_transform.hpp"
#include "support.hpp"

namespace lotsim {
namespace {

using testing::max_abs;

SpacePtr beam3(int cutoff = 2) { return make_space(beam_modes(kBeam3), cutoff); }

DensityOperator half_mixture(const StateVector& phi) {
  const std::vector<std::pair<double, StateVector>> terms = {{0.5, vacuum(phi.space())}, {0.5, phi}};
  return mixture(terms);
}

std::size_t index_of(const TomographySetting& s, const std::string& outcome) {
  const auto o = s.outcomes();
  return static_cast<std::size_t>(std::find(o.begin(), o.end(), outcome) - o.begin());
}

TEST(TomographySettings, DefaultSetIsInformationallyCompleteButPolarizationOnlyIsNot) {
  EXPECT_TRUE(informationally_complete(default_tomography_settings()));
  EXPECT_FALSE(informationally_complete(polarization_settings()));
  for (const auto& s : polarization_settings()) EXPECT_LT(index_of(s, "no_click"), s.outcomes().size());
}

TEST(TomographyProbabilities, HorizontalPhotonInTheHvBasis) {
  auto space = beam3();
  const auto t = tomography_probabilities(DensityOperator::from_pure(make_basis_state(space, {1, 0})),
                                          polarization_settings());
  const auto& s = t.settings[0];
  ASSERT_EQ(s.basis, TomographyBasis::hv);
  EXPECT_NEAR(t.values[0][index_of(s, "plus")], 1.0, 1e-12);
  EXPECT_NEAR(t.values[0][index_of(s, "minus")], 0.0, 1e-12);
  EXPECT_NEAR(t.values[0][index_of(s, "no_click")], 0.0, 1e-12);
}

TEST(TomographyProbabilities, HalfMixtureShowsTheVacuumAsNoClick) {
  auto space = beam3();
  const auto t = tomography_probabilities(half_mixture(make_basis_state(space, {1, 0})), polarization_settings());
  const auto& s = t.settings[0];
  EXPECT_NEAR(t.values[0][index_of(s, "plus")], 0.5, 1e-12);
  EXPECT_NEAR(t.values[0][index_of(s, "minus")], 0.0, 1e-12);
  EXPECT_NEAR(t.values[0][index_of(s, "no_click")], 0.5, 1e-12);
}

TEST(TomographyProbabilities, RowsSumToOne) {
  std::mt19937_64 rng(51);
  const auto t = tomography_probabilities(testing::random_density(beam3(3), rng, 4), default_tomography_settings());
  for (const auto& row : t.values) {
    double s = 0.0;
    for (double v : row) {
      s += v;
      EXPECT_GE(v, -1e-12);
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(TomographyProbabilities, DiagonalBasisIsTheHvBasisOfTheRotatedState) {
  std::mt19937_64 rng(52);
  auto space = beam3();
  const auto rho = testing::random_density(space, rng, 3);
  const auto rot = lift(polarization_rotation(kBeam3, -std::numbers::pi / 4), space);
  const auto settings = polarization_settings();
  const auto direct = tomography_probabilities(rho, settings);
  const auto rotated = tomography_probabilities(apply_operator(rot, rho), settings);
  for (std::size_t k = 0; k < direct.values[1].size(); ++k) {
    EXPECT_NEAR(direct.values[1][k], rotated.values[0][k], 1e-12) << settings[1].outcomes()[k];
  }
}

TEST(SampleCounts, CertainOutcomeTakesEveryShot) {
  auto space = beam3();
  const auto t = tomography_probabilities(DensityOperator::from_pure(make_basis_state(space, {1, 0})),
                                          default_tomography_settings());
  const auto c = sample_counts(t, 1000, 5);
  EXPECT_EQ(c.counts[0][index_of(t.settings[0], "plus")], 1000);
}

TEST(SampleCounts, FixedSeedIsReproducible) {
  auto space = beam3();
  const auto t = tomography_probabilities(half_mixture(polarized_photon(space, kBeam3, 0.4)),
                                          default_tomography_settings());
  EXPECT_EQ(sample_counts(t, 5000, 9).counts, sample_counts(t, 5000, 9).counts);
  EXPECT_NE(sample_counts(t, 5000, 9).counts, sample_counts(t, 5000, 10).counts);
}

TEST(SampleCounts, FrequenciesConvergeToProbabilities) {
  auto space = beam3();
  const auto t = tomography_probabilities(half_mixture(polarized_photon(space, kBeam3, 0.4)),
                                          default_tomography_settings());
  const auto f = frequencies(sample_counts(t, 1000000, 2024));
  double worst = 0.0;
  for (std::size_t s = 0; s < t.values.size(); ++s)
    for (std::size_t k = 0; k < t.values[s].size(); ++k) worst = std::max(worst, std::abs(f.values[s][k] - t.values[s][k]));
  EXPECT_LE(worst, 5e-3);
}

TEST(Reconstruct, LinearInversionIsTheIdentityOnTheSector) {
  auto space = beam3(1);
  const double r = std::sqrt(0.5);
  const Complex i(0.0, 1.0);
  const auto v = vacuum(space);
  const auto h = make_basis_state(space, {1, 0});
  const auto vv = make_basis_state(space, {0, 1});
  const std::vector<StateVector> states = {v, h, vv, add(v.scaled(r), h.scaled(r)), add(v.scaled(r), h.scaled(i * r)),
                                           add(v.scaled(r), vv.scaled(r)), add(v.scaled(r), vv.scaled(i * r)),
                                           add(h.scaled(r), vv.scaled(r)), add(h.scaled(r), vv.scaled(i * r))};
  for (const auto& s : states) {
    const auto rho = DensityOperator::from_pure(s);
    const Eigen::MatrixXcd back = linear_inversion(tomography_probabilities(rho, default_tomography_settings()));
    EXPECT_LE(max_abs(back - sector_state(rho).dense()), 1e-9);
  }
}

TEST(Reconstruct, IncompleteSettingsAreRejected) {
  auto space = beam3();
  const auto t = tomography_probabilities(DensityOperator::from_pure(vacuum(space)), polarization_settings());
  EXPECT_THROW(reconstruct(t), NumericalError);
}

TEST(Reconstruct, ExactHalfMixtureRecoversTheVacuumWeight) {
  auto space = beam3();
  const auto rho = half_mixture(polarized_photon(space, kBeam3, 0.9, 0.2));
  const auto r = reconstruct(tomography_probabilities(rho, default_tomography_settings()), &rho);
  EXPECT_NEAR(r.vacuum_weight_estimate, 0.5, 1e-6);
  EXPECT_NEAR(r.rho_hat.trace(), 1.0, 1e-10);
  EXPECT_GE(r.rho_hat.min_eigenvalue(), -1e-10);
  EXPECT_EQ(r.shots_used, 0);
}

TEST(Reconstruct, ExactPureStateRoundTrips) {
  auto space = beam3();
  const auto rho = DensityOperator::from_pure(polarized_photon(space, kBeam3, 1.1, 0.6));
  const auto r = reconstruct(tomography_probabilities(rho, default_tomography_settings()), &rho);
  ASSERT_TRUE(r.fidelity_to_truth.has_value());
  EXPECT_GE(*r.fidelity_to_truth, 1.0 - 1e-9);
}

TEST(Reconstruct, SampledHalfMixtureRecoversTheVacuumWeight) {
  auto space = beam3();
  const auto rho = half_mixture(polarized_photon(space, kBeam3, 0.3));
  const auto exact = tomography_probabilities(rho, default_tomography_settings());
  const auto r = reconstruct(sample_counts(exact, 100000, 77), &rho);
  EXPECT_NEAR(r.vacuum_weight_estimate, 0.5, 0.01);
  EXPECT_EQ(r.shots_used, 100000);
  EXPECT_NEAR(r.rho_hat.trace(), 1.0, 1e-10);
  EXPECT_GE(r.rho_hat.min_eigenvalue(), -1e-10);
}

TEST(Reconstruct, MultiphotonWeightIsReportedAsLeakage) {
  auto space = beam3();
  const std::vector<std::pair<double, StateVector>> terms = {{0.7, polarized_photon(space, kBeam3, 0.2)},
                                                             {0.3, make_basis_state(space, {2, 0})}};
  const auto rho = mixture(terms);
  const auto r = reconstruct(tomography_probabilities(rho, default_tomography_settings()), &rho);
  // Threshold data cannot separate |2,0> from one H photon in every setting, so
  // the deficit flags the contamination without recovering its full weight.
  EXPECT_GT(r.leakage_estimate, 1e-3);
  EXPECT_LT(r.leakage_estimate, 0.3);

  const auto clean = half_mixture(polarized_photon(space, kBeam3, 0.2));
  const auto c = reconstruct(tomography_probabilities(clean, default_tomography_settings()), &clean);
  EXPECT_NEAR(c.leakage_estimate, 0.0, 1e-10);
}

TEST(Reconstruct, MoreShotsGiveSmallerErrors) {
  auto space = beam3();
  const auto rho = half_mixture(polarized_photon(space, kBeam3, 0.3, 0.5));
  const auto exact = tomography_probabilities(rho, default_tomography_settings());
  auto median_error = [&](std::int64_t shots) {
    std::vector<double> d;
    for (std::uint64_t seed = 0; seed < 20; ++seed) d.push_back(*reconstruct(sample_counts(exact, shots, seed), &rho).trace_distance_to_truth);
    std::nth_element(d.begin(), d.begin() + 10, d.end());
    return d[10];
  };
  EXPECT_LT(median_error(100000), median_error(1000));
}

TEST(Metrics, FidelityAndTraceDistanceOfKnownPairs) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2), b = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  EXPECT_NEAR(uhlmann_fidelity(a, a), 1.0, 1e-12);
  EXPECT_NEAR(uhlmann_fidelity(a, b), 0.0, 1e-12);
  EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-12);
  const Eigen::MatrixXcd mixed = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_NEAR(uhlmann_fidelity(a, mixed), 0.5, 1e-12);
  EXPECT_NEAR(trace_distance(a, mixed), 0.5, 1e-12);
}

TEST(ClassicalBaseline, AnalyticValueIsOneHalf) {
  auto space = beam3(1);
  EXPECT_EQ(classical_baseline(polarized_photon(space, kBeam3, 0.2), 10, 1).analytic, 0.5);
}

TEST(ClassicalBaseline, MonteCarloConvergesToOneHalf) {
  auto space = beam3(1);
  const auto b = classical_baseline(polarized_photon(space, kBeam3, 0.2), 1000000, 12345);
  EXPECT_NEAR(b.monte_carlo, 0.5, 2e-3);
  EXPECT_EQ(b.trials, 1000000);
}

TEST(ClassicalBaseline, DoesNotDependOnTheTarget) {
  auto space = beam3(1);
  const auto a = classical_baseline(polarized_photon(space, kBeam3, 0.0), 200000, 3);
  const auto b = classical_baseline(polarized_photon(space, kBeam3, 1.0, 0.7), 200000, 4);
  EXPECT_NEAR(a.monte_carlo, b.monte_carlo, 4.0 * std::hypot(a.standard_error, b.standard_error));
}

TEST(ClassicalBaseline, RejectsNonPhotonTargets) {
  auto space = beam3(1);
  EXPECT_THROW(classical_baseline(vacuum(space), 10, 1), InvalidArgument);
}

ScenarioResult fake_result(const std::string& id, double f) {
  auto space = beam3(1);
  const auto phi = polarized_photon(space, kBeam3, 0.0);
  ScenarioResult r{id, 0.02, 0.02, DensityOperator::from_pure(phi), 1e-7, f, {}, std::nullopt};
  r.weights.single_photon = 1.0;
  return r;
}

TEST(Report, ThreefoldDoesNotExceedTheBaselineButFourfoldDoes) {
  EXPECT_FALSE(exceeds_classical_baseline(fake_result("threefold", 0.5)));
  EXPECT_FALSE(exceeds_classical_baseline(fake_result("threefold", 0.5004)));
  EXPECT_TRUE(exceeds_classical_baseline(fake_result("fourfold", 0.999)));
}

TEST(Report, EmptySectionsAreOmitted) {
  Report r;
  r.scenarios.push_back(fake_result("fourfold", 0.999));
  const auto j = nlohmann::json::parse(report_json(r));
  EXPECT_EQ(j.at("schema_version"), kReportSchemaVersion);
  EXPECT_TRUE(j.contains("scenarios"));
  for (const char* key : {"metadata", "classical_baseline", "coupling_ratio_sweep", "input_independence", "tomography"}) {
    EXPECT_FALSE(j.contains(key)) << key;
  }
  EXPECT_FALSE(j.at("scenarios")[0].contains("leading_order"));
  EXPECT_TRUE(j.at("scenarios")[0].at("exceeds_classical_baseline").get<bool>());
  const std::string text = report_json(r);
  EXPECT_EQ(text.find("null"), std::string::npos);
}

TEST(Report, EmptyReportIsRejected) { EXPECT_THROW(report_json(Report{}), InvalidArgument); }

TEST(Report, CsvHasAVersionedHeaderAndOneRowPerScenario) {
  Report r;
  r.scenarios.push_back(fake_result("threefold", 0.5));
  r.scenarios.push_back(fake_result("fourfold", 0.999));
  const auto csv = report_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "schema_version,section,id,parameter,fidelity,fidelity_leading_order,leading_order_error,probability,"
            "vacuum_weight,exceeds_classical_baseline");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(csv.find("1,scenario,threefold,1,0.5,,,"), std::string::npos);
}

TEST(Report, NumbersRoundTripExactly) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(format_number(v)), v);
  EXPECT_EQ(format_number(-0.0), "0");
}

}  // namespace
}  // namespace lotsim
