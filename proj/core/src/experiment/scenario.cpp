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

#include "lotsim/experiment/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lotsim/error.hpp"

namespace lotsim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_couplings(std::span<const double> couplings) {
  if (couplings.size() < 3) throw InvalidArgument("leading order needs at least three couplings");
  for (std::size_t i = 0; i < couplings.size(); ++i) {
    if (!(couplings[i] > 0.0 && couplings[i] < 1.0)) {
      throw InvalidArgument("leading-order coupling " + std::to_string(couplings[i]) + " is outside (0, 1)");
    }
    if (i > 0 && !(couplings[i] < couplings[i - 1])) {
      throw InvalidArgument("leading-order couplings must be strictly decreasing");
    }
  }
}

}  // namespace

std::string scenario_id(const Scenario& scenario) {
  return std::visit(overloaded{
                        [](const Threefold&) -> std::string { return "threefold"; },
                        [](const Fourfold&) -> std::string { return "fourfold"; },
                        [](const ThreefoldNumberResolvedP& s) {
                          return "threefold_number_resolved_p(n=" + std::to_string(s.n) + ")";
                        },
                        [](const ThreefoldCascadeP& s) {
                          return "threefold_cascade_p(stages=" + std::to_string(s.stages) + ")";
                        },
                        [](const ThreefoldQndBob& s) { return "threefold_qnd_bob(n=" + std::to_string(s.n) + ")"; },
                        [](const CouplingRatioSweep&) -> std::string { return "coupling_ratio_sweep"; },
                    },
                    scenario);
}

SectorWeights sector_weights(const DensityOperator& rho3) {
  SectorWeights w;
  const auto& space = *rho3.space();
  Occupation occ(space.num_modes());
  for (Index i = 0; i < space.dimension(); ++i) {
    space.occupation(i, occ);
    int n = 0;
    for (int k : occ) n += k;
    const double d = rho3.element(i, i).real();
    (n == 0 ? w.vacuum : n == 1 ? w.single_photon : w.multiphoton) += d;
  }
  return w;
}

ConditionalState apply_bob_station(const DensityOperator& rho3, const BobStation& bob) {
  const int cutoff = rho3.space()->cutoff();
  const auto p1 = diagonal_povm(bob.d1.model, cutoff);
  const auto p2 = diagonal_povm(bob.d2.model, cutoff);
  const auto click1 = p1.element("click");
  const auto click2 = p2.element("click");
  auto click_probability = [](const DiagonalPovm& p, const std::vector<double>& click, const FockSpace& s,
                              const Occupation& occ) {
    Occupation local;
    for (const auto& m : p.watched_space->modes()) local.push_back(occ[s.mode_index(m)]);
    return click[p.watched_space->index_of(local)];
  };
  const Eigen::MatrixXcd effect =
      pull_back_effect(bob.network(), rho3.space(), [&](const FockSpace& s, const Occupation& occ) {
        const double c1 = click_probability(p1, click1, s, occ);
        const double c2 = click_probability(p2, click2, s, occ);
        return c1 * (1.0 - c2) + (1.0 - c1) * c2;
      });
  const Eigen::MatrixXcd root = psd_sqrt(effect);
  const Eigen::MatrixXcd m = root * rho3.dense() * root;
  const double p = m.trace().real();
  if (p < kZeroProbability) throw ZeroProbability("no single click at Bob's station", p);
  return {DensityOperator::from_dense(rho3.space(), m / p), p};
}

ScenarioResult run_scenario(const SetupConfig& config, const Scenario& scenario) {
  if (std::holds_alternative<CouplingRatioSweep>(scenario)) {
    throw InvalidArgument("a coupling ratio sweep is not a single scenario; use coupling_ratio_sweep");
  }
  config.validate();
  const Circuit circuit = build_circuit(config);
  const StateVector global = prepare_global_state(config, circuit);

  auto detectors = circuit.detectors;
  OutcomePattern pattern{{"p", "click"}, {"f1", "click"}, {"f2", "click"}};
  auto& p = detectors.front();
  if (const auto* s = std::get_if<ThreefoldNumberResolvedP>(&scenario)) {
    if (s->n < 0 || s->n > config.cutoff) throw InvalidArgument("resolved photon number is outside [0, cutoff]");
    p.model.kind = NumberResolving{};
    pattern["p"] = "n=" + std::to_string(s->n);
  } else if (const auto* c = std::get_if<ThreefoldCascadeP>(&scenario)) {
    if (c->stages < 1) throw InvalidArgument("cascade needs at least one stage");
    p.model.kind = Cascade{c->stages};
    pattern["p"] = "clicks=1";
  }

  auto cond = condition(global, pattern, detectors);
  if (std::holds_alternative<Fourfold>(scenario)) {
    auto bob = apply_bob_station(cond.state, circuit.bob);
    cond = {std::move(bob.state), cond.probability * bob.probability};
  } else if (const auto* q = std::get_if<ThreefoldQndBob>(&scenario)) {
    auto projected = qnd_total_number(cond.state, kBeam3, q->n);
    cond = {std::move(projected.state), cond.probability * projected.probability};
  }

  const auto target = target_state(config, cond.state.space());
  const double fidelity = fidelity_pure(cond.state, target);
  const auto weights = sector_weights(cond.state);
  return {scenario_id(scenario), config.coupling_I, config.coupling_II, std::move(cond.state), cond.probability,
          fidelity, weights, std::nullopt};
}

SetupConfig with_scale(const SetupConfig& config, double larger) {
  const double current = std::max(config.coupling_I, config.coupling_II);
  if (!(current > 0.0)) throw InvalidArgument("cannot rescale zero couplings");
  SetupConfig out = config;
  out.coupling_I = config.coupling_I * (larger / current);
  out.coupling_II = config.coupling_II * (larger / current);
  // Exact assignment keeps the larger coupling free of rounding.
  (config.coupling_I >= config.coupling_II ? out.coupling_I : out.coupling_II) = larger;
  return out;
}

SetupConfig with_ratio(const SetupConfig& config, double ratio) {
  if (!(ratio > 0.0 && std::isfinite(ratio))) throw InvalidArgument("coupling ratio must be positive and finite");
  const double larger = std::max(config.coupling_I, config.coupling_II);
  SetupConfig out = config;
  if (ratio >= 1.0) {
    out.coupling_II = larger;
    out.coupling_I = larger / ratio;
  } else {
    out.coupling_I = larger;
    out.coupling_II = larger * ratio;
  }
  return out;
}

LeadingOrder leading_order(const SetupConfig& config, const Scenario& scenario, std::span<const double> couplings) {
  check_couplings(couplings);
  LeadingOrder lo;
  std::vector<double> x;
  std::vector<Eigen::MatrixXcd> states;
  for (const double g : couplings) {
    const auto r = run_scenario(with_scale(config, g), scenario);
    lo.couplings.push_back(g);
    lo.fidelities.push_back(r.fidelity);
    lo.probabilities.push_back(r.probability);
    x.push_back(g * g);
    states.push_back(r.rho3.dense());
  }
  lo.fidelity = richardson_to_zero(std::span<const double>(x), std::span<const double>(lo.fidelities));
  lo.rho3 = richardson_to_zero(std::span<const double>(x), std::span<const Eigen::MatrixXcd>(states));
  lo.vacuum_weight = lo.rho3(0, 0).real();
  return lo;
}

ScenarioResult run_with_leading_order(const SetupConfig& config, const Scenario& scenario,
                                      std::span<const double> couplings) {
  auto result = run_scenario(config, scenario);
  result.leading_order = leading_order(config, scenario, couplings);
  return result;
}

std::vector<SweepRow> coupling_ratio_sweep(const SetupConfig& config, std::span<const double> ratios,
                                           std::span<const double> couplings) {
  if (ratios.empty()) throw InvalidArgument("coupling ratio sweep needs at least one ratio");
  std::vector<double> sorted(ratios.begin(), ratios.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<SweepRow> rows;
  for (const double r : sorted) {
    const auto lo = leading_order(with_ratio(config, r), Threefold{}, couplings);
    rows.push_back({r, lo.fidelity.value, lo.fidelity.error, lo.fidelity.residuals_monotone, lo.probabilities.front(),
                    lo.vacuum_weight});
  }
  return rows;
}

InputIndependence input_independence_check(const SetupConfig& config, std::span<const double> angles,
                                           const Scenario& scenario, std::span<const double> couplings) {
  std::vector<double> reduced;
  for (const double a : angles) {
    if (!std::isfinite(a)) throw InvalidArgument("input angle must be finite");
    double m = std::fmod(a, std::numbers::pi);
    if (m < 0) m += std::numbers::pi;
    const bool seen = std::any_of(reduced.begin(), reduced.end(), [&](double b) {
      const double d = std::abs(b - m);
      return std::min(d, std::numbers::pi - d) < 1e-12;
    });
    if (!seen) reduced.push_back(m);
  }
  if (reduced.size() < 4) throw InvalidArgument("input independence needs at least four distinct angles modulo pi");

  InputIndependence out;
  for (const double a : angles) {
    SetupConfig c = config;
    c.input_angle = a;
    out.angles.push_back(a);
    out.fidelities.push_back(leading_order(c, scenario, couplings).fidelity.value);
  }
  const auto [lo, hi] = std::minmax_element(out.fidelities.begin(), out.fidelities.end());
  out.spread = *hi - *lo;
  return out;
}

}  // namespace lotsim
