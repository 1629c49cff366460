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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "lotsim/analysis/baseline.hpp"
#include "lotsim/analysis/tomography.hpp"
#include "lotsim/detection/detector.hpp"
#include "lotsim/fock/operator.hpp"
#include "lotsim/optics/elements.hpp"
#include "lotsim/optics/mode_transform.hpp"
#include "lotsim/oracle/dense_oracle.hpp"

namespace lotsim::app {

namespace fs = std::filesystem;

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;
constexpr char kVersion[] = "0.1.0";

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::both: return "both";
  }
  return "both";
}

bool wants_csv(OutputFormat f) { return f != OutputFormat::json; }
bool wants_json(OutputFormat f) { return f != OutputFormat::csv; }

std::vector<double> leading_couplings(const RunConfig& c) { return c.leading_order.couplings; }

ScenarioResult evaluate(const RunConfig& c, const SetupConfig& setup, const Scenario& s) {
  if (c.leading_order.enabled) return run_with_leading_order(setup, s, leading_couplings(c));
  return run_scenario(setup, s);
}

std::vector<std::pair<std::string, MetadataValue>> metadata(const RunConfig& c, const std::string& command) {
  const auto& s = c.setup;
  std::vector<std::pair<std::string, MetadataValue>> m = {
      {"tool", std::string("lotsim")},
      {"version", std::string(kVersion)},
      {"command", command},
      {"seed", static_cast<std::int64_t>(c.seed)},
      {"cutoff", static_cast<std::int64_t>(s.cutoff)},
      {"coupling_I", s.coupling_I},
      {"coupling_II", s.coupling_II},
      {"input_angle_deg", s.input_angle / kDegree},
      {"preparation", preparation_name(s.preparation)},
      {"bs_phase_deg", s.bs_phase / kDegree},
      {"detector_p", kind_name(s.p.kind)},
      {"efficiency_p", s.p.efficiency},
      {"efficiency_f1", s.f1.efficiency},
      {"efficiency_f2", s.f2.efficiency},
      {"efficiency_d1", s.d1.efficiency},
      {"efficiency_d2", s.d2.efficiency},
      {"leading_order", c.leading_order.enabled},
  };
  if (s.bob_analyzer_angle) m.emplace_back("bob_analyzer_angle_deg", *s.bob_analyzer_angle / kDegree);
  return m;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ZeroProbability& e) {
    err << "lotsim: zero-probability outcome: " << e.what() << " (p = " << e.probability() << ")\n";
    return kExitZeroProbability;
  } catch (const IoError& e) {
    err << "lotsim: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "lotsim: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "lotsim: " << e.what() << "\n";
    return kExitError;
  }
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

void write_artifacts(const fs::path& dir, const std::vector<Artifact>& artifacts) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<fs::path> temps;
  auto cleanup = [&] {
    for (const auto& t : temps) fs::remove(t, ec);
  };
  for (const auto& a : artifacts) {
    const fs::path tmp = dir / ("." + a.name + ".tmp");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << a.content;
    out.close();
    if (!out) {
      cleanup();
      throw IoError("cannot write " + (dir / a.name).string());
    }
  }
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    fs::rename(temps[i], dir / artifacts[i].name, ec);
    if (ec) {
      const std::string why = ec.message();
      cleanup();
      // Roll back the ones already moved so the set stays all-or-nothing.
      for (std::size_t k = 0; k < i; ++k) fs::remove(dir / artifacts[k].name, ec);
      throw IoError("cannot move " + (dir / artifacts[i].name).string() + " into place: " + why);
    }
  }
}

Report build_run_report(const RunConfig& c) {
  c.setup.validate();
  Report r;
  r.metadata = metadata(c, "run");
  for (const auto& s : c.scenarios) r.scenarios.push_back(evaluate(c, c.setup, s));
  if (c.baseline) {
    const auto beam3 = r.scenarios.empty() ? make_space(beam_modes(kBeam3), c.setup.cutoff)
                                           : r.scenarios.front().rho3.space();
    r.baseline = classical_baseline(target_state(c.setup, beam3), c.baseline->trials, c.seed);
  }
  if (c.sweep && c.sweep->parameter == "ratio" && std::holds_alternative<Threefold>(c.sweep->scenario)) {
    r.coupling_ratio_sweep = coupling_ratio_sweep(c.setup, c.sweep->values, leading_couplings(c));
  }
  if (c.input_independence) {
    std::vector<double> angles;
    for (double a : c.input_independence->angles_deg) angles.push_back(a * kDegree);
    for (const auto& s : c.input_independence->scenarios) {
      r.input_independence.emplace_back(scenario_id(s),
                                        input_independence_check(c.setup, angles, s, leading_couplings(c)));
    }
  }
  return r;
}

std::vector<Artifact> run_artifacts(const RunConfig& c) {
  const Report r = build_run_report(c);
  std::vector<Artifact> out;
  if (wants_json(c.format)) out.push_back({"report.json", report_json(r)});
  if (wants_csv(c.format)) out.push_back({"report.csv", report_csv(r)});
  return out;
}

std::vector<SweepPoint> run_sweep(const RunConfig& c) {
  if (!c.sweep) throw ConfigError("sweep: the config has no sweep section");
  const auto& spec = *c.sweep;
  std::vector<double> values = spec.values;
  std::sort(values.begin(), values.end());
  std::vector<SweepPoint> points;
  for (double v : values) {
    SetupConfig s = c.setup;
    bool extrapolate = c.leading_order.enabled;
    if (spec.parameter == "ratio") {
      s = with_ratio(s, v);
    } else if (spec.parameter == "coupling") {
      s = with_scale(s, v);
      extrapolate = false;
    } else if (spec.parameter == "input_angle_deg") {
      s.input_angle = v * kDegree;
    } else if (spec.parameter == "bs_phase_deg") {
      s.bs_phase = v * kDegree;
    } else if (spec.parameter == "efficiency_p") {
      s.p.efficiency = v;
    } else {
      throw ConfigError("sweep.parameter: unknown parameter '" + spec.parameter + "'");
    }
    s.validate();
    const ScenarioResult res =
        extrapolate ? run_with_leading_order(s, spec.scenario, leading_couplings(c)) : run_scenario(s, spec.scenario);
    SweepPoint p;
    p.value = v;
    p.fidelity = res.fidelity;
    p.probability = res.probability;
    p.vacuum_weight = res.weights.vacuum;
    if (res.leading_order) {
      p.fidelity_leading_order = res.leading_order->fidelity.value;
      p.leading_order_error = res.leading_order->fidelity.error;
      p.vacuum_weight = res.leading_order->vacuum_weight;
    }
    points.push_back(p);
  }
  return points;
}

std::string sweep_points_csv(const std::string& parameter, const std::vector<SweepPoint>& points) {
  std::ostringstream os;
  os << "schema_version,parameter,value,fidelity,fidelity_leading_order,leading_order_error,probability,"
        "vacuum_weight\n";
  for (const auto& p : points) {
    os << kReportSchemaVersion << "," << parameter << "," << format_number(p.value) << ","
       << format_number(p.fidelity) << ","
       << (p.fidelity_leading_order ? format_number(*p.fidelity_leading_order) : "") << ","
       << (p.leading_order_error ? format_number(*p.leading_order_error) : "") << ","
       << format_number(p.probability) << "," << format_number(p.vacuum_weight) << "\n";
  }
  return os.str();
}

std::string sweep_points_json(const std::string& parameter, const std::string& scenario,
                              const std::vector<SweepPoint>& points) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["parameter"] = parameter;
  j["scenario"] = scenario;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    nlohmann::ordered_json row;
    row["value"] = p.value;
    row["fidelity"] = p.fidelity;
    if (p.fidelity_leading_order) row["fidelity_leading_order"] = *p.fidelity_leading_order;
    if (p.leading_order_error) row["leading_order_error"] = *p.leading_order_error;
    row["probability"] = p.probability;
    row["vacuum_weight"] = p.vacuum_weight;
    rows.push_back(row);
  }
  j["points"] = rows;
  return j.dump(2) + "\n";
}

DensityOperator tomography_truth(const ScenarioResult& result) {
  if (!result.leading_order) return result.rho3;
  const Eigen::MatrixXcd m = result.leading_order->rho3;
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXcd clipped = es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  clipped /= clipped.trace().real();
  return DensityOperator::from_dense(result.rho3.space(), 0.5 * (clipped + clipped.adjoint()));
}

TomographySummary run_tomography(const RunConfig& c) {
  c.setup.validate();
  const ScenarioResult source = evaluate(c, c.setup, c.tomography.source);
  const DensityOperator truth = tomography_truth(source);
  const auto settings = default_tomography_settings();
  const OutcomeTable exact = tomography_probabilities(truth, settings);

  auto result = c.tomography.shots > 0 ? reconstruct(sample_counts(exact, c.tomography.shots, c.seed), &truth)
                                       : reconstruct(exact, &truth);
  const auto w = sector_weights(truth);
  std::vector<std::string> names;
  for (const auto& s : settings) names.push_back(s.name);
  TomographySummary t{source.scenario, w.vacuum, w.multiphoton, std::move(names), std::move(result)};
  return t;
}

std::vector<ValidationCheck> run_validation(const RunConfig& config, const ValidateOptions& options) {
  std::vector<ValidationCheck> checks;
  auto record = [&](std::string name, double value, double tol, std::string detail = {}) {
    checks.push_back({std::move(name), std::isfinite(value) && value <= tol, value, tol, std::move(detail)});
  };
  auto guard = [&](const std::string& name, double tol, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      checks.push_back({name, false, std::numeric_limits<double>::infinity(), tol, e.what()});
    }
  };

  SetupConfig setup = config.setup;
  setup.cutoff = 4;
  setup.coupling_I = 0.05;
  setup.coupling_II = 0.04;
  const double bs_phase = options.perturb_bs_convention ? std::numbers::pi : 0.0;

  guard("unitarity", 1e-10, [&] {
    const auto pair = make_space({H(kBeam1), V(kBeam1), H(kBeam2), V(kBeam2)}, 4);
    double worst = 0.0;
    for (const auto& e : {beamsplitter(0.5, bs_phase, kBeam1, kBeam2), beamsplitter(0.3, 0.7, kBeam1, kBeam2),
                          pbs(kBeam1, kBeam2), half_wave_plate(0.4, kBeam1), quarter_wave_plate(1.1, kBeam2)}) {
      worst = std::max(worst, lift(e.transform(), pair).unitarity_defect());
    }
    const Circuit circuit = build_circuit(setup);
    worst = std::max(worst, compose(circuit.elements, circuit.space).unitarity_defect());
    record("unitarity", worst, 1e-10, "elements and the full cutoff-4 circuit");
  });

  guard("beamsplitter_convention", 1e-12, [&] {
    const auto space = make_space({H(kBeam1), H(kBeam2)}, 1);
    const auto out = apply(beamsplitter(0.5, bs_phase, H(kBeam1), H(kBeam2)).transform(),
                           make_basis_state(space, {1, 0}));
    const double r = std::sqrt(0.5);
    const double dev = std::max(std::abs(out.amplitude(std::vector<int>{1, 0}) - Complex(r, 0.0)),
                                std::abs(out.amplitude(std::vector<int>{0, 1}) - Complex(r, 0.0)));
    record("beamsplitter_convention", dev, 1e-12, "|10> -> (|10> + |01>)/sqrt(2)");
  });

  guard("povm_completeness", 1e-12, [&] {
    double worst = 0.0;
    for (const DetectorKind& kind : {DetectorKind{Threshold{}}, DetectorKind{NumberResolving{}},
                                     DetectorKind{Cascade{2}}, DetectorKind{Cascade{4}}}) {
      for (double eta : {1.0, 0.7}) {
        const auto elements = povm(DetectorModel::on_beam(kBeam1, kind, eta), 4);
        SparseMatrix sum = Operator::identity(elements.front().op.space()).matrix() * Complex(-1.0);
        for (const auto& e : elements) sum += e.op.matrix();
        worst = std::max(worst, Eigen::MatrixXcd(sum).cwiseAbs().maxCoeff());
      }
    }
    record("povm_completeness", worst, 1e-12, "threshold, number-resolving, cascade(2,4) at efficiency 1 and 0.7");
  });

  guard("lift_homomorphism", 1e-12, [&] {
    const std::vector<ModeLabel> modes = {H(kBeam1), V(kBeam1), H(kBeam2), V(kBeam2)};
    const auto space = make_space(modes, 4);
    const auto a = waveplate(0.3, 1.1, kBeam1).transform().embedded(modes);
    const auto b = beamsplitter(0.3, 0.4, kBeam1, kBeam2).transform().embedded(modes);
    const auto c = pbs(kBeam1, kBeam2).transform().embedded(modes);
    const SparseMatrix direct = lift(a * b * c, space).matrix();
    const SparseMatrix product = (lift(a, space) * lift(b, space) * lift(c, space)).matrix();
    record("lift_homomorphism", Eigen::MatrixXcd(direct - product).cwiseAbs().maxCoeff(), 1e-12);
  });

  guard("photon_number_conservation", 1e-10, [&] {
    const Circuit circuit = build_circuit(setup);
    const Operator u = compose(circuit.elements, circuit.space);
    const Operator n = number_operator(circuit.space);
    const SparseMatrix comm = (u * n).matrix() - (n * u).matrix();
    record("photon_number_conservation", Eigen::MatrixXcd(comm).cwiseAbs().maxCoeff(), 1e-10,
           "[U, N] for the cutoff-4 circuit");
  });

  guard("partial_trace_consistency", 1e-12, [&] {
    const Circuit circuit = build_circuit(setup);
    const auto rho = DensityOperator::from_pure(prepare_global_state(setup, circuit).normalized());
    const std::vector<ModeLabel> two = {H(kBeam2), V(kBeam2), H(kBeam3), V(kBeam3)};
    const std::vector<ModeLabel> three = {H(kBeam3), V(kBeam3)};
    const auto direct = partial_trace(rho, three);
    const auto staged = partial_trace(partial_trace(rho, two), three);
    const double dev = std::max(Eigen::MatrixXcd(direct.matrix() - staged.matrix()).cwiseAbs().maxCoeff(),
                                std::abs(direct.trace() - rho.trace()));
    record("partial_trace_consistency", dev, 1e-12, "staged vs direct reduction to beam 3");
  });

  const std::vector<Scenario> scenarios = {Threefold{},          Fourfold{},           ThreefoldNumberResolvedP{1},
                                           ThreefoldCascadeP{1}, ThreefoldCascadeP{2}, ThreefoldCascadeP{4},
                                           ThreefoldQndBob{1}};

  guard("positivity", 1e-10, [&] {
    double worst = 0.0;
    for (const auto& s : scenarios) worst = std::max(worst, -run_scenario(setup, s).rho3.min_eigenvalue());
    record("positivity", worst, 1e-10, "most negative eigenvalue of the conditional states");
  });

  guard("oracle_equivalence", 1e-10, [&] {
    double worst = 0.0;
    for (auto prep : {Preparation::polarizer_on_beam_1, Preparation::analyzer_before_p}) {
      SetupConfig s = setup;
      s.preparation = prep;
      for (const auto& sc : scenarios) {
        const auto fast = run_scenario(s, sc);
        const auto dense = oracle::run(s, sc);
        worst = std::max({worst, std::abs(fast.probability - dense.probability),
                          std::abs(fast.fidelity - dense.fidelity),
                          std::abs(fast.weights.vacuum - dense.vacuum_weight)});
      }
    }
    record("oracle_equivalence", worst, 1e-10, "max |delta| vs dense enumeration at cutoff 4");
  });

  return checks;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Report r = build_run_report(config);
    std::vector<Artifact> artifacts;
    if (wants_json(config.format)) artifacts.push_back({"report.json", report_json(r)});
    if (wants_csv(config.format)) artifacts.push_back({"report.csv", report_csv(r)});
    write_artifacts(config.out_dir, artifacts);
    for (const auto& s : r.scenarios) {
      out << std::left << std::setw(36) << s.scenario << " F=" << fixed(s.fidelity);
      if (s.leading_order) out << " F_lo=" << fixed(s.leading_order->fidelity.value);
      out << " P=" << std::scientific << std::setprecision(4) << s.probability << std::defaultfloat << "\n";
    }
    if (r.baseline) {
      out << "classical baseline " << fixed(r.baseline->analytic) << " (monte carlo "
          << fixed(r.baseline->monte_carlo) << " +/- " << fixed(r.baseline->standard_error) << ")\n";
    }
    for (const auto& [id, ii] : r.input_independence) out << "input independence " << id << " spread=" << ii.spread << "\n";
    out << "wrote " << artifacts.size() << " file(s) to " << config.out_dir.string() << " (format "
        << format_name(config.format) << ")\n";
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto points = run_sweep(config);
    const auto& spec = *config.sweep;
    std::vector<Artifact> artifacts;
    if (wants_csv(config.format)) artifacts.push_back({"sweep.csv", sweep_points_csv(spec.parameter, points)});
    if (wants_json(config.format)) {
      artifacts.push_back({"sweep.json", sweep_points_json(spec.parameter, scenario_id(spec.scenario), points)});
    }
    write_artifacts(config.out_dir, artifacts);
    for (const auto& p : points) {
      out << spec.parameter << "=" << p.value << " F=" << fixed(p.fidelity);
      if (p.fidelity_leading_order) out << " F_lo=" << fixed(*p.fidelity_leading_order);
      out << " vacuum=" << fixed(p.vacuum_weight) << "\n";
    }
    out << "wrote " << artifacts.size() << " file(s) to " << config.out_dir.string() << "\n";
    return kExitOk;
  });
}

int cmd_validate(const RunConfig& config, const ValidateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto checks = run_validation(config, options);
    bool ok = true;
    for (const auto& c : checks) {
      ok = ok && c.passed;
      out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(28) << c.name << " value=" << std::scientific
          << std::setprecision(3) << c.value << " tol=" << c.tolerance << std::defaultfloat;
      if (!c.detail.empty()) out << "  " << c.detail;
      out << "\n";
    }
    out << (ok ? "all checks passed" : "validation failed") << "\n";
    return ok ? kExitOk : kExitValidationFailed;
  });
}

int cmd_tomo(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Report r;
    r.metadata = metadata(config, "tomo");
    r.tomography = run_tomography(config);
    std::vector<Artifact> artifacts;
    if (wants_json(config.format)) artifacts.push_back({"tomography.json", report_json(r)});
    if (wants_csv(config.format)) artifacts.push_back({"tomography.csv", report_csv(r)});
    write_artifacts(config.out_dir, artifacts);
    const auto& t = *r.tomography;
    out << "source " << t.source << " shots " << t.result.shots_used << "\n"
        << "vacuum weight: true " << fixed(t.true_vacuum_weight, 8) << " estimate "
        << fixed(t.result.vacuum_weight_estimate, 8) << "\n"
        << "leakage: true " << fixed(t.true_leakage, 8) << " estimate " << fixed(t.result.leakage_estimate, 8)
        << "\n";
    if (t.result.fidelity_to_truth) out << "fidelity to truth " << fixed(*t.result.fidelity_to_truth, 8) << "\n";
    out << "wrote " << artifacts.size() << " file(s) to " << config.out_dir.string() << "\n";
    return kExitOk;
  });
}

}  // namespace lotsim::app
