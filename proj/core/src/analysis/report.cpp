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

#include "lotsim/analysis/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lotsim/error.hpp"

namespace lotsim {

namespace {

using Json = nlohmann::ordered_json;

double baseline_value(const Report& r) { return r.baseline ? r.baseline->analytic : 0.5; }

Json to_json(const MetadataValue& v) {
  return std::visit([](const auto& x) { return Json(x); }, v);
}

Json to_json(const ScenarioResult& s, double baseline) {
  Json j;
  j["id"] = s.scenario;
  j["coupling_I"] = s.coupling_I;
  j["coupling_II"] = s.coupling_II;
  j["probability"] = s.probability;
  j["fidelity"] = s.fidelity;
  j["vacuum_weight"] = s.weights.vacuum;
  j["single_photon_weight"] = s.weights.single_photon;
  j["multiphoton_weight"] = s.weights.multiphoton;
  if (s.leading_order) {
    const auto& lo = *s.leading_order;
    Json l;
    l["fidelity"] = lo.fidelity.value;
    l["error"] = lo.fidelity.error;
    l["residuals_monotone"] = lo.fidelity.residuals_monotone;
    l["vacuum_weight"] = lo.vacuum_weight;
    l["couplings"] = lo.couplings;
    l["fidelities"] = lo.fidelities;
    l["probabilities"] = lo.probabilities;
    j["leading_order"] = l;
  }
  j["baseline"] = baseline;
  j["exceeds_classical_baseline"] = exceeds_classical_baseline(s, baseline);
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

double reported_fidelity(const ScenarioResult& result) {
  return result.leading_order ? result.leading_order->fidelity.value : result.fidelity;
}

bool exceeds_classical_baseline(const ScenarioResult& result, double baseline) {
  return reported_fidelity(result) > baseline + kBaselineMargin;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string report_json(const Report& report) {
  if (report.scenarios.empty() && !report.baseline && report.coupling_ratio_sweep.empty() &&
      report.input_independence.empty() && !report.tomography) {
    throw InvalidArgument("report has no results");
  }
  const double baseline = baseline_value(report);
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  if (!report.metadata.empty()) {
    Json m = Json::object();
    for (const auto& [k, v] : report.metadata) m[k] = to_json(v);
    j["metadata"] = m;
  }
  if (report.baseline) {
    const auto& b = *report.baseline;
    j["classical_baseline"] = {{"analytic", b.analytic},
                               {"monte_carlo", b.monte_carlo},
                               {"standard_error", b.standard_error},
                               {"trials", b.trials},
                               {"seed", b.seed}};
  }
  if (!report.scenarios.empty()) {
    Json arr = Json::array();
    for (const auto& s : report.scenarios) arr.push_back(to_json(s, baseline));
    j["scenarios"] = arr;
  }
  if (!report.coupling_ratio_sweep.empty()) {
    Json arr = Json::array();
    for (const auto& r : report.coupling_ratio_sweep) {
      arr.push_back({{"ratio", r.ratio},
                     {"fidelity", r.fidelity},
                     {"fidelity_error", r.fidelity_error},
                     {"residuals_monotone", r.residuals_monotone},
                     {"probability", r.probability},
                     {"vacuum_weight", r.vacuum_weight},
                     {"exceeds_classical_baseline", r.fidelity > baseline + kBaselineMargin}});
    }
    j["coupling_ratio_sweep"] = arr;
  }
  if (!report.input_independence.empty()) {
    Json arr = Json::array();
    for (const auto& [id, ii] : report.input_independence) {
      arr.push_back({{"scenario", id}, {"angles_rad", ii.angles}, {"fidelities", ii.fidelities}, {"spread", ii.spread}});
    }
    j["input_independence"] = arr;
  }
  if (report.tomography) {
    const auto& t = *report.tomography;
    Json tj;
    tj["source"] = t.source;
    tj["settings"] = t.settings;
    tj["shots"] = t.result.shots_used;
    tj["true_vacuum_weight"] = t.true_vacuum_weight;
    tj["true_leakage"] = t.true_leakage;
    tj["vacuum_weight_estimate"] = t.result.vacuum_weight_estimate;
    tj["leakage_estimate"] = t.result.leakage_estimate;
    if (t.result.fidelity_to_truth) tj["fidelity_to_truth"] = *t.result.fidelity_to_truth;
    if (t.result.trace_distance_to_truth) tj["trace_distance_to_truth"] = *t.result.trace_distance_to_truth;
    Json rows = Json::array();
    const auto m = t.result.rho_hat.dense();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(row);
    }
    tj["rho_hat"] = rows;
    j["tomography"] = tj;
  }
  return j.dump(2) + "\n";
}

std::string report_csv(const Report& report) {
  const double baseline = baseline_value(report);
  std::ostringstream os;
  os << "schema_version,section,id,parameter,fidelity,fidelity_leading_order,leading_order_error,probability,"
        "vacuum_weight,exceeds_classical_baseline\n";
  const std::string v = std::to_string(kReportSchemaVersion);
  for (const auto& s : report.scenarios) {
    os << v << ",scenario," << csv_field(s.scenario) << "," << format_number(s.coupling_II / s.coupling_I) << ","
       << format_number(s.fidelity) << ","
       << (s.leading_order ? format_number(s.leading_order->fidelity.value) : "") << ","
       << (s.leading_order ? format_number(s.leading_order->fidelity.error) : "") << ","
       << format_number(s.probability) << "," << format_number(s.weights.vacuum) << ","
       << (exceeds_classical_baseline(s, baseline) ? "true" : "false") << "\n";
  }
  for (const auto& r : report.coupling_ratio_sweep) {
    os << v << ",coupling_ratio_sweep,threefold," << format_number(r.ratio) << ",," << format_number(r.fidelity)
       << "," << format_number(r.fidelity_error) << "," << format_number(r.probability) << ","
       << format_number(r.vacuum_weight) << "," << (r.fidelity > baseline + kBaselineMargin ? "true" : "false")
       << "\n";
  }
  for (const auto& [id, ii] : report.input_independence) {
    for (std::size_t i = 0; i < ii.angles.size(); ++i) {
      os << v << ",input_independence," << csv_field(id) << "," << format_number(ii.angles[i]) << ",,"
         << format_number(ii.fidelities[i]) << "," << format_number(ii.spread) << ",,,"
         << (ii.fidelities[i] > baseline + kBaselineMargin ? "true" : "false") << "\n";
    }
  }
  if (report.tomography) {
    const auto& t = *report.tomography;
    os << v << ",tomography," << csv_field(t.source) << "," << t.result.shots_used << ","
       << (t.result.fidelity_to_truth ? format_number(*t.result.fidelity_to_truth) : "") << ",,"
       << (t.result.trace_distance_to_truth ? format_number(*t.result.trace_distance_to_truth) : "") << ",,"
       << format_number(t.result.vacuum_weight_estimate) << ",false\n";
  }
  if (report.baseline) {
    os << v << ",classical_baseline,monte_carlo," << report.baseline->trials << ","
       << format_number(report.baseline->monte_carlo) << "," << format_number(report.baseline->analytic) << ","
       << format_number(report.baseline->standard_error) << ",,,false\n";
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "schema_version,ratio,fidelity,fidelity_error,residuals_monotone,probability,vacuum_weight\n";
  for (const auto& r : rows) {
    os << kReportSchemaVersion << "," << format_number(r.ratio) << "," << format_number(r.fidelity) << ","
       << format_number(r.fidelity_error) << "," << (r.residuals_monotone ? "true" : "false") << ","
       << format_number(r.probability) << "," << format_number(r.vacuum_weight) << "\n";
  }
  return os.str();
}

}  // namespace lotsim
