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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lotsim::app {

namespace {

using Json = nlohmann::json;

constexpr double kDegree = std::numbers::pi / 180.0;

class Reader {
 public:
  Reader(const Json& j, std::string path, const std::string& origin) : j_(j), path_(std::move(path)), origin_(origin) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(origin_ + ": " + (path_.empty() ? "<root>" : path_) + ": " + what);
  }

  const std::string& path() const { return path_; }
  const std::string& origin() const { return origin_; }
  const Json& json() const { return j_; }

  void object(std::initializer_list<const char*> allowed) const {
    if (!j_.is_object()) fail("expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j_.items()) {
      if (!ok.count(k)) child_path_fail(k, "unknown key");
    }
  }

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  Reader at(const char* key) const { return {j_.at(key), join(key), origin_}; }

  double number(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number()) child_path_fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) child_path_fail(key, "expected a finite number");
    return d;
  }

  std::int64_t integer(const char* key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) child_path_fail(key, "expected an integer");
    return v.get<std::int64_t>();
  }

  bool boolean(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_boolean()) child_path_fail(key, "expected true or false");
    return v.get<bool>();
  }

  std::string string(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_string()) child_path_fail(key, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const char* key, const std::vector<double>& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_array() || v.empty()) child_path_fail(key, "expected a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
        child_path_fail(key + std::string("[") + std::to_string(i) + "]", "expected a finite number");
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  [[noreturn]] void child_path_fail(const std::string& key, const std::string& what) const {
    throw ConfigError(origin_ + ": " + join(key) + ": " + what);
  }

  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const Json& j_;
  std::string path_;
  const std::string& origin_;
};

Scenario read_scenario(const Reader& r) {
  if (r.json().is_string()) {
    const auto id = r.json().get<std::string>();
    if (id == "threefold") return Threefold{};
    if (id == "fourfold") return Fourfold{};
    if (id == "threefold_number_resolved_p") return ThreefoldNumberResolvedP{};
    if (id == "threefold_cascade_p") return ThreefoldCascadeP{};
    if (id == "threefold_qnd_bob") return ThreefoldQndBob{};
    r.fail("unknown scenario '" + id + "'");
  }
  r.object({"kind", "n", "stages"});
  if (!r.has("kind")) r.fail("scenario object needs a kind");
  const auto kind = r.string("kind", "");
  auto forbid = [&](const char* key) {
    if (r.has(key)) r.child_path_fail(key, "not a parameter of scenario '" + kind + "'");
  };
  if (kind == "threefold" || kind == "fourfold") {
    forbid("n");
    forbid("stages");
    return kind == "threefold" ? Scenario{Threefold{}} : Scenario{Fourfold{}};
  }
  if (kind == "threefold_number_resolved_p" || kind == "threefold_qnd_bob") {
    forbid("stages");
    const auto n = r.integer("n", 1);
    if (n < 0 || n > 64) r.child_path_fail("n", "photon number must lie in [0, 64]");
    if (kind == "threefold_qnd_bob") return ThreefoldQndBob{static_cast<int>(n)};
    return ThreefoldNumberResolvedP{static_cast<int>(n)};
  }
  if (kind == "threefold_cascade_p") {
    forbid("n");
    const auto k = r.integer("stages", 2);
    if (k < 1 || k > 64) r.child_path_fail("stages", "cascade stages must lie in [1, 64]");
    return ThreefoldCascadeP{static_cast<int>(k)};
  }
  r.child_path_fail("kind", "unknown scenario '" + kind + "'");
}

std::vector<Scenario> read_scenarios(const Reader& r) {
  if (!r.json().is_array() || r.json().empty()) r.fail("expected a non-empty array of scenarios");
  std::vector<Scenario> out;
  for (std::size_t i = 0; i < r.json().size(); ++i) {
    out.push_back(read_scenario(Reader(r.json()[i], r.path() + "[" + std::to_string(i) + "]", r.origin())));
  }
  return out;
}

DetectorSpec read_detector(const Reader& r) {
  r.object({"kind", "efficiency", "stages"});
  DetectorSpec d;
  const auto kind = r.string("kind", "threshold");
  if (kind == "threshold") {
    d.kind = Threshold{};
  } else if (kind == "number_resolving") {
    d.kind = NumberResolving{};
  } else if (kind == "cascade") {
    const auto k = r.integer("stages", 2);
    if (k < 1 || k > 64) r.child_path_fail("stages", "cascade stages must lie in [1, 64]");
    d.kind = Cascade{static_cast<int>(k)};
  } else {
    r.child_path_fail("kind", "unknown detector kind '" + kind + "' (threshold, number_resolving, cascade)");
  }
  if (kind != "cascade" && r.has("stages")) r.child_path_fail("stages", "only cascade detectors have stages");
  d.efficiency = r.number("efficiency", 1.0);
  if (!(d.efficiency >= 0.0 && d.efficiency <= 1.0)) r.child_path_fail("efficiency", "must lie in [0, 1]");
  return d;
}

SetupConfig read_setup(const Reader& r) {
  r.object({"coupling_I", "coupling_II", "input_angle_deg", "preparation", "detectors", "bob_analyzer_angle_deg",
            "bs_phase_deg", "cutoff", "max_discarded_weight"});
  SetupConfig s;
  s.coupling_I = r.number("coupling_I", s.coupling_I);
  s.coupling_II = r.number("coupling_II", s.coupling_II);
  for (const char* key : {"coupling_I", "coupling_II"}) {
    const double g = r.number(key, 0.02);
    if (!(g > 0.0 && g < 1.0)) r.child_path_fail(key, "coupling " + std::to_string(g) + " must lie in (0, 1)");
  }
  s.input_angle = r.number("input_angle_deg", 45.0) * kDegree;
  if (r.has("preparation")) {
    try {
      s.preparation = parse_preparation(r.string("preparation", ""));
    } catch (const InvalidArgument& e) {
      r.child_path_fail("preparation", e.what());
    }
  }
  if (r.has("detectors")) {
    const auto d = r.at("detectors");
    d.object({"p", "f1", "f2", "d1", "d2"});
    if (d.has("p")) s.p = read_detector(d.at("p"));
    if (d.has("f1")) s.f1 = read_detector(d.at("f1"));
    if (d.has("f2")) s.f2 = read_detector(d.at("f2"));
    if (d.has("d1")) s.d1 = read_detector(d.at("d1"));
    if (d.has("d2")) s.d2 = read_detector(d.at("d2"));
  }
  if (r.has("bob_analyzer_angle_deg")) s.bob_analyzer_angle = r.number("bob_analyzer_angle_deg", 0.0) * kDegree;
  s.bs_phase = r.number("bs_phase_deg", 0.0) * kDegree;
  const auto cutoff = r.integer("cutoff", s.cutoff);
  if (cutoff < 4 || cutoff > 16) r.child_path_fail("cutoff", "must lie in [4, 16]");
  s.cutoff = static_cast<int>(cutoff);
  s.max_discarded_weight = r.number("max_discarded_weight", s.max_discarded_weight);
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    r.fail(e.what());
  }
  return s;
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  if (text == "both") return OutputFormat::both;
  throw ConfigError("unknown output format '" + text + "' (csv, json, both)");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(origin + ": malformed JSON: " + e.what());
  }
  const Reader root(doc, "", origin);
  root.object({"setup", "scenarios", "leading_order", "sweep", "baseline", "tomography", "input_independence",
               "output", "seed"});
  RunConfig c;
  if (root.has("setup")) c.setup = read_setup(root.at("setup"));
  if (root.has("scenarios")) {
    c.scenarios = read_scenarios(root.at("scenarios"));
  }
  if (root.has("leading_order")) {
    const auto r = root.at("leading_order");
    r.object({"enabled", "couplings"});
    c.leading_order.enabled = r.boolean("enabled", true);
    c.leading_order.couplings = r.numbers("couplings", c.leading_order.couplings);
    const auto& g = c.leading_order.couplings;
    if (g.size() < 3) r.child_path_fail("couplings", "needs at least three values");
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!(g[i] > 0.0 && g[i] < 1.0)) r.child_path_fail("couplings", "values must lie in (0, 1)");
      if (i > 0 && !(g[i] < g[i - 1])) r.child_path_fail("couplings", "values must be strictly decreasing");
    }
  }
  if (root.has("sweep")) {
    const auto r = root.at("sweep");
    r.object({"parameter", "values", "scenario"});
    SweepSpec s;
    s.parameter = r.string("parameter", "ratio");
    static const std::set<std::string> known = {"ratio", "coupling", "input_angle_deg", "bs_phase_deg",
                                                "efficiency_p"};
    if (!known.count(s.parameter)) {
      r.child_path_fail("parameter", "unknown sweep parameter '" + s.parameter +
                                         "' (ratio, coupling, input_angle_deg, bs_phase_deg, efficiency_p)");
    }
    if (!r.has("values")) r.fail("sweep needs values");
    s.values = r.numbers("values", {});
    for (double v : s.values) {
      const bool ok = s.parameter == "ratio"          ? v > 0.0
                      : s.parameter == "coupling"     ? (v > 0.0 && v < 1.0)
                      : s.parameter == "efficiency_p" ? (v >= 0.0 && v <= 1.0)
                                                      : true;
      if (!ok) r.child_path_fail("values", "value " + std::to_string(v) + " is out of range for " + s.parameter);
    }
    if (r.has("scenario")) s.scenario = read_scenario(r.at("scenario"));
    c.sweep = s;
  }
  if (root.has("baseline")) {
    const auto r = root.at("baseline");
    r.object({"enabled", "trials"});
    if (!r.boolean("enabled", true)) {
      c.baseline.reset();
    } else {
      c.baseline->trials = r.integer("trials", c.baseline->trials);
      if (c.baseline->trials < 1) r.child_path_fail("trials", "must be at least 1");
    }
  }
  if (root.has("tomography")) {
    const auto r = root.at("tomography");
    r.object({"source", "shots"});
    if (r.has("source")) c.tomography.source = read_scenario(r.at("source"));
    c.tomography.shots = r.integer("shots", c.tomography.shots);
    if (c.tomography.shots < 0) r.child_path_fail("shots", "must be non-negative");
  }
  if (root.has("input_independence")) {
    const auto r = root.at("input_independence");
    r.object({"angles_deg", "scenarios"});
    InputIndependenceSpec s;
    s.angles_deg = r.numbers("angles_deg", s.angles_deg);
    if (s.angles_deg.size() < 4) r.child_path_fail("angles_deg", "needs at least four angles");
    if (r.has("scenarios")) s.scenarios = read_scenarios(r.at("scenarios"));
    c.input_independence = s;
  }
  if (root.has("output")) {
    const auto r = root.at("output");
    r.object({"dir", "format"});
    c.out_dir = r.string("dir", c.out_dir.string());
    if (r.has("format")) {
      try {
        c.format = parse_format(r.string("format", "both"));
      } catch (const ConfigError& e) {
        r.child_path_fail("format", e.what());
      }
    }
  }
  if (root.has("seed")) {
    const auto& v = doc.at("seed");
    if (!v.is_number_unsigned()) root.child_path_fail("seed", "expected a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }
  return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

Scenario parse_scenario_text(const std::string& json_text) {
  const std::string origin = "<scenario>";
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error&) {
    doc = json_text;  // bare identifiers such as threefold
  }
  return read_scenario(Reader(doc, "scenario", origin));
}

}  // namespace lotsim::app
