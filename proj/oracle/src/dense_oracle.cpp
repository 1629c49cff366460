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

#include "lotsim/oracle/dense_oracle.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "lotsim/error.hpp"

namespace lotsim::oracle {

namespace {

using Complex = std::complex<double>;

void enumerate(int modes, int left, Occ& prefix, std::vector<Occ>& out) {
  if (static_cast<int>(prefix.size()) == modes) {
    out.push_back(prefix);
    return;
  }
  for (int n = 0; n <= left; ++n) {
    prefix.push_back(n);
    enumerate(modes, left - n, prefix, out);
    prefix.pop_back();
  }
}

int total(const Occ& o) { return std::accumulate(o.begin(), o.end(), 0); }

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// a^dag_0 a^dag_3 - a^dag_1 a^dag_2 on a 4-mode basis. It does not depend on the
// coupling, so it is cached per cutoff.
const Eigen::MatrixXcd& pair_generator(const DenseBasis& basis) {
  static std::mutex mu;
  static std::map<int, Eigen::MatrixXcd> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(basis.cutoff);
  if (it == cache.end()) {
    Eigen::MatrixXcd g = creation_matrix(basis, 0) * creation_matrix(basis, 3);
    g -= creation_matrix(basis, 1) * creation_matrix(basis, 2);
    it = cache.emplace(basis.cutoff, std::move(g)).first;
  }
  return it->second;
}

// Passive element on `modes` (positions in the global basis) of a dense state.
Eigen::VectorXcd apply_element(const Eigen::MatrixXcd& creation_map, const std::vector<int>& modes,
                               const DenseBasis& global, const Eigen::VectorXcd& psi) {
  const DenseBasis local = enumerate_basis(static_cast<int>(modes.size()), global.cutoff);
  const Eigen::MatrixXcd u = fock_unitary(creation_map, local);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  for (int s = 0; s < global.dimension(); ++s) {
    if (psi(s) == Complex{0.0}) continue;
    Occ occ = global.states[at(s)];
    Occ in(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) in[k] = occ[at(modes[k])];
    const int l = local.find(in);
    for (int l2 = 0; l2 < local.dimension(); ++l2) {
      const Complex a = u(l2, l);
      if (a == Complex{0.0}) continue;
      const Occ& o2 = local.states[at(l2)];
      for (std::size_t k = 0; k < modes.size(); ++k) occ[at(modes[k])] = o2[k];
      out(global.find(occ)) += a * psi(s);
    }
  }
  return out;
}

// Amplitude (Jones) matrices; the creation map is the transpose.
Eigen::Matrix2cd rotation(double a) {
  Eigen::Matrix2cd r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

Eigen::Matrix2cd half_wave(double axis) {
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = std::polar(1.0, -std::numbers::pi / 2);
  d(1, 1) = std::polar(1.0, std::numbers::pi / 2);
  return rotation(axis) * d * rotation(-axis);
}

// Modes (beam H, beam V, loss H, loss V); pass axis (cos a, sin a).
Eigen::MatrixXcd polarizer_map(double a) {
  Eigen::Vector2cd pass(std::cos(a), std::sin(a));
  const Eigen::Matrix2cd pp = pass * pass.adjoint();
  const Eigen::Matrix2cd pb = Eigen::Matrix2cd::Identity() - pp;
  Eigen::MatrixXcd w(4, 4);
  w << pp, pb, pb, pp;
  return w.transpose();
}

// Modes (1H, 1V, 2H, 2V).
Eigen::MatrixXcd beamsplitter_map(double t, double phi) {
  const double st = std::sqrt(t);
  const double sr = std::sqrt(1.0 - t);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(4, 4);
  for (int p = 0; p < 2; ++p) {
    c(p, p) = st;
    c(p, 2 + p) = std::polar(sr, phi);
    c(2 + p, p) = -std::polar(sr, -phi);
    c(2 + p, 2 + p) = st;
  }
  return c;
}

}  // namespace

int DenseBasis::find(const Occ& occ) const {
  auto it = index.find(occ);
  return it == index.end() ? -1 : it->second;
}

DenseBasis enumerate_basis(int modes, int cutoff) {
  DenseBasis b;
  b.modes = modes;
  b.cutoff = cutoff;
  Occ prefix;
  enumerate(modes, cutoff, prefix, b.states);
  for (std::size_t i = 0; i < b.states.size(); ++i) b.index.emplace(b.states[i], static_cast<int>(i));
  return b;
}

Eigen::MatrixXcd creation_matrix(const DenseBasis& basis, int mode) {
  const int d = basis.dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    Occ o = basis.states[at(s)];
    if (total(o) >= basis.cutoff) continue;
    const int n = o[at(mode)];
    o[at(mode)] = n + 1;
    m(basis.find(o), s) = std::sqrt(static_cast<double>(n + 1));
  }
  return m;
}

Complex permanent(const Eigen::MatrixXcd& m) {
  const auto n = static_cast<int>(m.rows());
  if (n == 0) return 1.0;
  // Ryser: perm = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} m_ij.
  Complex sum = 0.0;
  for (unsigned subset = 1; subset < (1u << n); ++subset) {
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) {
      Complex row = 0.0;
      for (int j = 0; j < n; ++j) {
        if (subset & (1u << j)) row += m(i, j);
      }
      prod *= row;
    }
    const int bits = std::popcount(subset);
    sum += ((n - bits) % 2 == 0 ? 1.0 : -1.0) * prod;
  }
  return sum;
}

Eigen::MatrixXcd fock_unitary(const Eigen::MatrixXcd& creation_map, const DenseBasis& basis) {
  const int d = basis.dimension();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    const Occ& in = basis.states[at(n)];
    std::vector<int> rows;
    double norm = 1.0;
    for (int i = 0; i < basis.modes; ++i) {
      for (int k = 0; k < in[at(i)]; ++k) rows.push_back(i);
      norm *= factorial(in[at(i)]);
    }
    for (int m = 0; m < d; ++m) {
      const Occ& out = basis.states[at(m)];
      if (total(out) != total(in)) continue;
      std::vector<int> cols;
      double norm_m = 1.0;
      for (int j = 0; j < basis.modes; ++j) {
        for (int k = 0; k < out[at(j)]; ++k) cols.push_back(j);
        norm_m *= factorial(out[at(j)]);
      }
      Eigen::MatrixXcd sub(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
          sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = creation_map(rows[r], cols[c]);
        }
      }
      u(m, n) = permanent(sub) / std::sqrt(norm * norm_m);
    }
  }
  return u;
}

Eigen::VectorXcd spdc_state(double coupling, int max_pairs, const DenseBasis& basis, double* discarded) {
  const DenseBasis big = enumerate_basis(4, 2 * max_pairs + 2);
  const Eigen::MatrixXcd& g = pair_generator(big);
  // exp restricted to the block reachable from vacuum (n0 = n3, n1 = n2), which
  // the generator leaves invariant.
  std::vector<int> block;
  for (int s = 0; s < big.dimension(); ++s) {
    const Occ& o = big.states[at(s)];
    if (o[0] == o[3] && o[1] == o[2]) block.push_back(s);
  }
  const auto nb = static_cast<Eigen::Index>(block.size());
  Eigen::MatrixXcd k(nb, nb);
  for (Eigen::Index r = 0; r < nb; ++r) {
    for (Eigen::Index c = 0; c < nb; ++c) {
      const int br = block[at(static_cast<int>(r))];
      const int bc = block[at(static_cast<int>(c))];
      k(r, c) = coupling * (g(br, bc) - std::conj(g(bc, br)));
    }
  }
  const Eigen::MatrixXcd e = k.exp();
  const int vac = static_cast<int>(std::find(block.begin(), block.end(), big.find(Occ(4, 0))) - block.begin());

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(basis.dimension());
  double lost = 0.0;
  for (Eigen::Index r = 0; r < nb; ++r) {
    const Occ& o = big.states[at(block[at(static_cast<int>(r))])];
    const Complex a = e(r, vac);
    if (total(o) > 2 * max_pairs) {
      lost += std::norm(a);
    } else {
      out(basis.find(o)) = a;
    }
  }
  out /= out.norm();
  out *= std::polar(1.0, -std::arg(out(basis.find(Occ(4, 0)))));
  if (discarded) *discarded = lost;
  return out;
}

std::vector<double> spdc_amplitudes(double coupling, int max_pairs) {
  const DenseBasis b = enumerate_basis(4, 2 * max_pairs);
  const Eigen::VectorXcd psi = spdc_state(coupling, max_pairs, b);
  std::vector<double> a(at(max_pairs + 1), 0.0);
  for (int s = 0; s < b.dimension(); ++s) {
    const Occ& o = b.states[at(s)];
    a[at(o[0] + o[1])] += std::norm(psi(s));
  }
  for (auto& x : a) x = std::sqrt(x);
  return a;
}

double threshold_click(int n, double efficiency) { return 1.0 - std::pow(1.0 - efficiency, n); }

double number_resolved(int k, int n, double efficiency) {
  if (k < 0 || k > n) return 0.0;
  return binomial(n, k) * std::pow(efficiency, k) * std::pow(1.0 - efficiency, n - k);
}

double cascade_clicks(int clicks, int stages, int n, double efficiency) {
  double p = 0.0;
  for (int m = 0; m <= n; ++m) {
    // m photons spread uniformly over `stages` detectors; exactly `clicks` fire.
    double onto = 0.0;
    for (int j = 0; j <= clicks; ++j) {
      const double frac = static_cast<double>(clicks - j) / stages;
      onto += (j % 2 == 0 ? 1.0 : -1.0) * binomial(clicks, j) * std::pow(frac, m);
    }
    p += number_resolved(m, n, efficiency) * binomial(stages, clicks) * onto;
  }
  return p;
}

Result run(const SetupConfig& config, const Scenario& scenario) {
  if (std::holds_alternative<CouplingRatioSweep>(scenario)) throw InvalidArgument("sweep is not a single scenario");
  config.validate();
  const int n_cut = config.cutoff;
  const int pairs = n_cut / 2;
  // 0:1H 1:1V 2:2H 3:2V 4:3H 5:3V 6:4H 7:4V 8:LH 9:LV
  const DenseBasis global = enumerate_basis(10, n_cut);
  const DenseBasis src = enumerate_basis(4, 2 * pairs);
  const Eigen::VectorXcd s1 = spdc_state(config.coupling_I, pairs, src);
  const Eigen::VectorXcd s2 = spdc_state(config.coupling_II, pairs, src);
  const int pos1[] = {0, 1, 6, 7};
  const int pos2[] = {2, 3, 4, 5};

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(global.dimension());
  double kept = 0.0;
  for (int a = 0; a < src.dimension(); ++a) {
    if (s1(a) == Complex{0.0}) continue;
    for (int b = 0; b < src.dimension(); ++b) {
      if (s2(b) == Complex{0.0}) continue;
      Occ o(10, 0);
      for (int k = 0; k < 4; ++k) {
        o[at(pos1[k])] = src.states[at(a)][at(k)];
        o[at(pos2[k])] = src.states[at(b)][at(k)];
      }
      if (total(o) > n_cut) continue;
      psi(global.find(o)) += s1(a) * s2(b);
      kept += std::norm(s1(a) * s2(b));
    }
  }
  if (1.0 - kept > config.max_discarded_weight) throw TruncationError("joint truncation exceeds the guard");
  psi /= psi.norm();

  if (config.preparation == Preparation::polarizer_on_beam_1) {
    psi = apply_element(polarizer_map(config.input_angle), {0, 1, 8, 9}, global, psi);
  } else {
    psi = apply_element(polarizer_map(config.input_angle + std::numbers::pi / 2), {6, 7, 8, 9}, global, psi);
  }
  psi = apply_element(beamsplitter_map(0.5, config.bs_phase), {0, 1, 2, 3}, global, psi);

  auto p_weight = [&](int n) {
    if (const auto* s = std::get_if<ThreefoldNumberResolvedP>(&scenario)) {
      return number_resolved(s->n, n, config.p.efficiency);
    }
    if (const auto* c = std::get_if<ThreefoldCascadeP>(&scenario)) {
      return cascade_clicks(1, c->stages, n, config.p.efficiency);
    }
    return threshold_click(n, config.p.efficiency);
  };

  const DenseBasis b3 = enumerate_basis(2, n_cut);
  std::map<Occ, std::vector<std::pair<int, Complex>>> groups;
  std::map<Occ, double> weights;
  for (int s = 0; s < global.dimension(); ++s) {
    if (std::abs(psi(s)) == 0.0) continue;
    const Occ& o = global.states[at(s)];
    const double w = p_weight(o[6] + o[7]) * threshold_click(o[0] + o[1], config.f1.efficiency) *
                     threshold_click(o[2] + o[3], config.f2.efficiency);
    Occ traced = o;
    traced.erase(traced.begin() + 4, traced.begin() + 6);
    groups[traced].emplace_back(b3.find({o[4], o[5]}), psi(s));
    weights[traced] = w;
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(b3.dimension(), b3.dimension());
  for (const auto& [key, members] : groups) {
    const double w = weights[key];
    for (const auto& [i, x] : members) {
      for (const auto& [j, y] : members) rho(i, j) += w * x * std::conj(y);
    }
  }
  double prob = rho.trace().real();
  if (prob < 1e-14) throw ZeroProbability("oracle: zero-probability pattern", prob);
  rho /= prob;

  if (std::holds_alternative<Fourfold>(scenario)) {
    const Eigen::Matrix2cd jones =
        config.bob_analyzer_angle ? half_wave(*config.bob_analyzer_angle / 2) : Eigen::Matrix2cd::Identity();
    const Eigen::MatrixXcd v = fock_unitary(jones.transpose(), b3);
    Eigen::VectorXd root(b3.dimension());
    for (int s = 0; s < b3.dimension(); ++s) {
      const double c1 = threshold_click(b3.states[at(s)][0], config.d1.efficiency);
      const double c2 = threshold_click(b3.states[at(s)][1], config.d2.efficiency);
      root(s) = std::sqrt(c1 * (1.0 - c2) + (1.0 - c1) * c2);
    }
    const Eigen::MatrixXcd sqrt_e = v.adjoint() * root.cast<Complex>().asDiagonal() * v;
    rho = sqrt_e * rho * sqrt_e;
    const double p = rho.trace().real();
    if (p < 1e-14) throw ZeroProbability("oracle: no single click at Bob", p);
    rho /= p;
    prob *= p;
  } else if (const auto* q = std::get_if<ThreefoldQndBob>(&scenario)) {
    for (int r = 0; r < b3.dimension(); ++r) {
      for (int c = 0; c < b3.dimension(); ++c) {
        if (total(b3.states[at(r)]) != q->n || total(b3.states[at(c)]) != q->n) rho(r, c) = 0.0;
      }
    }
    const double p = rho.trace().real();
    if (p < 1e-14) throw ZeroProbability("oracle: empty photon-number projection", p);
    rho /= p;
    prob *= p;
  }

  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(b3.dimension());
  phi(b3.find({1, 0})) = std::cos(config.input_angle);
  phi(b3.find({0, 1})) = std::sin(config.input_angle);
  Result r;
  r.probability = prob;
  r.fidelity = (phi.adjoint() * rho * phi)(0, 0).real();
  r.vacuum_weight = rho(b3.find({0, 0}), b3.find({0, 0})).real();
  r.rho3 = rho;
  r.rho3_basis = b3.states;
  return r;
}

double lagrange_at_zero(std::span<const double> x, std::span<const double> y) {
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double l = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j != i) l *= x[j] / (x[j] - x[i]);
    }
    v += y[i] * l;
  }
  return v;
}

double leading_order_fidelity(const SetupConfig& config, const Scenario& scenario, std::span<const double> couplings) {
  const double larger = std::max(config.coupling_I, config.coupling_II);
  std::vector<double> x;
  std::vector<double> f;
  for (const double g : couplings) {
    SetupConfig c = config;
    c.coupling_I = config.coupling_I / larger * g;
    c.coupling_II = config.coupling_II / larger * g;
    x.push_back(g * g);
    f.push_back(run(c, scenario).fidelity);
  }
  return lagrange_at_zero(x, f);
}

}  // namespace lotsim::oracle
