// Copyright 2026 The hbsa Authors
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

#include "hbsa/fidelity.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "hbsa/bell.hpp"
#include "hbsa/optics.hpp"
#include "hbsa/protocol.hpp"
#include "hbsa/qd_cavity.hpp"

namespace hbsa::fidelity {

namespace {

using Scatter = std::function<LinearMap(const std::string& photon, const std::string& spin)>;

PureState with_spin(const PureState& s, const std::string& spin) {
  return tensor(s, PureState::single(cavity::spin_subsystem(spin), kets::plus()));
}

// Two reflections on one arm plus the restoring Z plate.
PureState arm(const PureState& s, const Photon& p, int level, const std::string& spin,
              const Scatter& scatter) {
  const LinearMap once = scatter(p.polarization, spin);
  const LinearMap twice = once.then(once);
  PureState out = apply(conditioned(twice, p.spatial, 2, level), s);
  return apply(conditioned(optics::hwp_z(p.polarization), p.spatial, 2, level), out);
}

// Both spatial QND stages without measurement. Readout photons are coupled
// (and kept) only when `readout` is set.
PureState spatial_stages(const Scatter& scatter, bool readout) {
  const protocol::AnalyzerSetup setup;
  const HyperBellId input = HyperBellId::of(BellKind::phi, BellSign::plus, BellKind::phi,
                                            BellSign::plus);
  PureState st = protocol::prepare_hyper_bell(input, setup);

  auto couple = [&](const PureState& s, const std::string& spin) {
    if (!readout) return s;
    const std::string aux = spin + ".aux";
    return cavity::couple_readout_photon(s, spin, aux, scatter(aux, spin));
  };

  st = with_spin(st, setup.qd1);
  st = arm(st, setup.first, 0, setup.qd1, scatter);
  st = arm(st, setup.second, 1, setup.qd1, scatter);
  st = couple(st, setup.qd1);

  st = apply(optics::beam_splitter(setup.first.spatial), st);
  st = apply(optics::beam_splitter(setup.second.spatial), st);
  st = with_spin(with_spin(st, setup.qd2), setup.qd3);
  st = arm(st, setup.first, 0, setup.qd2, scatter);
  st = arm(st, setup.second, 1, setup.qd3, scatter);
  st = couple(st, setup.qd2);
  return couple(st, setup.qd3);
}

PureState fidelity_circuit(const Scatter& scatter) {
  const protocol::AnalyzerSetup setup;
  PureState st = spatial_stages(scatter, true);
  st = with_spin(st, setup.qd4);
  st = apply(scatter(setup.first.polarization, setup.qd4), st);
  st = apply(scatter(setup.second.polarization, setup.qd4), st);
  const std::string aux = setup.qd4 + ".aux";
  return cavity::couple_readout_photon(st, setup.qd4, aux, scatter(aux, setup.qd4));
}

PureState efficiency_circuit(const Scatter& scatter) {
  const protocol::AnalyzerSetup setup;
  PureState st = spatial_stages(scatter, false);
  const std::string first_spin = setup.qd4 + ".first";
  const std::string second_spin = setup.qd4 + ".second";
  st = with_spin(with_spin(st, first_spin), second_spin);
  st = apply(scatter(setup.first.polarization, first_spin), st);
  return apply(scatter(setup.second.polarization, second_spin), st);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace

void LossPoint::validate() const {
  if (!(zeta >= 0.0 && zeta <= 1.0) || !(xi >= 0.0 && xi <= 1.0)) {
    throw std::invalid_argument("reflection amplitudes must lie in [0, 1]");
  }
}

double closed_form_fidelity(const LossPoint& p) {
  p.validate();
  // The denominator is the numerator's bracket evaluated at squared amplitudes.
  auto bracket = [](double z, double x) {
    const double e = z * x;
    const double z2 = z * z;
    const double x2 = x * x;
    const double z3 = z2 * z;
    const double x3 = x2 * x;
    const double z4 = z2 * z2;
    const double x4 = x2 * x2;
    const double z5 = z4 * z;
    const double x5 = x4 * x;
    const double e2 = e * e;
    const double e3 = e2 * e;
    const double e4 = e2 * e2;
    return (z5 + x5) * (z5 + x5) + 22.0 * e4 * (z + x) * (z + x) +
           4.0 * e * (z4 - x4) * (z4 - x4) + 16.0 * e3 * (z2 - x2) * (z2 - x2) +
           9.0 * e2 * (z3 + x3) * (z3 + x3);
  };
  const double numerator = bracket(p.zeta, p.xi);
  const double denominator = bracket(p.zeta * p.zeta, p.xi * p.xi);
  if (denominator == 0.0) throw std::domain_error("fidelity undefined at zeta = xi = 0");
  return numerator * numerator / denominator / 128.0;
}

double closed_form_efficiency(const LossPoint& p) {
  p.validate();
  const double z2 = p.zeta * p.zeta;
  const double x2 = p.xi * p.xi;
  const double quartic = 0.5 * (z2 * z2 + x2 * x2);
  const double quadratic = 0.5 * (z2 + x2);
  return quartic * quartic * quadratic * quadratic;
}

OracleResult circuit_oracle(const LossPoint& p) {
  p.validate();
  const Scatter ideal = [](const std::string& photon, const std::string& spin) {
    return cavity::scatter_ideal(photon, spin);
  };
  const Scatter lossy = [&p](const std::string& photon, const std::string& spin) {
    return cavity::scatter_lossy(photon, spin, p.zeta, p.xi);
  };

  OracleResult out;
  const PureState reference = fidelity_circuit(ideal);
  const PureState actual = fidelity_circuit(lossy);
  const double survived = actual.norm_squared();
  out.fidelity = survived > 0.0 ? std::norm(inner(reference, actual)) /
                                      (reference.norm_squared() * survived)
                                : 0.0;
  out.efficiency = efficiency_circuit(lossy).norm_squared();
  return out;
}

void AxisRange::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max)) throw std::invalid_argument("range not finite");
  if (points < 1) throw std::invalid_argument("range needs at least one point");
  if (min < 0.0) throw std::invalid_argument("range must be non-negative");
  if (max < min) throw std::invalid_argument("range maximum below minimum");
  if (points == 1 && max != min) throw std::invalid_argument("single-point range needs min == max");
}

std::vector<double> AxisRange::values() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] =
        points == 1 ? min : min + (max - min) * static_cast<double>(i) / (points - 1);
  }
  out.back() = max;
  return out;
}

std::vector<SweepRow> sweep(const SweepConfig& config, unsigned workers) {
  if (!(config.gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
  const auto gs = config.g_over_ktot.values();
  const auto ks = config.ks_over_k.values();
  std::vector<SweepRow> rows(gs.size() * ks.size());

  auto fill = [&](std::size_t index) {
    const double g = gs[index / ks.size()];
    const double k = ks[index % ks.size()];
    const auto point =
        cavity::operating_point(cavity::CavityParams::from_sweep_axes(g, k, config.gamma));
    const LossPoint loss{point.zeta, point.xi};
    rows[index] = SweepRow{g, k, point.zeta, point.xi, closed_form_fidelity(loss),
                           closed_form_efficiency(loss)};
  };

  workers = std::max(1u, workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) fill(i);
    return rows;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < rows.size(); i += workers) fill(i);
    });
  }
  pool.clear();
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "g_over_ktot,ks_over_k,zeta,xi,F,eta\n";
  for (const auto& r : rows) {
    os << format_double(r.g_over_ktot) << ',' << format_double(r.ks_over_k) << ','
       << format_double(r.zeta) << ',' << format_double(r.xi) << ',' << format_double(r.F) << ','
       << format_double(r.eta) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "g_over_ktot,ks_over_k,zeta,xi,F,eta") {
    throw std::runtime_error("sweep CSV: missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    double v[6];
    for (double& x : v) {
      if (!std::getline(fields, cell, ',')) throw std::runtime_error("sweep CSV: short row");
      std::size_t used = 0;
      x = std::stod(cell, &used);
      if (used != cell.size()) throw std::runtime_error("sweep CSV: malformed number '" + cell + "'");
    }
    rows.push_back(SweepRow{v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  return rows;
}

}  // namespace hbsa::fidelity
