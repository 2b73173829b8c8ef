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

#include "hbsa/protocol.hpp"

#include <sstream>
#include <stdexcept>

namespace hbsa::protocol {

namespace {

using cavity::double_pass;
using cavity::scatter_ideal;
using cavity::spin_readout;
using cavity::spin_subsystem;

PureState add_fresh_spin(const PureState& s, const std::string& spin) {
  if (s.has(spin)) throw std::logic_error("QD spin '" + spin + "' is already in use");
  return tensor(s, PureState::single(spin_subsystem(spin), kets::plus()));
}

// The spin comes back from spin_readout re-initialized to |+>.
PureState discard_spin(const PureState& s, const std::string& spin) {
  return s.contract(spin, kets::plus());
}

void require_photon(const PureState& s, const Photon& p) {
  if (!s.has(p.polarization) || !s.has(p.spatial)) {
    throw std::invalid_argument("photon " + p.name + " is not part of the state");
  }
}

// Double pass on one arm followed by the Z plate that undoes the photon's
// polarization flip. Net effect: the spin flips iff the photon is on `level`.
PureState qnd_arm(const PureState& s, const Photon& p, int level, const std::string& spin) {
  const LinearMap pass = conditioned(double_pass(p.polarization, spin), p.spatial, 2, level);
  const LinearMap plate = conditioned(optics::hwp_z(p.polarization), p.spatial, 2, level);
  return apply(plate, apply(pass, s));
}

}  // namespace

bool MeasurementRecord::ports_consistent(const AnalyzerSetup& setup) const {
  const bool first_on_qd2 = ports[0] == setup.first_out[0];
  const bool second_on_qd3 = ports[1] == setup.second_out[1];
  const bool first_known = first_on_qd2 || ports[0] == setup.first_out[1];
  const bool second_known = second_on_qd3 || ports[1] == setup.second_out[0];
  return first_known && second_known && first_on_qd2 == (qd2 == SpinFlag::changed) &&
         second_on_qd3 == (qd3 == SpinFlag::changed);
}

std::string MeasurementRecord::to_string() const {
  std::ostringstream os;
  os << "qd1=" << cavity::to_string(qd1) << " qd2=" << cavity::to_string(qd2)
     << " qd3=" << cavity::to_string(qd3) << " qd4=" << cavity::to_string(qd4) << " ports=("
     << ports[0] << "," << ports[1] << ") clicks=(" << optics::to_string(clicks[0]) << ","
     << optics::to_string(clicks[1]) << ")";
  return os.str();
}

PureState prepare_hyper_bell(const HyperBellId& id, const AnalyzerSetup& setup) {
  return tensor(bell_state(id.pol, setup.first, setup.second),
                bell_state(id.spat, setup.first, setup.second));
}

ParityStageResult spatial_parity_stage(const PureState& s, Rng& rng, const AnalyzerSetup& setup) {
  require_photon(s, setup.first);
  require_photon(s, setup.second);
  PureState st = add_fresh_spin(s, setup.qd1);
  st = qnd_arm(st, setup.first, 0, setup.qd1);   // a1
  st = qnd_arm(st, setup.second, 1, setup.qd1);  // b2
  auto readout = spin_readout(st, setup.qd1, rng);
  return ParityStageResult{readout.flag, discard_spin(readout.state, setup.qd1)};
}

PhaseStageResult spatial_phase_stage(const PureState& s, Rng& rng, const AnalyzerSetup& setup) {
  require_photon(s, setup.first);
  require_photon(s, setup.second);
  PureState st = optics::apply_beam_splitter(s, setup.first.spatial,
                                             {setup.first.modes, setup.first_out});
  st = optics::apply_beam_splitter(st, setup.second.spatial,
                                   {setup.second.modes, setup.second_out});
  st = add_fresh_spin(st, setup.qd2);
  st = add_fresh_spin(st, setup.qd3);
  st = qnd_arm(st, setup.first, 0, setup.qd2);   // c1
  st = qnd_arm(st, setup.second, 1, setup.qd3);  // d2

  auto r2 = spin_readout(st, setup.qd2, rng);
  auto r3 = spin_readout(r2.state, setup.qd3, rng);
  st = discard_spin(discard_spin(r3.state, setup.qd2), setup.qd3);

  auto port_first = optics::detect_port(st, setup.first.spatial, rng);
  auto port_second = optics::detect_port(port_first.state, setup.second.spatial, rng);
  return PhaseStageResult{r2.flag, r3.flag, {port_first.port, port_second.port},
                          std::move(port_second.state)};
}

PolarizationStageResult polarization_stage(const PureState& s, Rng& rng,
                                           const AnalyzerSetup& setup) {
  require_photon(s, setup.first);
  require_photon(s, setup.second);
  PureState st = add_fresh_spin(s, setup.qd4);
  st = apply(scatter_ideal(setup.first.polarization, setup.qd4), st);
  st = apply(scatter_ideal(setup.second.polarization, setup.qd4), st);
  auto readout = spin_readout(st, setup.qd4, rng);
  st = discard_spin(readout.state, setup.qd4);

  auto click_first = optics::measure_hv(st, setup.first.polarization, rng);
  auto click_second = optics::measure_hv(click_first.state, setup.second.polarization, rng);
  return PolarizationStageResult{readout.flag, {click_first.click, click_second.click},
                                 std::move(click_second.state)};
}

BellId decode_spatial(SpinFlag qd1, SpinFlag qd2, SpinFlag qd3) {
  const BellKind kind = qd1 == SpinFlag::changed ? BellKind::phi : BellKind::psi;
  const BellSign sign = qd2 != qd3 ? BellSign::plus : BellSign::minus;
  return BellId{Dof::spatial, kind, sign};
}

BellId decode_polarization(SpinFlag qd4, const std::array<Click, 2>& clicks) {
  const bool same = clicks[0] == clicks[1];
  if (qd4 == SpinFlag::unchanged) {
    return BellId{Dof::polarization, BellKind::psi, same ? BellSign::plus : BellSign::minus};
  }
  return BellId{Dof::polarization, BellKind::phi, same ? BellSign::minus : BellSign::plus};
}

HyperBellId decode(const MeasurementRecord& record) {
  return HyperBellId{decode_polarization(record.qd4, record.clicks),
                     decode_spatial(record.qd1, record.qd2, record.qd3)};
}

Analysis analyze(const PureState& s, Rng& rng, const AnalyzerSetup& setup) {
  MeasurementRecord record;
  auto parity = spatial_parity_stage(s, rng, setup);
  record.qd1 = parity.flag;
  auto phase = spatial_phase_stage(parity.state, rng, setup);
  record.qd2 = phase.qd2;
  record.qd3 = phase.qd3;
  record.ports = phase.ports;
  auto pol = polarization_stage(phase.state, rng, setup);
  record.qd4 = pol.flag;
  record.clicks = pol.clicks;
  return Analysis{HbsaResult{decode(record), record}, std::move(pol.state)};
}

HbsaResult run_hbsa(const HyperBellId& id, Rng& rng) {
  return analyze(prepare_hyper_bell(id), rng).result;
}

}  // namespace hbsa::protocol
