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

#include "hbsa/optics.hpp"

#include <stdexcept>

namespace hbsa::optics {

namespace {

void require_role(const PureState& s, const std::string& label, Role role) {
  if (s.subsystem(label).role != role) {
    throw std::invalid_argument("'" + label + "' is not a " + to_string(role) + " subsystem");
  }
}

}  // namespace

void PortMap::validate() const {
  if (in[0] == in[1] || out[0] == out[1]) throw std::invalid_argument("port names must differ");
}

LinearMap beam_splitter(const std::string& spatial) {
  return LinearMap({spatial}, gates::hadamard());
}

PureState apply_beam_splitter(const PureState& s, const std::string& spatial, const PortMap& ports) {
  ports.validate();
  require_role(s, spatial, Role::spatial_mode);
  const auto& levels = s.subsystem(spatial).levels;
  if (levels.size() != 2 || levels[0] != ports.in[0] || levels[1] != ports.in[1]) {
    throw std::invalid_argument("beam splitter inputs do not match modes of '" + spatial + "'");
  }
  return apply(beam_splitter(spatial), s).with_levels(spatial, {ports.out[0], ports.out[1]});
}

LinearMap hwp_z(const std::string& polarization) {
  return LinearMap({polarization}, gates::pauli_z());
}

LinearMap hwp_x(const std::string& polarization) {
  return LinearMap({polarization}, gates::pauli_x());
}

const char* to_string(Click click) { return click == Click::H ? "H" : "V"; }

std::vector<Vector> hv_basis() { return {kets::plus(), kets::minus()}; }

ClickResult measure_hv(const PureState& s, const std::string& polarization, Rng& rng) {
  require_role(s, polarization, Role::polarization);
  Measurement m = measure(s, polarization, hv_basis(), rng);
  return ClickResult{m.outcome == 0 ? Click::H : Click::V, std::move(m.state)};
}

PortResult detect_port(const PureState& s, const std::string& spatial, Rng& rng) {
  require_role(s, spatial, Role::spatial_mode);
  Measurement m = measure(s, spatial, {kets::zero(), kets::one()}, rng);
  return PortResult{s.subsystem(spatial).levels[static_cast<std::size_t>(m.outcome)],
                    std::move(m.state)};
}

}  // namespace hbsa::optics
