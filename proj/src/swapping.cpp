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

#include "hbsa/swapping.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "hbsa/optics.hpp"

namespace hbsa::swapping {

namespace {

constexpr PolOp kPolOps[] = {PolOp::identity, PolOp::z, PolOp::x, PolOp::minus_i_y};

Matrix pol_matrix(PolOp op) {
  Matrix m(2, 2);
  switch (op) {
    case PolOp::identity:
      return gates::identity(2);
    case PolOp::z:
      return gates::pauli_z();
    case PolOp::x:
      return gates::pauli_x();
    case PolOp::minus_i_y:
      m << 0, 1, -1, 0;
      return m;
  }
  throw std::logic_error("unknown polarization op");
}

std::vector<std::string> ad_order() {
  return {photon_a().polarization, photon_d().polarization, photon_a().spatial,
          photon_d().spatial};
}

// Index: 4 * pol (phi+, phi-, psi+, psi-) + spat (same order).
const std::array<CorrectionOp, 16> kCorrectionTable = [] {
  constexpr std::array<std::pair<bool, bool>, 4> spatial{
      {{false, false}, {true, false}, {false, true}, {true, true}}};
  std::array<CorrectionOp, 16> table{};
  for (int p = 0; p < 4; ++p) {
    for (int s = 0; s < 4; ++s) {
      table[static_cast<std::size_t>(4 * p + s)] =
          CorrectionOp{kPolOps[p], spatial[static_cast<std::size_t>(s)].first,
                       spatial[static_cast<std::size_t>(s)].second};
    }
  }
  return table;
}();

}  // namespace

const Photon& photon_a() {
  static const Photon p = Photon::make("A", "a");
  return p;
}
const Photon& photon_b() {
  static const Photon p = Photon::make("B", "b");
  return p;
}
const Photon& photon_c() {
  static const Photon p = Photon::make("C", "c");
  return p;
}
const Photon& photon_d() {
  static const Photon p = Photon::make("D", "d");
  return p;
}

protocol::AnalyzerSetup middle_pair_setup() {
  protocol::AnalyzerSetup setup;
  setup.first = photon_b();
  setup.second = photon_c();
  setup.first_out = {"e1", "e2"};
  setup.second_out = {"f1", "f2"};
  return setup;
}

const char* to_string(PolOp op) {
  switch (op) {
    case PolOp::identity:
      return "I";
    case PolOp::z:
      return "Z";
    case PolOp::x:
      return "X";
    case PolOp::minus_i_y:
      return "-iY";
  }
  return "?";
}

std::vector<LinearMap> CorrectionOp::maps(const Photon& d) const {
  std::vector<LinearMap> out;
  out.emplace_back(std::vector<std::string>{d.polarization}, pol_matrix(pol));
  if (phase_on_mode1) {
    out.emplace_back(std::vector<std::string>{d.spatial}, -gates::pauli_z());
  }
  if (swap_modes) out.emplace_back(std::vector<std::string>{d.spatial}, gates::pauli_x());
  return out;
}

std::string CorrectionOp::to_string() const {
  std::string s = swapping::to_string(pol);
  if (phase_on_mode1) s += " + phase(d1)";
  if (swap_modes) s += " + swap(d1,d2)";
  return s;
}

PureState prepare_pairs() {
  const BellId pol{Dof::polarization, BellKind::phi, BellSign::plus};
  const BellId spat{Dof::spatial, BellKind::phi, BellSign::plus};
  const PureState ab = tensor(bell_state(pol, photon_a(), photon_b()),
                              bell_state(spat, photon_a(), photon_b()));
  const PureState cd = tensor(bell_state(pol, photon_c(), photon_d()),
                              bell_state(spat, photon_c(), photon_d()));
  return tensor(ab, cd).canonical();
}

PureState expected_ad_state(const HyperBellId& outcome) {
  return tensor(bell_state(outcome.pol, photon_a(), photon_d()),
                bell_state(outcome.spat, photon_a(), photon_d()));
}

PureState target_state() {
  return expected_ad_state(
      HyperBellId::of(BellKind::phi, BellSign::plus, BellKind::phi, BellSign::plus));
}

SwapOnce swap_once(Rng& rng) {
  const auto setup = middle_pair_setup();
  auto analysis = protocol::analyze(prepare_pairs(), rng, setup);
  PureState rest = analysis.state;
  for (const auto* label : {&photon_b().polarization, &photon_c().polarization,
                            &photon_b().spatial, &photon_c().spatial}) {
    rest = rest.detach(*label);
  }
  return SwapOnce{analysis.result.identified, rest.reordered(ad_order())};
}

CorrectionOp correction_for(const HyperBellId& outcome) {
  return kCorrectionTable[static_cast<std::size_t>(outcome.index())];
}

std::array<CorrectionOp, 16> derive_correction_table() {
  std::array<CorrectionOp, 16> table{};
  const PureState target = target_state();
  for (const auto& id : all_hyper_bell_ids()) {
    const PureState collapsed = expected_ad_state(id);
    int found = 0;
    for (PolOp pol : kPolOps) {
      for (int mask = 0; mask < 4; ++mask) {
        const CorrectionOp candidate{pol, (mask & 1) != 0, (mask & 2) != 0};
        if (equal_up_to_global_phase(apply_correction(collapsed, candidate), target)) {
          table[static_cast<std::size_t>(id.index())] = candidate;
          ++found;
        }
      }
    }
    if (found != 1) {
      throw std::logic_error("correction for " + id.name() + " is not unique (" +
                             std::to_string(found) + " candidates)");
    }
  }
  return table;
}

PureState apply_correction(const PureState& ad_state, const CorrectionOp& op) {
  PureState out = ad_state;
  for (const auto& m : op.maps()) out = apply(m, out);
  return out;
}

SwapResult run_swap(Rng& rng) {
  SwapOnce once = swap_once(rng);
  const CorrectionOp op = correction_for(once.outcome);
  PureState final_state = apply_correction(once.ad_state, op);
  const double f = std::norm(inner(target_state(), final_state));
  return SwapResult{once.outcome, op, std::move(final_state), f};
}

PolarizationOnlySwap polarization_only_swap(Rng& rng) {
  const auto setup = middle_pair_setup();
  auto stage = protocol::polarization_stage(prepare_pairs(), rng, setup);
  return PolarizationOnlySwap{protocol::decode_polarization(stage.flag, stage.clicks),
                              std::move(stage.state)};
}

double ad_spatial_purity(const PureState& s) {
  const auto rho = reduced_density(s, {photon_a().spatial, photon_d().spatial});
  return rho.purity() / (rho.trace() * rho.trace());
}

Uniformity outcome_uniformity(const std::array<long, 16>& counts) {
  long total = 0;
  for (long c : counts) total += c;
  if (total <= 0) throw std::invalid_argument("no outcomes to test");
  const double expected = static_cast<double>(total) / 16.0;
  Uniformity out;
  for (long c : counts) {
    const double d = static_cast<double>(c) - expected;
    out.chi_square += d * d / expected;
  }
  out.p_value = boost::math::gamma_q(15.0 / 2.0, out.chi_square / 2.0);
  return out;
}

}  // namespace hbsa::swapping
