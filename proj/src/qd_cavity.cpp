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

#include "hbsa/qd_cavity.hpp"

#include <cmath>
#include <stdexcept>

namespace hbsa::cavity {

namespace {

constexpr cplx kI{0.0, 1.0};

// Diagonal over (photon, spin) = (R,up), (R,down), (L,up), (L,down).
Matrix spin_dependent_diagonal(cplx cold, cplx hot) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = cold;
  m(1, 1) = hot;
  m(2, 2) = hot;
  m(3, 3) = cold;
  return m;
}

}  // namespace

void CavityParams::validate() const {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (!(g >= 0.0)) throw std::invalid_argument("g must be non-negative");
  if (!(kappa_s >= 0.0)) throw std::invalid_argument("kappa_s must be non-negative");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
  if (!std::isfinite(omega) || !std::isfinite(omega_c) || !std::isfinite(omega_x)) {
    throw std::invalid_argument("frequencies must be finite");
  }
}

CavityParams CavityParams::canonical(double g, double kappa_s, double gamma) {
  CavityParams p;
  p.kappa = 1.0;
  p.omega_c = 0.0;
  p.omega_x = 0.0;
  p.omega = 0.5;
  p.g = g;
  p.kappa_s = kappa_s;
  p.gamma = gamma;
  p.validate();
  return p;
}

CavityParams CavityParams::from_sweep_axes(double g_over_ktot, double ks_over_k, double gamma) {
  return canonical(g_over_ktot * (1.0 + ks_over_k), ks_over_k, gamma);
}

cplx hot_reflection(const CavityParams& p) {
  p.validate();
  const cplx dipole = kI * (p.omega_x - p.omega) + p.gamma / 2.0;
  const cplx field = kI * (p.omega_c - p.omega) + p.kappa / 2.0 + p.kappa_s / 2.0;
  const cplx denominator = dipole * field + p.g * p.g;
  if (denominator == cplx{0.0, 0.0}) {
    // Only reachable with an undamped, resonant dipole. At g = 0 the dipole
    // factor cancels and the cold-cavity value is the exact limit.
    if (p.g == 0.0) return cold_reflection(p);
    throw std::domain_error("hot_reflection: vanishing denominator");
  }
  return 1.0 - p.kappa * dipole / denominator;
}

cplx cold_reflection(const CavityParams& p) {
  p.validate();
  const cplx detuning = kI * (p.omega_c - p.omega);
  return (detuning - p.kappa / 2.0 + p.kappa_s / 2.0) / (detuning + p.kappa / 2.0 + p.kappa_s / 2.0);
}

ReflectionPoint operating_point(const CavityParams& p) {
  ReflectionPoint out;
  out.r_hot = hot_reflection(p);
  out.r_cold = cold_reflection(p);
  out.zeta = std::abs(out.r_cold);
  out.xi = std::abs(out.r_hot);
  out.phi0 = std::arg(out.r_cold);
  out.phih = std::arg(out.r_hot);
  out.dphi = out.phih - out.phi0;
  out.faraday = (out.phi0 - out.phih) / 2.0;
  return out;
}

LinearMap scatter_ideal(const std::string& photon, const std::string& spin) {
  return LinearMap({photon, spin}, spin_dependent_diagonal(1.0, kI), true);
}

LinearMap double_pass(const std::string& photon, const std::string& spin) {
  const LinearMap once = scatter_ideal(photon, spin);
  return once.then(once);
}

LinearMap scatter_lossy(const std::string& photon, const std::string& spin, double zeta, double xi) {
  if (!(zeta >= 0.0 && zeta <= 1.0) || !(xi >= 0.0 && xi <= 1.0)) {
    throw std::invalid_argument("scatter_lossy: reflection amplitudes must lie in [0, 1]");
  }
  return LinearMap({photon, spin}, spin_dependent_diagonal(zeta, xi * kI), false);
}

const char* to_string(SpinFlag flag) {
  return flag == SpinFlag::changed ? "changed" : "unchanged";
}

Subsystem spin_subsystem(const std::string& label) {
  return Subsystem(label, Role::qd_spin, {"up", "down"});
}

Subsystem auxiliary_subsystem(const std::string& label) {
  return Subsystem(label, Role::auxiliary_photon, {"R", "L"});
}

PureState couple_readout_photon(const PureState& s, const std::string& spin, const std::string& aux,
                                const LinearMap& scatter) {
  if (!s.has(spin) || s.subsystem(spin).role != Role::qd_spin) {
    throw std::invalid_argument("no QD spin '" + spin + "' in state");
  }
  PureState out = apply(LinearMap({spin}, gates::hadamard()), s);
  out = tensor(out, PureState::single(auxiliary_subsystem(aux), kets::plus()));
  return apply(scatter, out);
}

std::vector<Vector> readout_basis() {
  Vector up(2);
  up << M_SQRT1_2, kI * M_SQRT1_2;
  Vector down(2);
  down << M_SQRT1_2, -kI * M_SQRT1_2;
  return {up, down};
}

SpinReadout spin_readout(const PureState& s, const std::string& spin, Rng& rng) {
  const std::string aux = spin + ".aux";
  const PureState coupled = couple_readout_photon(s, spin, aux, scatter_ideal(aux, spin));
  const auto basis = readout_basis();
  Measurement m = measure(coupled, aux, basis, rng);

  // Outcome 0 projects the spin onto |up>, outcome 1 onto |down>.
  PureState rest = m.state.contract(aux, basis[static_cast<std::size_t>(m.outcome)]);
  rest = rest.contract(spin, m.outcome == 0 ? kets::zero() : kets::one());
  rest = tensor(rest, PureState::single(spin_subsystem(spin), kets::plus()));

  SpinReadout out;
  out.flag = m.outcome == 0 ? SpinFlag::unchanged : SpinFlag::changed;
  out.state = std::move(rest);
  out.probability = m.probability;
  return out;
}

}  // namespace hbsa::cavity
