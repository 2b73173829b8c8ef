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

// Singly charged quantum dot in a one-sided microcavity.
//
// Steady-state (weak excitation) reflection coefficients for the hot cavity
// (dipole coupled to the incident circular polarization) and the cold cavity,
// plus the spin-conditioned scattering maps built on them. All frequencies
// and rates are in units of the cavity decay rate kappa.
//
// Spin selection rule: with the excess electron in |up>, an |L> photon sees
// the hot cavity and |R> the cold one; with |down> the roles swap. The
// protocol maps use the ideal relative phase pi/2 with the common cold phase
// factored out.

#pragma once

#include <string>

#include "hbsa/hilbert.hpp"

namespace hbsa::cavity {

struct CavityParams {
  double omega = 0.5;    // probe frequency
  double omega_c = 0.0;  // cavity mode
  double omega_x = 0.0;  // X- transition
  double g = 0.0;        // dipole-cavity coupling
  double kappa = 1.0;    // cavity field decay (input/output mirror)
  double kappa_s = 0.0;  // side leakage
  double gamma = 0.1;    // X- decay

  /// Throws std::invalid_argument unless kappa > 0 and g, kappa_s, gamma >= 0.
  void validate() const;

  /// Protocol operating point: omega = omega_c + kappa/2, omega_x = omega_c,
  /// kappa = 1.
  static CavityParams canonical(double g, double kappa_s, double gamma = 0.1);
  /// Same, with g given in units of (kappa + kappa_s) as on the sweep axes.
  static CavityParams from_sweep_axes(double g_over_ktot, double ks_over_k, double gamma = 0.1);
};

cplx hot_reflection(const CavityParams& p);
cplx cold_reflection(const CavityParams& p);

struct ReflectionPoint {
  cplx r_hot;
  cplx r_cold;
  double zeta = 1.0;     // |r_cold|
  double xi = 1.0;       // |r_hot|
  double phi0 = 0.0;     // arg r_cold
  double phih = 0.0;     // arg r_hot
  double dphi = 0.0;     // phih - phi0
  double faraday = 0.0;  // (phi0 - phih) / 2, rotation for spin up

  double epsilon() const { return zeta * xi; }
};

ReflectionPoint operating_point(const CavityParams& p);

/// Single reflection with ideal phases: |R,up> and |L,down> unchanged, |L,up>
/// and |R,down> pick up i. Targets are {photon, spin}.
LinearMap scatter_ideal(const std::string& photon, const std::string& spin);

/// Two reflections off the same cavity (small-mirror geometry). Equals
/// scatter_ideal squared, i.e. Z on the photon times Z on the spin.
LinearMap double_pass(const std::string& photon, const std::string& spin);

/// Lossy single reflection: cold entries scaled by zeta, hot entries by xi,
/// ideal phases kept. Missing norm is photon loss.
LinearMap scatter_lossy(const std::string& photon, const std::string& spin, double zeta, double xi);

enum class SpinFlag { unchanged, changed };

const char* to_string(SpinFlag flag);

/// Subsystem descriptors for QD spins (up/down) and readout photons (R/L).
Subsystem spin_subsystem(const std::string& label);
Subsystem auxiliary_subsystem(const std::string& label);

/// The readout interaction without the measurement: Hadamard on the spin,
/// then a fresh auxiliary photon (|R>+|L>)/sqrt2 reflected once with `scatter`
/// (which must target {aux, spin}). The auxiliary photon is appended.
PureState couple_readout_photon(const PureState& s, const std::string& spin, const std::string& aux,
                                const LinearMap& scatter);

/// Basis for reading the auxiliary photon: (|R>+i|L>)/sqrt2 signals spin up,
/// (|R>-i|L>)/sqrt2 spin down.
std::vector<Vector> readout_basis();

struct SpinReadout {
  SpinFlag flag = SpinFlag::unchanged;
  PureState state;
  double probability = 0.0;
};

/// Reads a QND spin through an auxiliary photon. The spin is assumed to have
/// started the stage in |+>; |+> reads "unchanged", |-> reads "changed". On
/// return the auxiliary photon is gone and the spin is reset to |+> (moved to
/// the end of the subsystem list).
SpinReadout spin_readout(const PureState& s, const std::string& spin, Rng& rng);

}  // namespace hbsa::cavity
