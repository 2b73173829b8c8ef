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

// Linear-optical elements acting on one photon's polarization or spatial mode.
//
// Linear polarization convention: |H> = (|R>+|L>)/sqrt2, |V> = (|R>-|L>)/sqrt2.

#pragma once

#include <array>
#include <string>

#include "hbsa/hilbert.hpp"

namespace hbsa::optics {

/// Beam splitter port naming: input modes (in[0], in[1]) feed output modes
/// (out[0], out[1]).
struct PortMap {
  std::array<std::string, 2> in;
  std::array<std::string, 2> out;

  void validate() const;
};

/// 50:50 beam splitter, |in1> -> (|out1>+|out2>)/sqrt2,
/// |in2> -> (|out1>-|out2>)/sqrt2.
LinearMap beam_splitter(const std::string& spatial);

/// Applies the beam splitter and renames the mode's levels to the output
/// ports. Throws if the current level names are not ports.in.
PureState apply_beam_splitter(const PureState& s, const std::string& spatial, const PortMap& ports);

/// Half-wave plates: Z = |R><R| - |L><L| and X = |R><L| + |L><R|.
LinearMap hwp_z(const std::string& polarization);
LinearMap hwp_x(const std::string& polarization);

enum class Click { H, V };

const char* to_string(Click click);

std::vector<Vector> hv_basis();

struct ClickResult {
  Click click = Click::H;
  PureState state;
};

ClickResult measure_hv(const PureState& s, const std::string& polarization, Rng& rng);

struct PortResult {
  std::string port;
  PureState state;
};

/// Which-path detection on a spatial mode; returns the level name that fired.
PortResult detect_port(const PureState& s, const std::string& spatial, Rng& rng);

}  // namespace hbsa::optics
