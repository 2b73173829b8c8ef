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

#include <cmath>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hbsa/bell.hpp"

namespace hbsa::optics {
namespace {

const Photon kA = Photon::make("A", "a");
const Photon kB = Photon::make("B", "b");
// The same photons after their beam splitters.
const Photon kAOut = Photon::make("A", "c");
const Photon kBOut = Photon::make("B", "d");
const PortMap kPortsA{{"a1", "a2"}, {"c1", "c2"}};
const PortMap kPortsB{{"b1", "b2"}, {"d1", "d2"}};

BellId spatial(BellKind k, BellSign s) { return {Dof::spatial, k, s}; }
BellId polar(BellKind k, BellSign s) { return {Dof::polarization, k, s}; }

PureState through_both(const PureState& s) {
  return apply_beam_splitter(apply_beam_splitter(s, kA.spatial, kPortsA), kB.spatial, kPortsB);
}

TEST(BeamSplitter, SingleInputMode) {
  const PureState a1 = PureState::basis(kA.spatial_subsystem(), 0);
  const PureState out = apply_beam_splitter(a1, kA.spatial, kPortsA);
  EXPECT_EQ(out.subsystem(kA.spatial).levels, (std::vector<std::string>{"c1", "c2"}));
  EXPECT_NEAR(std::abs(out.amplitude({0}) - M_SQRT1_2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.amplitude({1}) - M_SQRT1_2), 0.0, 1e-15);

  const PureState a2 = apply_beam_splitter(PureState::basis(kA.spatial_subsystem(), 1), kA.spatial, kPortsA);
  EXPECT_NEAR(std::abs(a2.amplitude({1}) + M_SQRT1_2), 0.0, 1e-15);
}

TEST(BeamSplitter, SquaresToIdentity) {
  const Matrix h = beam_splitter("m").matrix;
  EXPECT_LT((h * h - Matrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_TRUE(beam_splitter("m").is_unitary());
}

TEST(BeamSplitter, RejectsWrongPortsOrRole) {
  const PureState a1 = PureState::basis(kA.spatial_subsystem(), 0);
  EXPECT_THROW(apply_beam_splitter(a1, kA.spatial, kPortsB), std::invalid_argument);
  EXPECT_THROW(apply_beam_splitter(a1, kA.spatial, PortMap{{"a1", "a1"}, {"c1", "c2"}}),
               std::invalid_argument);
  const PureState r = PureState::basis(kA.polarization_subsystem(), 0);
  EXPECT_THROW(apply_beam_splitter(r, kA.polarization, kPortsA), std::invalid_argument);
}

// Each row of the two-beam-splitter transformation table, checked as exact
// state equality in the relabelled output modes.
TEST(BeamSplitter, BellStateTransformationTable) {
  using K = BellKind;
  using S = BellSign;
  const std::pair<BellId, BellId> rows[] = {
      {spatial(K::phi, S::plus), spatial(K::phi, S::plus)},
      {spatial(K::phi, S::minus), spatial(K::psi, S::plus)},
      {spatial(K::psi, S::plus), spatial(K::phi, S::minus)},
      {spatial(K::psi, S::minus), spatial(K::psi, S::minus)},
  };
  for (const auto& [in, out] : rows) {
    const PureState result = through_both(bell_state(in, kA, kB));
    const PureState expected = bell_state(out, kAOut, kBOut);
    EXPECT_TRUE(equal_up_to_global_phase(result, expected, 1e-10)) << in.name();
    EXPECT_EQ(result.subsystem(kB.spatial).levels, expected.subsystem(kB.spatial).levels);
  }
}

TEST(HalfWavePlates, ZAndX) {
  const Subsystem p = kA.polarization_subsystem();
  const PureState r = PureState::basis(p, 0);
  const PureState l = PureState::basis(p, 1);
  const LinearMap z = hwp_z(kA.polarization);
  const LinearMap x = hwp_x(kA.polarization);
  EXPECT_NEAR(std::abs(apply(z, r).amplitude({0}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(apply(z, l).amplitude({1}) + 1.0), 0.0, 1e-15);
  EXPECT_TRUE(equal_up_to_global_phase(apply(z, PureState::single(p, kets::plus())),
                                       PureState::single(p, kets::minus())));
  EXPECT_NEAR(std::abs(apply(x, r).amplitude({1}) - 1.0), 0.0, 1e-15);
  EXPECT_LT((x.matrix * x.matrix - Matrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((x.matrix * z.matrix + z.matrix * x.matrix).norm(), 1e-12);
}

TEST(MeasureHV, DefiniteAndBalanced) {
  const Subsystem p = kA.polarization_subsystem();
  Rng rng(1);
  const auto h = measure_hv(PureState::single(p, kets::plus()), kA.polarization, rng);
  EXPECT_EQ(h.click, Click::H);
  const auto probs = outcome_probabilities(PureState::basis(p, 0), kA.polarization, hv_basis());
  EXPECT_NEAR(probs[0], 0.5, 1e-12);
  EXPECT_NEAR(probs[1], 0.5, 1e-12);
  EXPECT_THROW(measure_hv(PureState::basis(kA.spatial_subsystem(), 0), kA.spatial, rng),
               std::invalid_argument);
}

TEST(MeasureHV, PhiPlusGivesEqualClicks) {
  const PureState phi = bell_state(polar(BellKind::phi, BellSign::plus), kA, kB);
  Rng rng(2);
  std::set<std::string> seen;
  for (int k = 0; k < 200; ++k) {
    const auto first = measure_hv(phi, kA.polarization, rng);
    const auto second = measure_hv(first.state, kB.polarization, rng);
    seen.insert(std::string(to_string(first.click)) + to_string(second.click));
  }
  EXPECT_EQ(seen, (std::set<std::string>{"HH", "VV"}));
}

TEST(DetectPort, DefiniteAndBalanced) {
  Rng rng(3);
  const Subsystem c = kAOut.spatial_subsystem();
  EXPECT_EQ(detect_port(PureState::basis(c, 0), kAOut.spatial, rng).port, "c1");
  const auto probs = outcome_probabilities(PureState::single(c, kets::plus()), kAOut.spatial,
                                           {kets::zero(), kets::one()});
  EXPECT_NEAR(probs[0], 0.5, 1e-12);
}

TEST(DetectPort, PsiMinusPortsAnticorrelated) {
  const PureState psi = bell_state(spatial(BellKind::psi, BellSign::minus), kAOut, kBOut);
  Rng rng(4);
  std::set<std::string> seen;
  for (int k = 0; k < 200; ++k) {
    const auto first = detect_port(psi, kAOut.spatial, rng);
    const auto second = detect_port(first.state, kBOut.spatial, rng);
    seen.insert(first.port + second.port);
  }
  EXPECT_EQ(seen, (std::set<std::string>{"c1d2", "c2d1"}));
}

}  // namespace
}  // namespace hbsa::optics
