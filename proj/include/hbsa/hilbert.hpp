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

// Dense pure-state kernel: labeled tensor-product states, local linear maps,
// projective measurement with collapse, and reduced density matrices.
//
// Amplitude layout: the first subsystem is the most significant digit, so
// the Kronecker product a (x) b keeps a's subsystems in front of b's.

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hbsa {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Tolerance for algebraic identities (unitarity, normalization).
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for end-to-end state equality.
inline constexpr double kStateTol = 1e-10;

enum class Role { polarization, spatial_mode, qd_spin, auxiliary_photon };

const char* to_string(Role role);

struct Subsystem {
  std::string label;
  int dimension = 2;
  Role role = Role::polarization;
  // Display names of the basis levels, e.g. {"R","L"} or {"a1","a2"}.
  std::vector<std::string> levels;

  Subsystem() = default;
  Subsystem(std::string label, Role role, std::vector<std::string> levels);
};

/// Deterministic random stream. Draws are bit-identical across platforms
/// for a given seed (no distribution objects involved).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

/// Seed for the index-th independent run derived from a base seed
/// (splitmix64 finalizer), so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct LinearMap;

class PureState {
 public:
  /// The state over zero subsystems (amplitude 1); identity for tensor().
  PureState();
  PureState(std::vector<Subsystem> subsystems, Vector amplitudes);

  /// Single-subsystem state with the given amplitudes.
  static PureState single(Subsystem subsystem, Vector amplitudes);
  /// Computational basis state |level> of one subsystem.
  static PureState basis(Subsystem subsystem, int level);

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  const Vector& amplitudes() const { return amplitudes_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  bool normalized() const { return normalized_; }

  bool has(const std::string& label) const;
  std::size_t position(const std::string& label) const;
  const Subsystem& subsystem(const std::string& label) const;
  std::vector<std::string> labels() const;

  double norm_squared() const { return amplitudes_.squaredNorm(); }
  PureState normalize() const;
  PureState scaled(cplx factor) const;

  /// Same state with subsystems permuted into the given label order.
  PureState reordered(const std::vector<std::string>& order) const;
  /// Reorder into canonical form: polarization, spatial, spin, auxiliary,
  /// keeping creation order within each role.
  PureState canonical() const;

  /// Renames the basis levels of one subsystem (e.g. a1/a2 -> c1/c2).
  PureState with_levels(const std::string& label, std::vector<std::string> levels) const;

  /// Applies <ket| to one subsystem and removes it. No renormalization.
  PureState contract(const std::string& label, const Vector& ket) const;
  /// Removes a subsystem that is in a product state with the rest; throws if
  /// it is entangled (purity below 1 - kStateTol).
  PureState detach(const std::string& label) const;

  /// Amplitude at the given per-subsystem levels (in this state's order).
  cplx amplitude(std::initializer_list<int> levels) const;

 private:
  friend PureState apply(const LinearMap& m, const PureState& s);

  std::vector<Subsystem> subsystems_;
  Vector amplitudes_;
  bool normalized_ = true;
};

struct LinearMap {
  std::vector<std::string> targets;
  Matrix matrix;
  bool unitary = true;

  LinearMap() = default;
  LinearMap(std::vector<std::string> targets, Matrix matrix, bool unitary = true);

  /// True when M^dagger M = I within tol.
  bool is_unitary(double tol = kAlgebraTol) const;
  LinearMap then(const LinearMap& next) const;
};

/// Applies m on its targets when `control` sits at `level`, identity otherwise.
/// The resulting targets are {control} followed by m's targets.
LinearMap conditioned(const LinearMap& m, const std::string& control, int control_dimension,
                      int level);

struct DensityMatrix {
  std::vector<Subsystem> subsystems;
  Matrix matrix;

  double trace() const { return matrix.trace().real(); }
  double purity() const { return (matrix * matrix).trace().real(); }
  bool is_hermitian(double tol = kAlgebraTol) const;
  double min_eigenvalue() const;
};

struct Measurement {
  int outcome = 0;
  PureState state;
  double probability = 0.0;
};

PureState tensor(const PureState& a, const PureState& b);
PureState apply(const LinearMap& m, const PureState& s);
cplx inner(const PureState& a, const PureState& b);

/// Projective measurement of one subsystem in an orthonormal basis (given as
/// kets). The measured subsystem stays in the returned state, collapsed onto
/// the drawn basis vector.
Measurement measure(const PureState& s, const std::string& target, const std::vector<Vector>& basis,
                    Rng& rng);
/// Born probabilities of each basis outcome, without sampling.
std::vector<double> outcome_probabilities(const PureState& s, const std::string& target,
                                          const std::vector<Vector>& basis);

DensityMatrix reduced_density(const PureState& s, const std::vector<std::string>& keep);
DensityMatrix projector(const PureState& s);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

bool equal_up_to_global_phase(const PureState& a, const PureState& b, double tol = kStateTol);

/// Two-level helpers shared by the physics modules.
namespace kets {
Vector zero();
Vector one();
Vector plus();
Vector minus();
}  // namespace kets

namespace gates {
Matrix identity(int dimension);
Matrix pauli_x();
Matrix pauli_z();
Matrix hadamard();
}  // namespace gates

}  // namespace hbsa
