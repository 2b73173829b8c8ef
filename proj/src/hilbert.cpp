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

#include "hbsa/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hbsa {

namespace {

int role_rank(Role role) {
  switch (role) {
    case Role::polarization:
      return 0;
    case Role::spatial_mode:
      return 1;
    case Role::qd_spin:
      return 2;
    case Role::auxiliary_photon:
      return 3;
  }
  return 4;
}

std::vector<std::size_t> strides_of(const std::vector<Subsystem>& subsystems) {
  std::vector<std::size_t> strides(subsystems.size(), 1);
  for (std::size_t i = subsystems.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * static_cast<std::size_t>(subsystems[i].dimension);
  }
  return strides;
}

std::size_t total_dimension(const std::vector<Subsystem>& subsystems) {
  std::size_t d = 1;
  for (const auto& s : subsystems) d *= static_cast<std::size_t>(s.dimension);
  return d;
}

bool close_to_one(double x, double tol) { return std::abs(x - 1.0) <= tol; }

void require_unique_labels(const std::vector<Subsystem>& subsystems) {
  std::set<std::string> seen;
  for (const auto& s : subsystems) {
    if (!seen.insert(s.label).second) {
      throw std::invalid_argument("duplicate subsystem label '" + s.label + "'");
    }
  }
}

// Amplitudes of `s` laid out as a (rest x kept) column-major matrix, where
// `kept` are the given labels in order and `rest` the others in state order.
struct Split {
  PureState ordered;
  std::size_t kept_dim = 1;
  std::size_t rest_dim = 1;
};

Split split_front(const PureState& s, const std::vector<std::string>& kept) {
  std::vector<std::string> order = kept;
  for (const auto& label : s.labels()) {
    if (std::find(kept.begin(), kept.end(), label) == kept.end()) order.push_back(label);
  }
  Split out{s.reordered(order), 1, 1};
  for (const auto& label : kept) out.kept_dim *= s.subsystem(label).dimension;
  out.rest_dim = s.dimension() / out.kept_dim;
  return out;
}

}  // namespace

const char* to_string(Role role) {
  switch (role) {
    case Role::polarization:
      return "polarization";
    case Role::spatial_mode:
      return "spatial-mode";
    case Role::qd_spin:
      return "qd-spin";
    case Role::auxiliary_photon:
      return "auxiliary-photon";
  }
  return "unknown";
}

Subsystem::Subsystem(std::string label_, Role role_, std::vector<std::string> levels_)
    : label(std::move(label_)),
      dimension(static_cast<int>(levels_.size())),
      role(role_),
      levels(std::move(levels_)) {
  if (dimension < 2) throw std::invalid_argument("subsystem '" + label + "' needs dimension >= 2");
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState() : amplitudes_(Vector::Ones(1)) {}

PureState::PureState(std::vector<Subsystem> subsystems, Vector amplitudes)
    : subsystems_(std::move(subsystems)), amplitudes_(std::move(amplitudes)) {
  require_unique_labels(subsystems_);
  if (static_cast<std::size_t>(amplitudes_.size()) != total_dimension(subsystems_)) {
    throw std::invalid_argument("amplitude vector length does not match subsystem dimensions");
  }
  normalized_ = close_to_one(norm_squared(), kAlgebraTol);
}

PureState PureState::single(Subsystem subsystem, Vector amplitudes) {
  return PureState({std::move(subsystem)}, std::move(amplitudes));
}

PureState PureState::basis(Subsystem subsystem, int level) {
  if (level < 0 || level >= subsystem.dimension) throw std::out_of_range("basis level out of range");
  Vector v = Vector::Zero(subsystem.dimension);
  v(level) = 1.0;
  return single(std::move(subsystem), std::move(v));
}

bool PureState::has(const std::string& label) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

std::size_t PureState::position(const std::string& label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].label == label) return i;
  }
  throw std::invalid_argument("unknown subsystem label '" + label + "'");
}

const Subsystem& PureState::subsystem(const std::string& label) const {
  return subsystems_[position(label)];
}

std::vector<std::string> PureState::labels() const {
  std::vector<std::string> out;
  out.reserve(subsystems_.size());
  for (const auto& s : subsystems_) out.push_back(s.label);
  return out;
}

PureState PureState::normalize() const {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  PureState out = *this;
  out.amplitudes_ /= n;
  out.normalized_ = true;
  return out;
}

PureState PureState::scaled(cplx factor) const {
  PureState out = *this;
  out.amplitudes_ *= factor;
  out.normalized_ = normalized_ && close_to_one(std::abs(factor), kAlgebraTol);
  return out;
}

PureState PureState::reordered(const std::vector<std::string>& order) const {
  if (order.size() != subsystems_.size()) {
    throw std::invalid_argument("reorder: label list is not a permutation of the subsystems");
  }
  std::vector<std::size_t> source(order.size());
  std::vector<Subsystem> subsystems;
  subsystems.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    source[i] = position(order[i]);
    subsystems.push_back(subsystems_[source[i]]);
  }
  require_unique_labels(subsystems);

  const auto old_strides = strides_of(subsystems_);
  const auto new_strides = strides_of(subsystems);
  Vector amps(amplitudes_.size());
  for (Eigen::Index idx = 0; idx < amplitudes_.size(); ++idx) {
    std::size_t rem = static_cast<std::size_t>(idx);
    std::size_t old_idx = 0;
    for (std::size_t i = 0; i < subsystems.size(); ++i) {
      const std::size_t digit = rem / new_strides[i];
      rem %= new_strides[i];
      old_idx += digit * old_strides[source[i]];
    }
    amps(idx) = amplitudes_(static_cast<Eigen::Index>(old_idx));
  }
  PureState out;
  out.subsystems_ = std::move(subsystems);
  out.amplitudes_ = std::move(amps);
  out.normalized_ = normalized_;
  return out;
}

PureState PureState::canonical() const {
  std::vector<Subsystem> sorted = subsystems_;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Subsystem& a, const Subsystem& b) {
    return role_rank(a.role) < role_rank(b.role);
  });
  std::vector<std::string> order;
  for (const auto& s : sorted) order.push_back(s.label);
  return reordered(order);
}

PureState PureState::with_levels(const std::string& label, std::vector<std::string> levels) const {
  PureState out = *this;
  auto& sub = out.subsystems_[position(label)];
  if (static_cast<int>(levels.size()) != sub.dimension) {
    throw std::invalid_argument("level names do not match dimension of '" + label + "'");
  }
  sub.levels = std::move(levels);
  return out;
}

PureState PureState::contract(const std::string& label, const Vector& ket) const {
  const auto& sub = subsystem(label);
  if (ket.size() != sub.dimension) throw std::invalid_argument("contract: ket has wrong dimension");
  const Split split = split_front(*this, {label});
  Eigen::Map<const Matrix> a(split.ordered.amplitudes().data(),
                             static_cast<Eigen::Index>(split.rest_dim),
                             static_cast<Eigen::Index>(split.kept_dim));
  Vector rest = a * ket.conjugate();
  std::vector<Subsystem> subsystems(split.ordered.subsystems().begin() + 1,
                                    split.ordered.subsystems().end());
  PureState out(std::move(subsystems), std::move(rest));
  // restore original relative order of the remaining subsystems
  std::vector<std::string> order;
  for (const auto& s : subsystems_) {
    if (s.label != label) order.push_back(s.label);
  }
  return out.reordered(order);
}

PureState PureState::detach(const std::string& label) const {
  const DensityMatrix rho = reduced_density(*this, {label});
  const double tr = rho.trace();
  if (tr <= 0.0) throw std::domain_error("detach: zero state");
  if (rho.purity() / (tr * tr) < 1.0 - kStateTol) {
    throw std::logic_error("detach: subsystem '" + label + "' is entangled with the rest");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix);
  Eigen::Index top = 0;
  eig.eigenvalues().maxCoeff(&top);
  return contract(label, eig.eigenvectors().col(top));
}

cplx PureState::amplitude(std::initializer_list<int> levels) const {
  if (levels.size() != subsystems_.size()) throw std::invalid_argument("amplitude: wrong index count");
  const auto strides = strides_of(subsystems_);
  std::size_t idx = 0;
  std::size_t i = 0;
  for (int level : levels) {
    if (level < 0 || level >= subsystems_[i].dimension) throw std::out_of_range("amplitude index");
    idx += static_cast<std::size_t>(level) * strides[i++];
  }
  return amplitudes_(static_cast<Eigen::Index>(idx));
}

// ---------------------------------------------------------------------------
// LinearMap

LinearMap::LinearMap(std::vector<std::string> targets_, Matrix matrix_, bool unitary_)
    : targets(std::move(targets_)), matrix(std::move(matrix_)), unitary(unitary_) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("linear map must be square");
  std::set<std::string> unique(targets.begin(), targets.end());
  if (unique.size() != targets.size()) throw std::invalid_argument("linear map has repeated targets");
}

bool LinearMap::is_unitary(double tol) const {
  const Matrix gram = matrix.adjoint() * matrix;
  return (gram - Matrix::Identity(matrix.rows(), matrix.cols())).cwiseAbs().maxCoeff() <= tol;
}

LinearMap LinearMap::then(const LinearMap& next) const {
  if (next.targets != targets) throw std::invalid_argument("composition needs identical targets");
  return LinearMap(targets, next.matrix * matrix, unitary && next.unitary);
}

LinearMap conditioned(const LinearMap& m, const std::string& control, int control_dimension,
                      int level) {
  if (level < 0 || level >= control_dimension) throw std::out_of_range("control level");
  Matrix p = Matrix::Zero(control_dimension, control_dimension);
  p(level, level) = 1.0;
  const Matrix q = Matrix::Identity(control_dimension, control_dimension) - p;
  const Eigen::Index d = m.matrix.rows();
  Matrix out = Matrix::Zero(control_dimension * d, control_dimension * d);
  for (int i = 0; i < control_dimension; ++i) {
    out.block(i * d, i * d, d, d) = p(i, i) * m.matrix + q(i, i) * Matrix::Identity(d, d);
  }
  std::vector<std::string> targets{control};
  targets.insert(targets.end(), m.targets.begin(), m.targets.end());
  return LinearMap(std::move(targets), std::move(out), m.unitary);
}

// ---------------------------------------------------------------------------
// DensityMatrix

bool DensityMatrix::is_hermitian(double tol) const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(matrix, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Operations

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Subsystem> subsystems = a.subsystems();
  subsystems.insert(subsystems.end(), b.subsystems().begin(), b.subsystems().end());
  Vector amps(static_cast<Eigen::Index>(a.dimension() * b.dimension()));
  const auto nb = static_cast<Eigen::Index>(b.dimension());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    amps.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  }
  return PureState(std::move(subsystems), std::move(amps));
}

PureState apply(const LinearMap& m, const PureState& s) {
  const auto& subs = s.subsystems();
  const auto strides = strides_of(subs);
  std::vector<std::size_t> target_pos;
  std::size_t joint = 1;
  for (const auto& label : m.targets) {
    target_pos.push_back(s.position(label));
    joint *= static_cast<std::size_t>(subs[target_pos.back()].dimension);
  }
  if (static_cast<std::size_t>(m.matrix.rows()) != joint) {
    throw std::invalid_argument("linear map size does not match its targets");
  }

  // Offset of each joint target index within the full amplitude vector.
  std::vector<std::size_t> offsets(joint, 0);
  for (std::size_t j = 0; j < joint; ++j) {
    std::size_t rem = j;
    for (std::size_t t = target_pos.size(); t-- > 0;) {
      const auto d = static_cast<std::size_t>(subs[target_pos[t]].dimension);
      offsets[j] += (rem % d) * strides[target_pos[t]];
      rem /= d;
    }
  }

  const Vector& in = s.amplitudes();
  Vector out = in;
  Vector gathered(static_cast<Eigen::Index>(joint));
  for (std::size_t base = 0; base < s.dimension(); ++base) {
    bool is_base = true;
    for (std::size_t p : target_pos) {
      if ((base / strides[p]) % static_cast<std::size_t>(subs[p].dimension) != 0) {
        is_base = false;
        break;
      }
    }
    if (!is_base) continue;
    for (std::size_t j = 0; j < joint; ++j) {
      gathered(static_cast<Eigen::Index>(j)) = in(static_cast<Eigen::Index>(base + offsets[j]));
    }
    const Vector mapped = m.matrix * gathered;
    for (std::size_t j = 0; j < joint; ++j) {
      out(static_cast<Eigen::Index>(base + offsets[j])) = mapped(static_cast<Eigen::Index>(j));
    }
  }
  PureState result(subs, std::move(out));
  if (!m.unitary) result.normalized_ = false;
  return result;
}

cplx inner(const PureState& a, const PureState& b) {
  std::set<std::string> la;
  std::set<std::string> lb;
  for (const auto& s : a.subsystems()) la.insert(s.label);
  for (const auto& s : b.subsystems()) lb.insert(s.label);
  if (la != lb) throw std::invalid_argument("inner: states live on different subsystems");
  for (const auto& s : a.subsystems()) {
    if (b.subsystem(s.label).dimension != s.dimension) {
      throw std::invalid_argument("inner: dimension mismatch on '" + s.label + "'");
    }
  }
  const PureState bb = b.reordered(a.labels());
  return a.amplitudes().dot(bb.amplitudes());
}

namespace {

Matrix basis_matrix(const std::vector<Vector>& basis, int dimension) {
  if (static_cast<int>(basis.size()) != dimension) {
    throw std::invalid_argument("measurement basis size does not match subsystem dimension");
  }
  Matrix b(dimension, dimension);
  for (int k = 0; k < dimension; ++k) {
    if (basis[static_cast<std::size_t>(k)].size() != dimension) {
      throw std::invalid_argument("measurement basis vector has wrong dimension");
    }
    b.col(k) = basis[static_cast<std::size_t>(k)];
  }
  const Matrix gram = b.adjoint() * b;
  if ((gram - Matrix::Identity(dimension, dimension)).cwiseAbs().maxCoeff() > kAlgebraTol) {
    throw std::invalid_argument("measurement basis is not orthonormal");
  }
  return b;
}

}  // namespace

std::vector<double> outcome_probabilities(const PureState& s, const std::string& target,
                                          const std::vector<Vector>& basis) {
  const int d = s.subsystem(target).dimension;
  const Matrix b = basis_matrix(basis, d);
  const Split split = split_front(s, {target});
  Eigen::Map<const Matrix> a(split.ordered.amplitudes().data(),
                             static_cast<Eigen::Index>(split.rest_dim), d);
  const Matrix coeff = a * b.conjugate();
  std::vector<double> probs(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) probs[static_cast<std::size_t>(k)] = coeff.col(k).squaredNorm();
  return probs;
}

Measurement measure(const PureState& s, const std::string& target, const std::vector<Vector>& basis,
                    Rng& rng) {
  if (!close_to_one(s.norm_squared(), kStateTol)) {
    throw std::invalid_argument("measure: state is not normalized");
  }
  const int d = s.subsystem(target).dimension;
  const Matrix b = basis_matrix(basis, d);
  const Split split = split_front(s, {target});
  Eigen::Map<const Matrix> a(split.ordered.amplitudes().data(),
                             static_cast<Eigen::Index>(split.rest_dim), d);
  const Matrix coeff = a * b.conjugate();

  std::vector<double> probs(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) probs[static_cast<std::size_t>(k)] = coeff.col(k).squaredNorm();

  const double u = rng.uniform();
  int outcome = -1;
  double cumulative = 0.0;
  for (int k = 0; k < d; ++k) {
    cumulative += probs[static_cast<std::size_t>(k)];
    if (u < cumulative && probs[static_cast<std::size_t>(k)] > 0.0) {
      outcome = k;
      break;
    }
  }
  if (outcome < 0) {
    // rounding left u above the cumulative sum; take the last possible outcome
    for (int k = d; k-- > 0;) {
      if (probs[static_cast<std::size_t>(k)] > 0.0) {
        outcome = k;
        break;
      }
    }
  }
  const double p = probs[static_cast<std::size_t>(outcome)];

  Matrix collapsed(static_cast<Eigen::Index>(split.rest_dim), d);
  const Vector rest = coeff.col(outcome) / std::sqrt(p);
  for (int l = 0; l < d; ++l) collapsed.col(l) = b(l, outcome) * rest;
  Vector amps = Eigen::Map<const Vector>(collapsed.data(), collapsed.size());

  PureState ordered(split.ordered.subsystems(), std::move(amps));
  return Measurement{outcome, ordered.reordered(s.labels()), p};
}

DensityMatrix reduced_density(const PureState& s, const std::vector<std::string>& keep) {
  if (keep.empty()) throw std::invalid_argument("reduced_density: empty keep set");
  std::set<std::string> unique(keep.begin(), keep.end());
  if (unique.size() != keep.size()) throw std::invalid_argument("reduced_density: repeated label");
  const Split split = split_front(s, keep);
  Eigen::Map<const Matrix> a(split.ordered.amplitudes().data(),
                             static_cast<Eigen::Index>(split.rest_dim),
                             static_cast<Eigen::Index>(split.kept_dim));
  DensityMatrix out;
  for (const auto& label : keep) out.subsystems.push_back(s.subsystem(label));
  out.matrix = a.transpose() * a.conjugate();
  return out;
}

DensityMatrix projector(const PureState& s) {
  return DensityMatrix{s.subsystems(), s.amplitudes() * s.amplitudes().adjoint()};
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.subsystems.size() != b.subsystems.size()) {
    throw std::invalid_argument("trace_distance: different subsystems");
  }
  for (std::size_t i = 0; i < a.subsystems.size(); ++i) {
    if (a.subsystems[i].label != b.subsystems[i].label) {
      throw std::invalid_argument("trace_distance: subsystem order differs");
    }
  }
  const Matrix diff = a.matrix - b.matrix;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

bool equal_up_to_global_phase(const PureState& a, const PureState& b, double tol) {
  return std::abs(inner(a, b)) >= 1.0 - tol;
}

namespace kets {
Vector zero() { return Vector::Unit(2, 0); }
Vector one() { return Vector::Unit(2, 1); }
Vector plus() { return Vector::Constant(2, M_SQRT1_2); }
Vector minus() {
  Vector v(2);
  v << M_SQRT1_2, -M_SQRT1_2;
  return v;
}
}  // namespace kets

namespace gates {
Matrix identity(int dimension) { return Matrix::Identity(dimension, dimension); }
Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m * M_SQRT1_2;
}
}  // namespace gates

}  // namespace hbsa
