// Copyright 2026 The vargibbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "vargibbs/gate.hpp"
#include "vargibbs/pauli.hpp"

// Dense statevector kernel.
//
// Amplitude ordering: qubit 0 is the most significant bit of the basis index.
// For a register split as system A (qubits 0..N-1) followed by system B
// (qubits N..2N-1), the amplitude of |i>_A |j>_B sits at index i * 2^N + j, so
// reshaping the vector row-major into a 2^N x 2^N matrix gives Psi(i, j).

namespace vargibbs {

template <typename Real>
class BasicStateVector {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicStateVector() = default;

  /// |0...0> on `num_qubits` qubits.
  explicit BasicStateVector(int num_qubits) : BasicStateVector(basis(num_qubits, 0)) {}

  static BasicStateVector basis(int num_qubits, std::uint64_t index) {
    check_size(num_qubits);
    Vector v = Vector::Zero(Eigen::Index{1} << num_qubits);
    if (index >= static_cast<std::uint64_t>(v.size())) {
      throw std::invalid_argument("basis index out of range");
    }
    v[static_cast<Eigen::Index>(index)] = Scalar(1);
    return BasicStateVector(num_qubits, std::move(v));
  }

  /// Takes ownership of `amplitudes`; length must be 2^num_qubits. The vector
  /// is renormalized when `normalize` is set, otherwise it must already have
  /// unit norm within `tolerance`.
  static BasicStateVector from_amplitudes(int num_qubits, Vector amplitudes, bool normalize = false,
                                          Real tolerance = norm_tolerance()) {
    check_size(num_qubits);
    if (amplitudes.size() != (Eigen::Index{1} << num_qubits)) {
      throw std::invalid_argument("amplitude vector length " + std::to_string(amplitudes.size()) +
                                  " is not 2^" + std::to_string(num_qubits));
    }
    const Real norm = amplitudes.norm();
    if (!(norm > Real(0)) || !std::isfinite(static_cast<double>(norm))) {
      throw std::invalid_argument("amplitude vector has zero or non-finite norm");
    }
    if (normalize) {
      amplitudes /= norm;
    } else if (std::abs(norm - Real(1)) > tolerance) {
      throw std::invalid_argument("amplitude vector is not normalized");
    }
    return BasicStateVector(num_qubits, std::move(amplitudes));
  }

  /// Default slack on the unit norm: 1e-10, widened to a few ulps for
  /// low-precision scalars.
  static Real norm_tolerance() { return std::max(Real(1e-10), Real(64) * std::numeric_limits<Real>::epsilon()); }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Scalar operator[](Eigen::Index i) const { return amplitudes_[i]; }

  Real norm() const { return amplitudes_.norm(); }

  /// Amplitudes as a 2^split x 2^(n - split) matrix with rows indexed by the
  /// leading `split` qubits.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> as_matrix(int split) const {
    if (split < 0 || split > num_qubits_) throw std::invalid_argument("bad register split");
    const Eigen::Index rows = Eigen::Index{1} << split;
    const Eigen::Index cols = Eigen::Index{1} << (num_qubits_ - split);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = amplitudes_[i * cols + j];
    }
    return m;
  }

  static void check_size(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
      throw std::invalid_argument("qubit count " + std::to_string(num_qubits) +
                                  " outside supported range [1, " + std::to_string(kMaxQubits) + "]");
    }
  }

 private:
  BasicStateVector(int n, Vector v) : num_qubits_(n), amplitudes_(std::move(v)) {}

  int num_qubits_ = 0;
  Vector amplitudes_;
};

template <typename Real>
class BasicDensityMatrix {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BasicDensityMatrix() = default;

  BasicDensityMatrix(int num_qubits, Matrix entries) : num_qubits_(num_qubits), entries_(std::move(entries)) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (entries_.rows() != dim || entries_.cols() != dim) {
      throw std::invalid_argument("density matrix must be 2^n x 2^n");
    }
  }

  int num_qubits() const { return num_qubits_; }
  const Matrix& entries() const { return entries_; }

  Scalar trace() const { return entries_.trace(); }
  Real purity() const { return (entries_ * entries_).trace().real(); }

  /// Ascending eigenvalues of the Hermitian part.
  Eigen::Matrix<Real, Eigen::Dynamic, 1> eigenvalues() const {
    const Matrix herm = (entries_ + entries_.adjoint()) / Real(2);
    return Eigen::SelfAdjointEigenSolver<Matrix>(herm, Eigen::EigenvaluesOnly).eigenvalues();
  }

  /// Hermitian and unit trace within `tol`, no eigenvalue below `-eig_tol`.
  bool is_valid(Real tol = Real(1e-12), Real eig_tol = Real(1e-10)) const {
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(trace() - Scalar(1)) > tol) return false;
    return eigenvalues().minCoeff() >= -eig_tol;
  }

 private:
  int num_qubits_ = 0;
  Matrix entries_;
};

using StateVector = BasicStateVector<double>;
using DensityMatrix = BasicDensityMatrix<double>;

/// Computational-basis samples. Bitstrings list qubit 0 first.
struct MeasurementRecord {
  int num_qubits = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t count(const std::string& bits) const {
    auto it = counts.find(bits);
    return it == counts.end() ? 0 : it->second;
  }
  double frequency(const std::string& bits) const {
    return static_cast<double>(count(bits)) / static_cast<double>(shots);
  }
};

namespace detail {

inline std::uint64_t qubit_bit(int num_qubits, int qubit) { return 1ULL << (num_qubits - 1 - qubit); }

template <typename Real>
using Mat2 = Eigen::Matrix<std::complex<Real>, 2, 2>;

template <typename Real>
Mat2<Real> ry_matrix(Real angle) {
  const Real c = std::cos(angle / 2);
  const Real s = std::sin(angle / 2);
  Mat2<Real> m;
  m << c, -s, s, c;
  return m;
}

template <typename Real>
Mat2<Real> hadamard_matrix() {
  const Real r = Real(1) / std::sqrt(Real(2));
  Mat2<Real> m;
  m << r, r, r, -r;
  return m;
}

/// Applies `u` to `qubit` on the subspace where every bit of `control_mask`
/// is set.
template <typename Derived, typename Real>
void apply_single_qubit(Eigen::MatrixBase<Derived>& v, int num_qubits, int qubit, const Mat2<Real>& u,
                        std::uint64_t control_mask = 0) {
  const std::uint64_t bit = qubit_bit(num_qubits, qubit);
  const auto dim = static_cast<std::uint64_t>(v.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & bit) || (i & control_mask) != control_mask) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | bit);
    const auto a0 = v[i0];
    const auto a1 = v[i1];
    v[i0] = u(0, 0) * a0 + u(0, 1) * a1;
    v[i1] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

template <typename Derived>
void apply_cnot(Eigen::MatrixBase<Derived>& v, int num_qubits, int control, int target) {
  const std::uint64_t cbit = qubit_bit(num_qubits, control);
  const std::uint64_t tbit = qubit_bit(num_qubits, target);
  const auto dim = static_cast<std::uint64_t>(v.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit)) {
      std::swap(v[static_cast<Eigen::Index>(i)], v[static_cast<Eigen::Index>(i | tbit)]);
    }
  }
}

template <typename Real>
std::complex<Real> i_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace detail

/// P|v> for a Pauli string spanning the whole register of `v`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> apply_pauli(const PauliString& p,
                                                                      const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Scalar::value_type;
  if (v.size() != (Eigen::Index{1} << p.num_qubits())) {
    throw std::invalid_argument("Pauli string width does not match state dimension");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(v.size());
  const Scalar prefactor = detail::i_power<Real>(p.num_y());
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const auto dim = static_cast<std::uint64_t>(v.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    const Scalar a = (std::popcount(z & b) & 1) ? -v[static_cast<Eigen::Index>(b)] : v[static_cast<Eigen::Index>(b)];
    out[static_cast<Eigen::Index>(b ^ x)] = prefactor * a;
  }
  return out;
}

/// Applies `gate` in place. `angle` must be supplied exactly when the gate is
/// parameterized.
template <typename Derived>
void apply_gate_inplace(Eigen::MatrixBase<Derived>& v, int num_qubits, const Gate& gate,
                        std::optional<typename Derived::Scalar::value_type> angle = std::nullopt) {
  using Real = typename Derived::Scalar::value_type;
  gate.validate(num_qubits);
  if (gate.parameterized() != angle.has_value()) {
    throw std::invalid_argument(gate.parameterized() ? "missing angle for " + gate.to_string()
                                                     : "superfluous angle for " + gate.to_string());
  }
  switch (gate.kind) {
    case GateKind::H:
      detail::apply_single_qubit(v, num_qubits, gate.targets[0], detail::hadamard_matrix<Real>());
      break;
    case GateKind::RY:
      detail::apply_single_qubit(v, num_qubits, gate.targets[0], detail::ry_matrix<Real>(*angle));
      break;
    case GateKind::CNOT:
      detail::apply_cnot(v, num_qubits, gate.targets[0], gate.targets[1]);
      break;
    case GateKind::CRY:
      detail::apply_single_qubit(v, num_qubits, gate.targets[1], detail::ry_matrix<Real>(*angle),
                                 detail::qubit_bit(num_qubits, gate.targets[0]));
      break;
    case GateKind::PauliUnitary:
      v = apply_pauli(gate.register_pauli(num_qubits), v);
      break;
  }
}

template <typename Real>
BasicStateVector<Real> apply_gate(const BasicStateVector<Real>& state, const Gate& gate,
                                  std::optional<std::type_identity_t<Real>> angle = std::nullopt) {
  auto v = state.amplitudes();
  apply_gate_inplace(v, state.num_qubits(), gate, angle);
  return BasicStateVector<Real>::from_amplitudes(state.num_qubits(), std::move(v), false,
                                                 Real(10) * BasicStateVector<Real>::norm_tolerance());
}

/// <a|b>.
template <typename Real>
std::complex<Real> inner_product(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner product of states with different qubit counts");
  }
  return a.amplitudes().dot(b.amplitudes());
}

/// |a> ⊗ |b>, with the qubits of `a` leading.
template <typename Real>
BasicStateVector<Real> tensor_product(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
  const int n = a.num_qubits() + b.num_qubits();
  BasicStateVector<Real>::check_size(n);
  typename BasicStateVector<Real>::Vector v(a.dimension() * b.dimension());
  for (Eigen::Index i = 0; i < a.dimension(); ++i) {
    v.segment(i * b.dimension(), b.dimension()) = a[i] * b.amplitudes();
  }
  return BasicStateVector<Real>::from_amplitudes(n, std::move(v), true);
}

/// (1/sqrt(2^N)) sum_i |i>_A |i>_B on 2N qubits.
template <typename Real = double>
BasicStateVector<Real> maximally_entangled_state(int system_qubits) {
  const int n = 2 * system_qubits;
  BasicStateVector<Real>::check_size(n);
  const Eigen::Index side = Eigen::Index{1} << system_qubits;
  typename BasicStateVector<Real>::Vector v = BasicStateVector<Real>::Vector::Zero(side * side);
  const Real amp = Real(1) / std::sqrt(static_cast<Real>(side));
  for (Eigen::Index i = 0; i < side; ++i) v[i * side + i] = amp;
  return BasicStateVector<Real>::from_amplitudes(n, std::move(v));
}

inline std::string bitstring(std::uint64_t index, int num_qubits) {
  std::string s(num_qubits, '0');
  for (int q = 0; q < num_qubits; ++q) {
    if (index & detail::qubit_bit(num_qubits, q)) s[q] = '1';
  }
  return s;
}

/// Draws basis-state indices i.i.d. from |amplitude|^2. Deterministic in `seed`.
template <typename Real>
std::vector<std::uint64_t> sample_indices(const BasicStateVector<Real>& state, std::uint64_t shots,
                                          std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  std::vector<double> probs(static_cast<std::size_t>(state.dimension()));
  for (Eigen::Index i = 0; i < state.dimension(); ++i) probs[i] = static_cast<double>(std::norm(state[i]));
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::uint64_t> dist(probs.begin(), probs.end());
  std::vector<std::uint64_t> out(shots);
  for (auto& s : out) s = dist(rng);
  return out;
}

template <typename Real>
MeasurementRecord sample_bitstrings(const BasicStateVector<Real>& state, std::uint64_t shots,
                                    std::uint64_t seed) {
  MeasurementRecord rec;
  rec.num_qubits = state.num_qubits();
  rec.shots = shots;
  rec.seed = seed;
  std::map<std::uint64_t, std::uint64_t> by_index;
  for (std::uint64_t idx : sample_indices(state, shots, seed)) ++by_index[idx];
  for (const auto& [idx, c] : by_index) rec.counts.emplace(bitstring(idx, state.num_qubits()), c);
  return rec;
}

/// Tr_{complement of keep} |state><state|. Qubits in `keep` stay in the
/// order given.
template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicStateVector<Real>& state, std::span<const int> keep) {
  const int n = state.num_qubits();
  if (keep.empty()) throw std::invalid_argument("partial trace needs a nonempty keep set");
  std::vector<bool> kept(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::invalid_argument("keep index " + std::to_string(q) + " out of range");
    if (kept[q]) throw std::invalid_argument("repeated keep index");
    kept[q] = true;
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!kept[q]) traced.push_back(q);
  }
  const int k = static_cast<int>(keep.size());
  const Eigen::Index rows = Eigen::Index{1} << k;
  const Eigen::Index cols = Eigen::Index{1} << (n - k);
  using Matrix = typename BasicDensityMatrix<Real>::Matrix;
  Matrix psi(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    std::uint64_t base = 0;
    for (int i = 0; i < k; ++i) {
      if (r & (Eigen::Index{1} << (k - 1 - i))) base |= detail::qubit_bit(n, keep[i]);
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      std::uint64_t idx = base;
      for (int j = 0; j < n - k; ++j) {
        if (c & (Eigen::Index{1} << (n - k - 1 - j))) idx |= detail::qubit_bit(n, traced[j]);
      }
      psi(r, c) = state[static_cast<Eigen::Index>(idx)];
    }
  }
  return BasicDensityMatrix<Real>(k, psi * psi.adjoint());
}

template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicStateVector<Real>& state, std::initializer_list<int> keep) {
  return partial_trace(state, std::span<const int>(keep.begin(), keep.size()));
}

}  // namespace vargibbs
