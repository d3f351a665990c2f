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

#include "vargibbs/hamiltonian.hpp"
#include "vargibbs/statevector.hpp"

namespace vargibbs {

inline constexpr int kMaxOracleQubits = 8;
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Full spectrum of an N-qubit Hamiltonian.
struct EigenDecomposition {
  int num_qubits = 0;
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXcd states;   // orthonormal columns
  /// a_i(0) = <Phi|(|phi_i><phi_i| ⊗ I)|Phi> for the maximally entangled
  /// Phi; each equals 2^-N.
  Eigen::VectorXd initial_weights;
  int degeneracy = 0;

  double ground_energy() const { return energies[0]; }
  /// Smallest energy above the ground manifold; equals E0 when the spectrum
  /// is flat.
  double first_excited_energy() const;
};

EigenDecomposition diagonalize(const PauliSum& h);

/// ln Tr[e^{-beta H}], evaluated with the ground energy factored out.
double exact_log_partition(const EigenDecomposition& eig, double beta);
double exact_partition(const EigenDecomposition& eig, double beta);
double exact_partition(const PauliSum& h, double beta);

/// Internal energy Tr[rho_beta H].
double thermal_energy(const EigenDecomposition& eig, double beta);
DensityMatrix gibbs_state(const EigenDecomposition& eig, double beta);

struct ImaginaryTimeState {
  StateVector state;
  /// A(tau) = <psi0|e^{-2 (H ⊗ I) tau}|psi0>.
  double normalization = 1.0;
  double log_normalization = 0.0;
};

/// e^{-(H ⊗ I) tau}|psi0> / sqrt(A(tau)) by spectral decomposition, with the
/// decomposition computed once and reused.
class ExactEvolver {
 public:
  explicit ExactEvolver(const PauliSum& h);
  ExactEvolver(const PauliSum& h, EigenDecomposition eig);

  const EigenDecomposition& spectrum() const { return eig_; }
  ImaginaryTimeState evolve(const StateVector& psi0, double tau) const;

 private:
  int system_qubits_ = 0;
  EigenDecomposition eig_;
};

ImaginaryTimeState exact_imaginary_evolve(const PauliSum& h, const StateVector& psi0, double tau);

/// Closed-form normalization A(tau) = Z(2 tau) / 2^N for the maximally
/// entangled start.
double exact_normalization(const EigenDecomposition& eig, double tau);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// -sum p ln p over eigenvalues, ignoring p <= 1e-14.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace vargibbs
