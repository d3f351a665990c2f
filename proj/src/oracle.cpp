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

#include "vargibbs/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace vargibbs {

double EigenDecomposition::first_excited_energy() const {
  for (Eigen::Index i = 0; i < energies.size(); ++i) {
    if (energies[i] > energies[0] + kDegeneracyTolerance) return energies[i];
  }
  return energies[0];
}

EigenDecomposition diagonalize(const PauliSum& h) {
  if (h.num_qubits() > kMaxOracleQubits) {
    throw std::invalid_argument("exact diagonalization limited to " + std::to_string(kMaxOracleQubits) + " qubits");
  }
  const Eigen::MatrixXcd dense = to_dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  EigenDecomposition eig;
  eig.num_qubits = h.num_qubits();
  eig.energies = solver.eigenvalues();
  eig.states = solver.eigenvectors();
  const double dim = static_cast<double>(dense.rows());
  // <Phi|(P ⊗ I)|Phi> = Tr[P] / 2^N for any operator P on A.
  eig.initial_weights = Eigen::VectorXd::Constant(dense.rows(), 1.0 / dim);
  eig.degeneracy = 0;
  for (Eigen::Index i = 0; i < eig.energies.size(); ++i) {
    if (eig.energies[i] - eig.energies[0] <= kDegeneracyTolerance) ++eig.degeneracy;
  }
  return eig;
}

double exact_log_partition(const EigenDecomposition& eig, double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  const double e0 = eig.energies[0];
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.energies.size(); ++i) sum += std::exp(-beta * (eig.energies[i] - e0));
  return -beta * e0 + std::log(sum);
}

double exact_partition(const EigenDecomposition& eig, double beta) { return std::exp(exact_log_partition(eig, beta)); }

double exact_partition(const PauliSum& h, double beta) { return exact_partition(diagonalize(h), beta); }

double thermal_energy(const EigenDecomposition& eig, double beta) {
  const double e0 = eig.energies[0];
  double z = 0.0;
  double e = 0.0;
  for (Eigen::Index i = 0; i < eig.energies.size(); ++i) {
    const double w = std::exp(-beta * (eig.energies[i] - e0));
    z += w;
    e += w * eig.energies[i];
  }
  return e / z;
}

DensityMatrix gibbs_state(const EigenDecomposition& eig, double beta) {
  const double e0 = eig.energies[0];
  Eigen::VectorXd w = (-beta * (eig.energies.array() - e0)).exp();
  w /= w.sum();
  Eigen::MatrixXcd rho = eig.states * w.cast<std::complex<double>>().asDiagonal() * eig.states.adjoint();
  return DensityMatrix(eig.num_qubits, rho);
}

ExactEvolver::ExactEvolver(const PauliSum& h) : ExactEvolver(h, diagonalize(h)) {}

ExactEvolver::ExactEvolver(const PauliSum& h, EigenDecomposition eig)
    : system_qubits_(h.num_qubits()), eig_(std::move(eig)) {}

ImaginaryTimeState ExactEvolver::evolve(const StateVector& psi0, double tau) const {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be finite and nonnegative");
  if (psi0.num_qubits() < system_qubits_) {
    throw std::invalid_argument("initial state narrower than the Hamiltonian");
  }
  // Rows of psi index system A, so (e^{-H tau} ⊗ I) acts by left multiplication.
  const Eigen::MatrixXcd psi = psi0.as_matrix(system_qubits_);
  const double e0 = eig_.energies[0];
  const Eigen::VectorXd damp = (-tau * (eig_.energies.array() - e0)).exp();
  const Eigen::MatrixXcd evolved = eig_.states * (damp.cast<std::complex<double>>().asDiagonal() *
                                                  (eig_.states.adjoint() * psi));
  const double shifted_norm2 = evolved.squaredNorm();
  ImaginaryTimeState out;
  out.log_normalization = std::log(shifted_norm2) - 2.0 * tau * e0;
  out.normalization = std::exp(out.log_normalization);
  Eigen::VectorXcd v(evolved.size());
  for (Eigen::Index i = 0; i < evolved.rows(); ++i) {
    for (Eigen::Index j = 0; j < evolved.cols(); ++j) v[i * evolved.cols() + j] = evolved(i, j);
  }
  out.state = StateVector::from_amplitudes(psi0.num_qubits(), std::move(v), true);
  return out;
}

ImaginaryTimeState exact_imaginary_evolve(const PauliSum& h, const StateVector& psi0, double tau) {
  return ExactEvolver(h).evolve(psi0, tau);
}

double exact_normalization(const EigenDecomposition& eig, double tau) {
  return std::exp(exact_log_partition(eig, 2.0 * tau) - eig.num_qubits * std::log(2.0));
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

double von_neumann_entropy(const DensityMatrix& rho) {
  if (!rho.is_valid(1e-10, 1e-10)) throw std::invalid_argument("not a valid density matrix");
  double s = 0.0;
  const Eigen::VectorXd p = rho.eigenvalues();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] > 1e-14) s -= p[i] * std::log(p[i]);
  }
  return s;
}

}  // namespace vargibbs
