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

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vargibbs/gate.hpp"
#include "vargibbs/statevector.hpp"

namespace vargibbs {

/// V(theta) = U_d(theta_d) ... U_1(theta_1) acting on |0...0>, together with
/// the starting parameters. Every slot 0..num_params-1 is used by exactly one
/// rotation gate.
struct AnsatzCircuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  int num_params = 0;
  Eigen::VectorXd theta0;

  void validate() const;

  /// Index into `gates` of the rotation that owns parameter `p`.
  std::size_t gate_of_param(int p) const;
};

/// dU_p/dtheta_p = sum_k coefficient_k U_p u_k with u_k a Pauli unitary.
struct DerivativeTerm {
  std::complex<double> coefficient;
  Gate insertion;  // GateKind::PauliUnitary
  int param_index = 0;
};

/// Default 2N-qubit circuit for system A = qubits 0..N-1 and ancilla B =
/// qubits N..2N-1:
///
///   1. H on every A qubit;
///   2. `layers` blocks of RY on every A qubit followed by CRY(a_i -> a_{i+1});
///   3. CNOT(a_i -> b_i), copying the A register onto B;
///   4. a fixed Bell-basis rotation H(q), CNOT(q -> q+1) on adjacent pairs
///      (0,1), (2,3), ... of A, mirrored on B.
///
/// With all angles zero the state is (1/sqrt(2^N)) sum_i |i>_A |i>_B. The
/// rotations shape the Schmidt weights before the copy, so the family is
/// sum_i s_i |w_i>_A |w_i>_B with {w_i} the pair-Bell basis. Parameter count
/// is layers * (2N - 1).
AnsatzCircuit build_default_ansatz(int system_qubits, int layers);

inline constexpr int kDefaultLayers = 2;

int default_ansatz_num_params(int system_qubits, int layers);

/// Circuit-description format: one gate per line, "H q", "CNOT qc qt",
/// "RY q slot", "CRY qc qt slot"; optional "QUBITS n" line; '#' comments.
/// Without a QUBITS line the width is the largest qubit index + 1. A missing
/// theta0 means all zeros.
AnsatzCircuit parse_circuit(std::string_view text, std::optional<Eigen::VectorXd> theta0 = std::nullopt);

std::string circuit_to_text(const AnsatzCircuit& ansatz);

/// V(theta)|0...0>.
StateVector prepare_state(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta);

/// V(theta)^dagger |state>.
StateVector apply_inverse(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta, const StateVector& state);

std::vector<DerivativeTerm> gate_derivative_decomposition(const Gate& gate);

/// d|phi(theta)>/d theta_p, unnormalized.
Eigen::VectorXcd derivative_state(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta, int p);

/// All derivative states as columns, sharing the forward sweep.
Eigen::MatrixXcd derivative_states(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta);

}  // namespace vargibbs
