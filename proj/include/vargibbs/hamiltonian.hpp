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

#include <string>
#include <string_view>
#include <vector>

#include "vargibbs/pauli.hpp"
#include "vargibbs/statevector.hpp"

namespace vargibbs {

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

/// Hermitian operator sum_l c_l P_l with real coefficients and distinct
/// strings. Terms keep first-appearance order; exact zeros after merging are
/// dropped.
class PauliSum {
 public:
  PauliSum() = default;
  PauliSum(int num_qubits, const std::vector<PauliTerm>& terms);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of `p`, zero when absent.
  double coefficient(const PauliString& p) const;

  /// Largest |c_l|; sets the natural energy scale (J for Heisenberg chains).
  double scale() const;

  /// One "<coef> <letters>" term per '+'-joined chunk, coefficients printed
  /// with 17 significant digits.
  std::string to_text() const;

 private:
  int num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Grammar: terms separated by newlines or standalone '+' tokens, each
/// "<real coefficient> <letters in IXYZ>". '#' starts a comment running to
/// the end of the line.
PauliSum parse_pauli_sum(std::string_view text);

/// -J sum_{i} (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}) on an open chain.
PauliSum heisenberg_chain(int num_qubits, double coupling);

/// Tr[H^k] / 2^N by symbolic expansion of Pauli products.
double moment_trace(const PauliSum& h, int order);

/// Dense 2^N x 2^N matrix of `h`. N <= 16.
Eigen::MatrixXcd to_dense(const PauliSum& h);

/// (H ⊗ I)|v> where H acts on the leading h.num_qubits() qubits of `v`.
Eigen::VectorXcd apply_hamiltonian(const PauliSum& h, const Eigen::VectorXcd& v, int state_qubits);

/// <state|(H ⊗ I)|state>. The state may be wider than H; H acts on its
/// leading qubits (system A).
double expectation(const PauliSum& h, const StateVector& state);

}  // namespace vargibbs
