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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vargibbs/ansatz.hpp"
#include "vargibbs/hamiltonian.hpp"
#include "vargibbs/oracle.hpp"
#include "vargibbs/statevector.hpp"
#include "vargibbs/varqite.hpp"

namespace vargibbs {

enum class OverlapMode { Exact, Sampled };

struct OverlapOptions {
  OverlapMode mode = OverlapMode::Exact;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
};

/// D(tau, tau') = |<phi(tau)|phi(tau')>|^2, exact or estimated from shots.
struct OverlapEstimate {
  double tau = 0.0;
  double tau_prime = 0.0;
  double value = 0.0;
  OverlapMode mode = OverlapMode::Exact;
  std::optional<std::uint64_t> shots;
  /// sqrt(D (1 - D) / shots) in sampled mode.
  std::optional<double> std_error;
};

/// Independent stream seed for the `stream`-th random draw of a run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Exact mode squares the inner product of the two prepared states. Sampled
/// mode prepares V^dagger(theta_b) V(theta_a)|0> and counts all-zeros outcomes.
OverlapEstimate overlap(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta_a, const Eigen::VectorXd& theta_b,
                        const OverlapOptions& options);

/// Overlaps between the states of an imaginary-time grid tau_k = k dtau.
class OverlapSource {
 public:
  virtual ~OverlapSource() = default;
  virtual double dtau() const = 0;
  virtual std::size_t size() const = 0;
  /// D(tau_i, tau_j). `stream` picks an independent random stream.
  virtual OverlapEstimate overlap(std::size_t i, std::size_t j, std::uint64_t stream) const = 0;
};

/// Variational states of a trajectory, measured through the ansatz circuit.
class TrajectoryOverlaps final : public OverlapSource {
 public:
  TrajectoryOverlaps(const AnsatzCircuit& ansatz, const Trajectory& traj, OverlapOptions options);
  double dtau() const override { return traj_->dtau; }
  std::size_t size() const override { return traj_->points.size(); }
  OverlapEstimate overlap(std::size_t i, std::size_t j, std::uint64_t stream) const override;

 private:
  const AnsatzCircuit* ansatz_;
  const Trajectory* traj_;
  OverlapOptions options_;
};

/// Explicit states, e.g. the exact imaginary-time flow. Sampled mode draws
/// the all-zeros count from Binomial(shots, D).
class StateOverlaps final : public OverlapSource {
 public:
  StateOverlaps(std::vector<StateVector> states, double dtau, OverlapOptions options = {});
  double dtau() const override { return dtau_; }
  std::size_t size() const override { return states_.size(); }
  OverlapEstimate overlap(std::size_t i, std::size_t j, std::uint64_t stream) const override;

 private:
  std::vector<StateVector> states_;
  double dtau_;
  OverlapOptions options_;
};

/// sum_{k=0}^{order} (-2 dtau)^k / k! * Tr[H^k] / 2^N, the Taylor estimate
/// of A(dtau) at the maximally entangled state.
double initial_A_taylor(const PauliSum& h, double dtau, int order);

inline constexpr int kDefaultTaylorOrder = 4;

enum class PartitionMethod { RFM, ROM, Exact };
std::string to_string(PartitionMethod method);

struct PartitionSample {
  double beta = 0.0;
  double Z = 0.0;
  /// -ln(Z) / beta; -inf at beta = 0.
  double F = 0.0;
};

struct PartitionMetadata {
  int system_qubits = 0;
  std::optional<double> A_init;
  std::optional<int> degeneracy;
  std::optional<double> ground_energy;
  std::optional<double> tau_inf;
};

struct PartitionCurve {
  PartitionMethod method = PartitionMethod::Exact;
  std::vector<PartitionSample> samples;
  PartitionMetadata metadata;
};

/// Recurrence Formula Method. With A(0) = 1 and A(dtau) = A_init,
///
///   A(n dtau) = A((n-1) dtau)^2 / (D(n dtau, (n-2) dtau) A((n-2) dtau)),
///
/// evaluated in log space. Emits (beta = 2 n dtau, Z = 2^N A(n dtau)) for
/// every grid point. Throws NumericalError when an overlap is not positive.
PartitionCurve rfm_partition(const OverlapSource& source, int system_qubits, double A_init);

/// Reversed Overlap Method: Z(2 tau) = m e^{-2 E0 tau} / D(tau, tau_inf) for
/// every grid tau.
PartitionCurve rom_partition(const OverlapSource& source, int system_qubits, int degeneracy, double ground_energy,
                             std::size_t tau_inf_index);

/// Same, with tau_inf read from the trajectory and E0 defaulting to the
/// trajectory energy there.
PartitionCurve rom_partition(const OverlapSource& source, const Trajectory& traj, int system_qubits, int degeneracy,
                             std::optional<double> ground_energy = std::nullopt);

/// Exact curve over the given inverse temperatures.
PartitionCurve exact_curve(const EigenDecomposition& eig, std::span<const double> betas);

double free_energy(double Z, double beta);

struct BellEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
};

/// Destructive SWAP test: CNOT(c -> d) then H(c) on every pair, computational
/// readout, each pair scores -1 on (1, 1) and +1 otherwise; the shot value is
/// the product over pairs. Estimates Tr[rho sigma] for the paired registers.
BellEstimate bell_measure(const StateVector& joint, std::span<const std::pair<int, int>> pairs, std::uint64_t shots,
                          std::uint64_t seed);

struct DegeneracyEstimate {
  double purity = 0.0;
  int m = 0;
  std::uint64_t shots = 0;
  double std_error = 0.0;
  /// |1/purity - m|; flagged above 0.25.
  double deviation = 0.0;
  bool flagged = false;
};

/// Purity of the system-A reduction of `state` (2N qubits, A leading) from
/// two copies, and m = round(1 / purity).
DegeneracyEstimate estimate_degeneracy(const StateVector& state, int system_qubits, std::uint64_t shots,
                                       std::uint64_t seed);

/// "purity=<p> m=<m> shots=<n> stderr=<s>".
std::string degeneracy_record(const DegeneracyEstimate& estimate);

/// "method,beta,Z,F" rows with 17 significant digits.
void write_partition_csv(std::ostream& out, const PartitionCurve& curve, bool header = true);

}  // namespace vargibbs
