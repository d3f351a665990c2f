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

#include "vargibbs/partition.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vargibbs/errors.hpp"

namespace vargibbs {

namespace {

void finish_sampled(OverlapEstimate& est, std::uint64_t hits, std::uint64_t shots) {
  est.mode = OverlapMode::Sampled;
  est.shots = shots;
  est.value = static_cast<double>(hits) / static_cast<double>(shots);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(shots));
}

void check_shots(const OverlapOptions& options) {
  if (options.mode == OverlapMode::Sampled && options.shots == 0) {
    throw std::invalid_argument("sampled overlaps need shots >= 1");
  }
}

PartitionSample make_sample(double beta, double log_z) {
  if (!std::isfinite(log_z)) {
    std::ostringstream msg;
    msg << "partition function at beta = " << beta << " is not representable (ln Z = " << log_z << ")";
    throw NumericalError(msg.str());
  }
  const double z = std::exp(log_z);
  if (!std::isfinite(z) || z <= 0.0) {
    std::ostringstream msg;
    msg << "partition function at beta = " << beta << " overflows a double (ln Z = " << log_z << ")";
    throw NumericalError(msg.str());
  }
  return {beta, z, beta > 0.0 ? -log_z / beta : -std::numeric_limits<double>::infinity()};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined key.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

OverlapEstimate overlap(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta_a, const Eigen::VectorXd& theta_b,
                        const OverlapOptions& options) {
  check_shots(options);
  const StateVector a = prepare_state(ansatz, theta_a);
  OverlapEstimate est;
  if (options.mode == OverlapMode::Exact) {
    const StateVector b = prepare_state(ansatz, theta_b);
    est.value = std::min(1.0, std::norm(inner_product(a, b)));
    return est;
  }
  const StateVector probe = apply_inverse(ansatz, theta_b, a);
  const MeasurementRecord rec = sample_bitstrings(probe, options.shots, options.seed);
  finish_sampled(est, rec.count(std::string(ansatz.num_qubits, '0')), options.shots);
  return est;
}

TrajectoryOverlaps::TrajectoryOverlaps(const AnsatzCircuit& ansatz, const Trajectory& traj, OverlapOptions options)
    : ansatz_(&ansatz), traj_(&traj), options_(options) {
  check_shots(options_);
}

OverlapEstimate TrajectoryOverlaps::overlap(std::size_t i, std::size_t j, std::uint64_t stream) const {
  OverlapOptions opts = options_;
  opts.seed = derive_seed(options_.seed, stream);
  OverlapEstimate est = vargibbs::overlap(*ansatz_, traj_->points.at(i).theta, traj_->points.at(j).theta, opts);
  est.tau = traj_->points[i].tau;
  est.tau_prime = traj_->points[j].tau;
  return est;
}

StateOverlaps::StateOverlaps(std::vector<StateVector> states, double dtau, OverlapOptions options)
    : states_(std::move(states)), dtau_(dtau), options_(options) {
  check_shots(options_);
  if (!(dtau > 0.0)) throw std::invalid_argument("dtau must be positive");
}

OverlapEstimate StateOverlaps::overlap(std::size_t i, std::size_t j, std::uint64_t stream) const {
  OverlapEstimate est;
  est.tau = static_cast<double>(i) * dtau_;
  est.tau_prime = static_cast<double>(j) * dtau_;
  const double d = std::min(1.0, std::norm(inner_product(states_.at(i), states_.at(j))));
  if (options_.mode == OverlapMode::Exact) {
    est.value = d;
    return est;
  }
  std::mt19937_64 rng(derive_seed(options_.seed, stream));
  std::binomial_distribution<std::uint64_t> hits(options_.shots, d);
  finish_sampled(est, hits(rng), options_.shots);
  return est;
}

double initial_A_taylor(const PauliSum& h, double dtau, int order) {
  if (order < 1) throw std::invalid_argument("Taylor order must be at least 1");
  double sum = 0.0;
  double factor = 1.0;  // (-2 dtau)^k / k!
  for (int k = 0; k <= order; ++k) {
    if (k > 0) factor *= -2.0 * dtau / k;
    sum += factor * moment_trace(h, k);
  }
  return sum;
}

std::string to_string(PartitionMethod method) {
  switch (method) {
    case PartitionMethod::RFM: return "rfm";
    case PartitionMethod::ROM: return "rom";
    case PartitionMethod::Exact: return "exact";
  }
  return "?";
}

PartitionCurve rfm_partition(const OverlapSource& source, int system_qubits, double A_init) {
  if (!(A_init > 0.0) || !std::isfinite(A_init)) throw std::invalid_argument("A_init must be positive");
  if (source.size() < 3) throw std::invalid_argument("RFM needs at least three grid points");
  const std::size_t n_points = source.size();
  std::vector<double> log_a(n_points);
  log_a[0] = 0.0;
  log_a[1] = std::log(A_init);
  for (std::size_t n = 2; n < n_points; ++n) {
    const OverlapEstimate d = source.overlap(n, n - 2, n);
    if (!(d.value > 0.0)) {
      std::ostringstream msg;
      msg << "overlap D(" << d.tau << ", " << d.tau_prime << ") = " << d.value
          << " is not positive; the recurrence cannot continue (too few shots?)";
      throw NumericalError(msg.str());
    }
    log_a[n] = 2.0 * log_a[n - 1] - log_a[n - 2] - std::log(d.value);
  }
  PartitionCurve curve;
  curve.method = PartitionMethod::RFM;
  curve.metadata.system_qubits = system_qubits;
  curve.metadata.A_init = A_init;
  const double log_dim = system_qubits * std::log(2.0);
  for (std::size_t n = 0; n < n_points; ++n) {
    curve.samples.push_back(make_sample(2.0 * static_cast<double>(n) * source.dtau(), log_dim + log_a[n]));
  }
  return curve;
}

PartitionCurve rom_partition(const OverlapSource& source, int system_qubits, int degeneracy, double ground_energy,
                             std::size_t tau_inf_index) {
  if (degeneracy < 1) throw std::invalid_argument("degeneracy must be at least 1");
  if (tau_inf_index >= source.size()) throw std::invalid_argument("tau_inf is not a grid point");
  PartitionCurve curve;
  curve.method = PartitionMethod::ROM;
  curve.metadata.system_qubits = system_qubits;
  curve.metadata.degeneracy = degeneracy;
  curve.metadata.ground_energy = ground_energy;
  curve.metadata.tau_inf = static_cast<double>(tau_inf_index) * source.dtau();
  for (std::size_t n = 0; n < source.size(); ++n) {
    const double tau = static_cast<double>(n) * source.dtau();
    const OverlapEstimate d = source.overlap(n, tau_inf_index, n);
    if (!(d.value > std::numeric_limits<double>::min())) {
      std::ostringstream msg;
      msg << "overlap D(" << tau << ", tau_inf) = " << d.value
          << " underflows; at high temperature the necessary number of measurements grows";
      throw NumericalError(msg.str());
    }
    const double log_z = std::log(static_cast<double>(degeneracy)) - 2.0 * ground_energy * tau - std::log(d.value);
    curve.samples.push_back(make_sample(2.0 * tau, log_z));
  }
  return curve;
}

PartitionCurve rom_partition(const OverlapSource& source, const Trajectory& traj, int system_qubits, int degeneracy,
                             std::optional<double> ground_energy) {
  if (!traj.tau_inf) throw std::invalid_argument("trajectory has no tau_inf; run detect_tau_inf first");
  const std::size_t k = traj.index_of(*traj.tau_inf);
  return rom_partition(source, system_qubits, degeneracy, ground_energy.value_or(traj.points[k].energy), k);
}

PartitionCurve exact_curve(const EigenDecomposition& eig, std::span<const double> betas) {
  PartitionCurve curve;
  curve.method = PartitionMethod::Exact;
  curve.metadata.system_qubits = eig.num_qubits;
  curve.metadata.degeneracy = eig.degeneracy;
  curve.metadata.ground_energy = eig.ground_energy();
  for (double beta : betas) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and >= 0");
    curve.samples.push_back(make_sample(beta, exact_log_partition(eig, beta)));
  }
  return curve;
}

double free_energy(double Z, double beta) {
  if (!(Z > 0.0)) throw std::invalid_argument("partition function must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  return -std::log(Z) / beta;
}

BellEstimate bell_measure(const StateVector& joint, std::span<const std::pair<int, int>> pairs, std::uint64_t shots,
                          std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  const int n = joint.num_qubits();
  std::vector<bool> used(n, false);
  auto claim = [&](int q) {
    if (q < 0 || q >= n) throw std::invalid_argument("pair qubit " + std::to_string(q) + " out of range");
    if (used[q]) throw std::invalid_argument("overlapping Bell-measurement pairs");
    used[q] = true;
  };
  for (const auto& [c, d] : pairs) {
    claim(c);
    claim(d);
  }
  Eigen::VectorXcd v = joint.amplitudes();
  for (const auto& [c, d] : pairs) {
    apply_gate_inplace(v, n, Gate::cnot(c, d));
    apply_gate_inplace(v, n, Gate::h(c));
  }
  const StateVector rotated = StateVector::from_amplitudes(n, std::move(v), false, 1e-9);
  double sum = 0.0;
  for (std::uint64_t idx : sample_indices(rotated, shots, seed)) {
    int sign = 1;
    for (const auto& [c, d] : pairs) {
      if ((idx & detail::qubit_bit(n, c)) && (idx & detail::qubit_bit(n, d))) sign = -sign;
    }
    sum += sign;
  }
  BellEstimate est;
  est.shots = shots;
  est.value = sum / static_cast<double>(shots);
  est.std_error = std::sqrt(std::max(0.0, 1.0 - est.value * est.value) / static_cast<double>(shots));
  return est;
}

DegeneracyEstimate estimate_degeneracy(const StateVector& state, int system_qubits, std::uint64_t shots,
                                       std::uint64_t seed) {
  const int width = state.num_qubits();
  if (system_qubits < 1 || system_qubits > width) throw std::invalid_argument("bad system qubit count");
  if (2 * width > kMaxQubits) throw std::invalid_argument("two copies exceed the 16-qubit limit");
  const StateVector joint = tensor_product(state, state);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < system_qubits; ++i) pairs.emplace_back(i, width + i);
  const BellEstimate bell = bell_measure(joint, pairs, shots, seed);
  if (!(bell.value > 0.0)) {
    throw NumericalError("purity estimate " + std::to_string(bell.value) + " is not positive; increase shots");
  }
  DegeneracyEstimate est;
  est.purity = bell.value;
  est.shots = shots;
  est.std_error = bell.std_error;
  const double inv = 1.0 / bell.value;
  est.m = std::max(1, static_cast<int>(std::lround(inv)));
  est.deviation = std::abs(inv - est.m);
  est.flagged = est.deviation > 0.25;
  return est;
}

std::string degeneracy_record(const DegeneracyEstimate& e) {
  std::ostringstream out;
  out << std::setprecision(17) << "purity=" << e.purity << " m=" << e.m << " shots=" << e.shots
      << " stderr=" << e.std_error;
  return out.str();
}

void write_partition_csv(std::ostream& out, const PartitionCurve& curve, bool header) {
  if (header) out << "method,beta,Z,F\n";
  out << std::setprecision(17);
  const std::string name = to_string(curve.method);
  for (const auto& s : curve.samples) out << name << ',' << s.beta << ',' << s.Z << ',' << s.F << '\n';
}

}  // namespace vargibbs
