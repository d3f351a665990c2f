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

#include <iosfwd>
#include <optional>
#include <vector>

#include "vargibbs/ansatz.hpp"
#include "vargibbs/hamiltonian.hpp"

namespace vargibbs {

/// M theta_dot = C with M_pq = Re<d_p phi|d_q phi> and
/// C_p = -Re<d_p phi|H|phi>.
struct McLachlanSystem {
  Eigen::MatrixXd M;
  Eigen::VectorXd C;
};

Eigen::MatrixXd compute_M(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta);
Eigen::VectorXd compute_C(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta, const PauliSum& h);

/// Both blocks from a single set of derivative states.
McLachlanSystem build_mclachlan_system(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta,
                                       const PauliSum& h);

/// argmin ||M x - C||^2 + ridge ||x||^2. With ridge == 0 a singular M yields
/// the minimal-norm least-squares solution.
Eigen::VectorXd solve_update(const McLachlanSystem& system, double ridge);

inline constexpr double kDefaultRidge = 1e-6;

struct TrajectoryPoint {
  double tau = 0.0;
  Eigen::VectorXd theta;
  double energy = 0.0;
  /// McLachlan distance ||(d/dtau + H - E)|phi>||^2 for the step taken from
  /// this point; NaN on the final point.
  double residual = 0.0;
};

struct Trajectory {
  double dtau = 0.0;
  std::vector<TrajectoryPoint> points;
  std::optional<double> tau_inf;
  /// Steps whose energy rose by more than the uptick tolerance.
  int energy_upticks = 0;

  std::size_t size() const { return points.size(); }
  /// Grid index of `tau`; throws unless tau is a grid point.
  std::size_t index_of(double tau) const;
};

struct EvolveOptions {
  double dtau = 0.025;
  int steps = 200;
  double ridge = kDefaultRidge;
  /// Tolerance on E(tau + dtau) - E(tau) before counting an uptick, in units
  /// of the Hamiltonian scale.
  double uptick_tolerance = 1e-6;
  /// Verify symmetry and positive semidefiniteness of M on every step.
  bool check_metric = true;
};

/// Explicit Euler integration theta += dtau * solve_update(M, C).
/// Throws NumericalError when theta becomes non-finite or M loses its
/// invariants.
Trajectory evolve(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta0, const PauliSum& h,
                  const EvolveOptions& options);

/// Smallest grid tau_n (n >= 1) such that |E_k - E_{k-1}| / dtau < epsilon for
/// every k >= n. Stores the result in traj.tau_inf. Throws NumericalError when
/// the trajectory never settles.
double detect_tau_inf(Trajectory& traj, double epsilon);

/// Energy-rate threshold used when none is given: 1e-7 * scale^2.
double default_tau_inf_threshold(const PauliSum& h);

/// "tau,energy,theta_0,...,theta_{d-1}" with 17 significant digits. An
/// optional extra column is appended when `fidelity` is given.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<double>* fidelity = nullptr);

}  // namespace vargibbs
