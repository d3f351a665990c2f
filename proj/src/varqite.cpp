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

#include "vargibbs/varqite.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vargibbs/errors.hpp"

namespace vargibbs {

namespace {

void check_width(const AnsatzCircuit& ansatz, const PauliSum& h) {
  if (ansatz.num_qubits < h.num_qubits()) {
    throw std::invalid_argument("ansatz acts on " + std::to_string(ansatz.num_qubits) +
                                " qubits but the Hamiltonian needs " + std::to_string(h.num_qubits()));
  }
}

}  // namespace

Eigen::MatrixXd compute_M(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta) {
  const Eigen::MatrixXcd d = derivative_states(ansatz, theta);
  Eigen::MatrixXd m = (d.adjoint() * d).real();
  return (m + m.transpose()) / 2.0;
}

Eigen::VectorXd compute_C(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta, const PauliSum& h) {
  return build_mclachlan_system(ansatz, theta, h).C;
}

McLachlanSystem build_mclachlan_system(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta,
                                       const PauliSum& h) {
  check_width(ansatz, h);
  const Eigen::MatrixXcd d = derivative_states(ansatz, theta);
  const StateVector phi = prepare_state(ansatz, theta);
  const Eigen::VectorXcd h_phi = apply_hamiltonian(h, phi.amplitudes(), phi.num_qubits());
  McLachlanSystem sys;
  const Eigen::MatrixXd m = (d.adjoint() * d).real();
  sys.M = (m + m.transpose()) / 2.0;
  sys.C = -(d.adjoint() * h_phi).real();
  return sys;
}

Eigen::VectorXd solve_update(const McLachlanSystem& system, double ridge) {
  const auto& m = system.M;
  const auto& c = system.C;
  if (m.rows() != m.cols() || m.rows() != c.size()) throw std::invalid_argument("McLachlan system shape mismatch");
  if (!m.allFinite() || !c.allFinite()) throw std::invalid_argument("McLachlan system has non-finite entries");
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw std::invalid_argument("ridge must be a finite value >= 0");
  if (m.size() == 0) return Eigen::VectorXd();
  if (ridge > 0.0) {
    const Eigen::MatrixXd normal = m.transpose() * m + ridge * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    return normal.ldlt().solve(m.transpose() * c);
  }
  return m.completeOrthogonalDecomposition().solve(c);
}

std::size_t Trajectory::index_of(double tau) const {
  if (dtau <= 0.0) throw std::invalid_argument("trajectory has no time step");
  const double k = std::round(tau / dtau);
  if (k < 0 || k >= static_cast<double>(points.size()) || std::abs(k * dtau - tau) > 1e-9 * std::max(1.0, tau)) {
    throw std::invalid_argument("tau = " + std::to_string(tau) + " is not a grid point of the trajectory");
  }
  return static_cast<std::size_t>(k);
}

Trajectory evolve(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta0, const PauliSum& h,
                  const EvolveOptions& options) {
  if (!(options.dtau > 0.0) || !std::isfinite(options.dtau)) throw std::invalid_argument("dtau must be positive");
  if (options.steps < 1) throw std::invalid_argument("steps must be at least 1");
  check_width(ansatz, h);
  const double tolerance = options.uptick_tolerance * std::max(h.scale(), 1e-300);

  Trajectory traj;
  traj.dtau = options.dtau;
  traj.points.reserve(options.steps + 1);
  Eigen::VectorXd theta = theta0;
  for (int n = 0; n <= options.steps; ++n) {
    const StateVector phi = prepare_state(ansatz, theta);
    const double energy = expectation(h, phi);
    TrajectoryPoint pt{n * options.dtau, theta, energy, std::numeric_limits<double>::quiet_NaN()};
    if (n > 0 && energy - traj.points.back().energy > tolerance) ++traj.energy_upticks;
    if (n == options.steps) {
      traj.points.push_back(std::move(pt));
      break;
    }

    const McLachlanSystem sys = build_mclachlan_system(ansatz, theta, h);
    if (options.check_metric) {
      if ((sys.M - sys.M.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
        throw NumericalError("metric M lost symmetry at tau = " + std::to_string(pt.tau));
      }
      const double min_eig =
          sys.M.size() ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sys.M, Eigen::EigenvaluesOnly)
                             .eigenvalues()
                             .minCoeff()
                       : 0.0;
      if (min_eig < -1e-9) {
        throw NumericalError("metric M not positive semidefinite at tau = " + std::to_string(pt.tau));
      }
    }
    const Eigen::VectorXd rate = solve_update(sys, options.ridge);
    const Eigen::VectorXcd h_phi = apply_hamiltonian(h, phi.amplitudes(), phi.num_qubits());
    const double variance = h_phi.squaredNorm() - energy * energy;
    pt.residual = rate.dot(sys.M * rate) - 2.0 * rate.dot(sys.C) + variance;
    traj.points.push_back(std::move(pt));

    theta += options.dtau * rate;
    if (!theta.allFinite()) {
      std::ostringstream msg;
      msg << "non-finite parameters after step " << n + 1 << " (tau = " << (n + 1) * options.dtau
          << "); last finite energy " << energy;
      throw NumericalError(msg.str());
    }
  }
  return traj;
}

double detect_tau_inf(Trajectory& traj, double epsilon) {
  if (traj.points.size() < 2) throw std::invalid_argument("need at least two trajectory points");
  if (!(epsilon > 0.0)) throw std::invalid_argument("energy-rate threshold must be positive");
  std::size_t first = 0;
  for (std::size_t k = traj.points.size() - 1; k >= 1; --k) {
    const double rate = std::abs(traj.points[k].energy - traj.points[k - 1].energy) / traj.dtau;
    if (!(rate < epsilon)) break;
    first = k;
  }
  if (first == 0) {
    std::ostringstream msg;
    msg << "energy did not converge within tau = " << traj.points.back().tau << " (rate threshold " << epsilon
        << ")";
    throw NumericalError(msg.str());
  }
  traj.tau_inf = traj.points[first].tau;
  return *traj.tau_inf;
}

double default_tau_inf_threshold(const PauliSum& h) {
  const double s = h.scale();
  return 1e-7 * (s > 0.0 ? s * s : 1.0);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<double>* fidelity) {
  if (fidelity && fidelity->size() != traj.points.size()) {
    throw std::invalid_argument("fidelity column length mismatch");
  }
  const Eigen::Index d = traj.points.empty() ? 0 : traj.points.front().theta.size();
  out << "tau,energy";
  for (Eigen::Index p = 0; p < d; ++p) out << ",theta_" << p;
  if (fidelity) out << ",fidelity";
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    const auto& pt = traj.points[i];
    out << pt.tau << ',' << pt.energy;
    for (Eigen::Index p = 0; p < d; ++p) out << ',' << pt.theta[p];
    if (fidelity) out << ',' << (*fidelity)[i];
    out << '\n';
  }
}

}  // namespace vargibbs
