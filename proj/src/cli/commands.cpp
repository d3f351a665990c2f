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

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "vargibbs/cli.hpp"
#include "vargibbs/errors.hpp"
#include "vargibbs/oracle.hpp"
#include "vargibbs/partition.hpp"
#include "vargibbs/varqite.hpp"

namespace vargibbs::cli {

namespace {

constexpr std::uint64_t kOverlapStream = 1;
constexpr std::uint64_t kSwapStream = 2;

struct Setup {
  PauliSum h;
  int system_qubits = 0;
  AnsatzCircuit ansatz;
  Trajectory traj;
  double tau_inf_eps = 0;
};

Setup evolve_setup(const RunConfig& c, std::ostream& log) {
  Setup s;
  s.h = resolve_hamiltonian(c);
  s.system_qubits = s.h.num_qubits();
  s.ansatz = resolve_ansatz(c, s.system_qubits);
  if (c.circuit.empty() && s.system_qubits > 2) {
    log << "warning: the default ansatz spans the exact thermal states only for N <= 2; pass --circuit for N = "
        << s.system_qubits << "\n";
  }
  EvolveOptions opt;
  opt.dtau = c.dtau;
  opt.steps = c.steps;
  opt.ridge = c.ridge;
  s.traj = evolve(s.ansatz, s.ansatz.theta0, s.h, opt);
  s.tau_inf_eps = c.tau_inf_eps.value_or(default_tau_inf_threshold(s.h));
  return s;
}

// Accepts shot counts written as "10000" or "1e4".
const CLI::Validator kCount(
    [](std::string& text) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(text, &used);
      } catch (const std::exception&) {
        return std::string("not a count: ") + text;
      }
      if (used != text.size() || v < 0 || v != std::floor(v) || v > 9.0e18) return std::string("not a count: ") + text;
      text = std::to_string(static_cast<std::uint64_t>(v));
      return std::string();
    },
    "COUNT");

std::string real(double x) {
  std::ostringstream o;
  o << std::setprecision(17) << x;
  return o.str();
}

void note(std::ostream& out, const std::string& key, const std::string& value) {
  out << "# " << key << " = " << value << '\n';
}

}  // namespace

int cmd_evolve(const RunConfig& c, std::ostream& out, std::ostream& log) {
  Setup s = evolve_setup(c, log);

  std::vector<double> fid;
  if (c.oracle) {
    const ExactEvolver exact(s.h);
    const StateVector psi0 = prepare_state(s.ansatz, s.ansatz.theta0);
    for (const auto& pt : s.traj.points) {
      fid.push_back(fidelity(exact.evolve(psi0, pt.tau).state, prepare_state(s.ansatz, pt.theta)));
    }
  }

  std::optional<double> tau_inf;
  std::string failure;
  try {
    tau_inf = detect_tau_inf(s.traj, s.tau_inf_eps);
  } catch (const NumericalError& e) {
    failure = e.what();
  }

  std::ostringstream summary;
  summary << std::setprecision(17) << "final_energy=" << s.traj.points.back().energy
          << " tau_inf=" << (tau_inf ? real(*tau_inf) : "none") << " energy_upticks=" << s.traj.energy_upticks;
  if (c.oracle) summary << " min_fidelity=" << *std::min_element(fid.begin(), fid.end());

  RunConfig resolved = c;
  resolved.tau_inf_eps = s.tau_inf_eps;
  out << config_header(resolved);
  note(out, "hamiltonian_terms", s.h.to_text());
  note(out, "num_params", std::to_string(s.ansatz.num_params));
  write_trajectory_csv(out, s.traj, c.oracle ? &fid : nullptr);
  out << "# summary: " << summary.str() << '\n';
  log << summary.str() << '\n';
  if (!failure.empty()) {
    log << "error: " << failure << '\n';
    return kNumericalError;
  }
  return kSuccess;
}

int cmd_partition(const RunConfig& c, std::ostream& out, std::ostream& log) {
  Setup s = evolve_setup(c, log);
  const int n = s.system_qubits;

  OverlapOptions opt;
  opt.mode = c.overlap_mode == "sampled" ? OverlapMode::Sampled : OverlapMode::Exact;
  opt.shots = c.shots;
  opt.seed = derive_seed(c.seed, kOverlapStream);
  const TrajectoryOverlaps source(s.ansatz, s.traj, opt);

  const StateVector psi0 = prepare_state(s.ansatz, s.ansatz.theta0);
  if (psi0.num_qubits() != 2 * n || fidelity(psi0, maximally_entangled_state(n)) < 1 - 1e-9) {
    log << "warning: the initial state is not the maximally entangled state on 2N qubits; Z = 2^N A does not hold\n";
  }

  std::ostringstream meta;
  RunConfig resolved = c;
  PartitionCurve curve;
  if (c.method == "rfm") {
    double a_init = 0;
    if (c.exact_init) {
      a_init = ExactEvolver(s.h).evolve(psi0, c.dtau).normalization;
      note(meta, "A_init_source", "exact");
    } else {
      a_init = initial_A_taylor(s.h, c.dtau, c.taylor_order);
      note(meta, "A_init_source", "taylor-" + std::to_string(c.taylor_order));
    }
    note(meta, "A_init", real(a_init));
    curve = rfm_partition(source, n, a_init);
  } else {
    const double tau_inf = detect_tau_inf(s.traj, s.tau_inf_eps);
    const std::size_t k = s.traj.index_of(tau_inf);
    int m = 0;
    if (c.m) {
      m = *c.m;
      note(meta, "m_source", "given");
    } else if (c.degeneracy == "oracle") {
      m = diagonalize(s.h).degeneracy;
      note(meta, "m_source", "oracle");
    } else {
      const DegeneracyEstimate est = estimate_degeneracy(prepare_state(s.ansatz, s.traj.points[k].theta), n,
                                                         c.swap_shots, derive_seed(c.seed, kSwapStream));
      m = est.m;
      note(meta, "m_source", "swap");
      note(meta, "degeneracy_estimate", degeneracy_record(est));
      if (est.flagged) {
        log << "warning: 1/purity = " << 1 / est.purity << " is far from an integer; m = " << m << " is doubtful\n";
      }
    }
    const double e0 = c.e0.value_or(s.traj.points[k].energy);
    resolved.m = m;
    resolved.e0 = e0;
    resolved.tau_inf_eps = s.tau_inf_eps;
    note(meta, "tau_inf", real(tau_inf));
    curve = rom_partition(source, n, m, e0, k);
  }

  out << config_header(resolved) << meta.str();
  write_partition_csv(out, curve);
  return kSuccess;
}

int cmd_exact(const RunConfig& c, std::ostream& out, std::ostream&) {
  const PauliSum h = resolve_hamiltonian(c);
  std::vector<double> betas;
  if (c.betas) {
    betas = parse_beta_grid(*c.betas);
  } else {
    for (int k = 0; k <= c.steps; ++k) betas.push_back(2.0 * k * c.dtau);
  }
  const EigenDecomposition eig = diagonalize(h);
  const PartitionCurve curve = exact_curve(eig, betas);
  out << config_header(c);
  note(out, "ground_energy", real(eig.ground_energy()));
  note(out, "ground_degeneracy", std::to_string(eig.degeneracy));
  write_partition_csv(out, curve);
  return kSuccess;
}

int run(const RunConfig& c, std::ostream& stdout_stream, std::ostream& log) {
  try {
    validate(c);
    std::ofstream file;
    if (!c.out.empty()) {
      const std::filesystem::path parent = std::filesystem::path(c.out).parent_path();
      std::error_code ec;
      if (!parent.empty()) std::filesystem::create_directories(parent, ec);
      file.open(c.out);
      if (!file) throw std::invalid_argument("cannot open output file '" + c.out + "'");
    }
    std::ostream& out = c.out.empty() ? stdout_stream : file;
    if (c.command == "evolve") return cmd_evolve(c, out, log);
    if (c.command == "partition") return cmd_partition(c, out, log);
    return cmd_exact(c, out, log);
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    log << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}

int main(int argc, const char* const* argv, std::ostream& stdout_stream, std::ostream& log) {
  RunConfig c;
  CLI::App app{"Gibbs-state partition functions from variational imaginary-time evolution"};
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
  app.require_subcommand(1);

  std::string m_text, e0_text, eps_text, betas_text;
  app.add_option("--hamiltonian", c.hamiltonian, "Pauli-sum file or inline text (default: Heisenberg chain)");
  app.add_option("--qubits", c.qubits, "Heisenberg chain length N")->capture_default_str();
  app.add_option("--coupling,-J", c.coupling, "Heisenberg coupling J")->capture_default_str();
  app.add_option("--circuit", c.circuit, "circuit-description file replacing the default ansatz");
  app.add_option("--theta0", c.theta0, "comma-separated initial parameters");
  app.add_option("--layers", c.layers, "default-ansatz layer count")->capture_default_str();
  app.add_option("--dtau", c.dtau, "imaginary-time step")->capture_default_str();
  app.add_option("--steps", c.steps, "number of time steps")->capture_default_str();
  app.add_option("--ridge", c.ridge, "Tikhonov ridge of the McLachlan solve")->capture_default_str();
  app.add_option("--method", c.method, "partition method: rfm or rom")->capture_default_str();
  app.add_option("--overlap-mode", c.overlap_mode, "exact or sampled")->capture_default_str();
  app.add_option("--shots", c.shots, "shots per sampled overlap")->transform(kCount)->capture_default_str();
  app.add_option("--seed", c.seed, "master seed")->capture_default_str();
  app.add_option("--taylor-order", c.taylor_order, "Taylor order of the A(dtau) seed")->capture_default_str();
  app.add_flag("--exact-init", c.exact_init, "seed RFM with the exact A(dtau)");
  app.add_option("--degeneracy", c.degeneracy, "ROM degeneracy source: swap or oracle")->capture_default_str();
  app.add_option("--m", m_text, "ground-state degeneracy, overriding --degeneracy");
  app.add_option("--e0", e0_text, "ground energy for ROM (default: trajectory energy at tau_inf)");
  app.add_option("--tau-inf-eps", eps_text, "energy-rate threshold for tau_inf (default 1e-7 scale^2)");
  app.add_option("--swap-shots", c.swap_shots, "shots of the destructive SWAP test")
      ->transform(kCount)
      ->capture_default_str();
  auto* betas_opt = app.add_option("--betas", betas_text, "exact-curve grid: b0,b1,... or start:stop:step");
  app.add_flag("--oracle", c.oracle, "append the fidelity against exact evolution");
  app.add_option("--sweep", c.sweep, "J=..;method=..;seed=.. runs on worker threads");
  app.add_option("--threads", c.threads, "sweep worker threads (0: hardware)")->capture_default_str();
  app.add_option("--out", c.out, "output file (default stdout; prefix for sweeps)");

  for (const char* name : {"evolve", "partition", "exact"}) {
    app.add_subcommand(name, std::string(name) == "evolve"      ? "VarQITE trajectory CSV"
                             : std::string(name) == "partition" ? "RFM or ROM partition-function CSV"
                                                                : "exact partition-function CSV")
        ->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, stdout_stream, log);
    return code == 0 ? kSuccess : kConfigError;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    auto number = [](const std::string& text, const char* what) {
      std::size_t used = 0;
      double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(std::string("malformed ") + what + " '" + text + "'");
      return v;
    };
    if (!m_text.empty()) {
      const double m = number(m_text, "m");
      if (m != std::floor(m)) throw std::invalid_argument("m must be an integer");
      c.m = static_cast<int>(m);
    }
    if (!e0_text.empty()) c.e0 = number(e0_text, "e0");
    if (!eps_text.empty()) c.tau_inf_eps = number(eps_text, "tau-inf-eps");
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
  if (betas_opt->count() > 0) c.betas = betas_text;

  std::vector<RunConfig> runs;
  try {
    runs = expand_sweep(c);
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
  if (c.sweep.empty()) return run(runs.front(), stdout_stream, log);

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(c.threads > 0 ? c.threads : hw, runs.size());
  std::vector<int> codes(runs.size(), 0);
  std::vector<std::ostringstream> logs(runs.size());
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < runs.size(); i = next++) {
          std::ostringstream unused;
          codes[i] = run(runs[i], unused, logs[i]);
        }
      });
    }
  }
  int worst = kSuccess;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    log << runs[i].out << ": exit " << codes[i] << '\n' << logs[i].str();
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace vargibbs::cli
