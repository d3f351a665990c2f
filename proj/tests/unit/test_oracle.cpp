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

#include <gtest/gtest.h>

#include <random>

#include "reference.hpp"
#include "vargibbs/oracle.hpp"

using namespace vargibbs;

TEST(Diagonalize, HeisenbergFerromagnet) {
  const EigenDecomposition eig = diagonalize(heisenberg_chain(2, 1.0));
  Eigen::VectorXd expected(4);
  expected << -1, -1, -1, 3;
  EXPECT_LT((eig.energies - expected).norm(), 1e-12);
  EXPECT_EQ(eig.degeneracy, 3);
  EXPECT_NEAR(eig.first_excited_energy(), 3.0, 1e-12);
}

TEST(Diagonalize, HeisenbergAntiferromagnetGroundIsSinglet) {
  const EigenDecomposition eig = diagonalize(heisenberg_chain(2, -1.0));
  EXPECT_EQ(eig.degeneracy, 1);
  EXPECT_NEAR(eig.ground_energy(), -3.0, 1e-12);
  ref::Vec singlet = ref::Vec::Zero(4);
  singlet[1] = M_SQRT1_2;
  singlet[2] = -M_SQRT1_2;
  EXPECT_NEAR(std::norm(singlet.dot(eig.states.col(0))), 1.0, 1e-12);
}

TEST(Diagonalize, NullHamiltonian) {
  const EigenDecomposition eig = diagonalize(PauliSum(3, {}));
  EXPECT_LT(eig.energies.norm(), 1e-15);
  EXPECT_EQ(eig.degeneracy, 8);
}

TEST(Diagonalize, SizeLimit) {
  EXPECT_THROW(diagonalize(heisenberg_chain(9, 1.0)), std::invalid_argument);
}

TEST(ExactPartition, Values) {
  EXPECT_NEAR(exact_partition(heisenberg_chain(3, 0.4), 0.0), 8.0, 1e-12);
  EXPECT_NEAR(exact_partition(heisenberg_chain(2, 1.0), 1.0), 3 * std::exp(1.0) + std::exp(-3.0), 1e-12);
  EXPECT_NEAR(exact_partition(heisenberg_chain(2, 1.0), 1.0), 8.20463, 1e-5);
}

TEST(ExactPartition, LowTemperatureTail) {
  const EigenDecomposition eig = diagonalize(heisenberg_chain(3, 1.0));
  const double gap = eig.first_excited_energy() - eig.ground_energy();
  for (double beta : {5.0, 10.0, 20.0}) {
    const double asym = eig.degeneracy * std::exp(-beta * eig.ground_energy());
    const double z = exact_partition(eig, beta);
    EXPECT_LE((z - asym) / asym, (std::pow(2.0, 3) - eig.degeneracy) * std::exp(-beta * gap) + 1e-14);
  }
}

TEST(ExactEvolve, TauZeroIsIdentity) {
  const StateVector psi0 = maximally_entangled_state(2);
  const ImaginaryTimeState s = exact_imaginary_evolve(heisenberg_chain(2, 1.0), psi0, 0.0);
  EXPECT_NEAR(s.normalization, 1.0, 1e-14);
  EXPECT_NEAR(fidelity(s.state, psi0), 1.0, 1e-14);
}

TEST(ExactEvolve, NormalizationAtHalf) {
  const ImaginaryTimeState s = exact_imaginary_evolve(heisenberg_chain(2, 1.0), maximally_entangled_state(2), 0.5);
  EXPECT_NEAR(s.normalization, ref::two_site_A(0.5, 1.0), 1e-12);
  EXPECT_NEAR(s.normalization, 2.051158, 1e-6);
  EXPECT_NEAR(s.state.norm(), 1.0, 1e-12);
}

TEST(ExactEvolve, MatchesDenseReferenceAndStaysNormalized) {
  std::mt19937_64 rng(17);
  const PauliSum h = heisenberg_chain(2, 0.8);
  const ExactEvolver evolver(h);
  for (int t = 0; t < 10; ++t) {
    const ref::Vec v = ref::random_state(4, rng);
    const double tau = 0.3 * t;
    const ImaginaryTimeState s = evolver.evolve(StateVector::from_amplitudes(4, v), tau);
    EXPECT_NEAR(s.state.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::norm(ref::imaginary_evolve(ref::heisenberg(2, 0.8), v, tau).dot(s.state.amplitudes())), 1.0,
                1e-10);
  }
}

TEST(ExactEvolve, SemigroupProperty) {
  const ExactEvolver evolver(heisenberg_chain(3, -0.6));
  std::mt19937_64 rng(21);
  const StateVector psi0 = StateVector::from_amplitudes(6, ref::random_state(6, rng));
  for (auto [t1, t2] : {std::pair{0.2, 0.5}, std::pair{1.0, 1.5}, std::pair{0.0, 2.0}}) {
    const ImaginaryTimeState a = evolver.evolve(psi0, t1);
    const ImaginaryTimeState ab = evolver.evolve(a.state, t2);
    const ImaginaryTimeState direct = evolver.evolve(psi0, t1 + t2);
    EXPECT_LT((ab.state.amplitudes() - direct.state.amplitudes()).norm(), 1e-10);
    EXPECT_NEAR(a.log_normalization + ab.log_normalization, direct.log_normalization, 1e-10);
  }
}

TEST(ExactEvolve, PartitionIdentity) {
  for (int n : {2, 3, 4}) {
    for (double j : {1.0, -1.0}) {
      const EigenDecomposition eig = diagonalize(heisenberg_chain(n, j));
      const ExactEvolver evolver(heisenberg_chain(n, j), eig);
      const Eigen::VectorXd e = ref::spectrum(ref::heisenberg(n, j));
      for (double beta : {0.0, 0.3, 1.0, 4.0, 10.0}) {
        const double z = std::pow(2.0, n) * evolver.evolve(maximally_entangled_state(n), beta / 2).normalization;
        EXPECT_NEAR(z / ref::partition(e, beta), 1.0, 1e-10);
        EXPECT_NEAR(exact_partition(eig, beta) / ref::partition(e, beta), 1.0, 1e-10);
      }
    }
  }
}

TEST(Fidelity, Examples) {
  std::mt19937_64 rng(2);
  const StateVector psi = StateVector::from_amplitudes(3, ref::random_state(3, rng));
  EXPECT_NEAR(fidelity(psi, psi), 1.0, 1e-14);
  EXPECT_EQ(fidelity(StateVector::basis(2, 1), StateVector::basis(2, 2)), 0.0);
  EXPECT_NEAR(fidelity(maximally_entangled_state(1), StateVector(2)), 0.5, 1e-15);
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(von_neumann_entropy(partial_trace(StateVector(2), {0, 1})), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(2, Eigen::MatrixXcd::Identity(4, 4) / 4.0)), std::log(4.0), 1e-12);
}

TEST(Thermodynamics, FreeEnergyEqualsEMinusTS) {
  for (auto [n, j, beta] : {std::tuple{2, 1.0, 1.0}, std::tuple{3, -0.5, 2.0}, std::tuple{4, 1.0, 0.3}}) {
    const EigenDecomposition eig = diagonalize(heisenberg_chain(n, j));
    const double f = -std::log(ref::partition(ref::spectrum(ref::heisenberg(n, j)), beta)) / beta;
    const double e = thermal_energy(eig, beta);
    const double s = von_neumann_entropy(gibbs_state(eig, beta));
    EXPECT_NEAR(e - s / beta, f, 1e-9);
  }
}
