// Copyright 2026 The spinchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spinchain/chain.hpp"
#include "spinchain/error.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/operator.hpp"

using namespace spinchain;

namespace {

const Complex kI(0.0, 1.0);

// Kronecker-product oracle: single-site matrix at position `site` (1 = leftmost factor).
Matrix kron_embed(const Eigen::Matrix2cd& m, int site, int n) {
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 1; k <= n; ++k) {
    const Matrix f = k == site ? Matrix(m) : Matrix(Matrix::Identity(2, 2));
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
    }
    out = next;
  }
  return out;
}

Eigen::Matrix2cd pauli2(Axis a) {
  Eigen::Matrix2cd m;
  switch (a) {
    case Axis::X: m << 0, 1, 1, 0; break;
    case Axis::Y: m << 0, -kI, kI, 0; break;
    case Axis::Z: m << 1, 0, 0, -1; break;
    case Axis::Plus: m << 0, 1, 0, 0; break;
    case Axis::Minus: m << 0, 0, 1, 0; break;
  }
  return m;
}

Operator random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(g(rng), g(rng));
  return Operator(n, 0.5 * (m + m.adjoint()));
}

double max_diff(const Operator& a, const Operator& b) { return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(PauliSite, SingleSpinDefinitions) {
  const Operator z = pauli_site(Axis::Z, 1, 1);
  EXPECT_EQ(z.matrix()(0, 0), Complex(1, 0));
  EXPECT_EQ(z.matrix()(1, 1), Complex(-1, 0));
  const Operator p = pauli_site(Axis::Plus, 1, 1);
  EXPECT_EQ(p.matrix()(0, 1), Complex(1, 0));
  EXPECT_EQ(p.matrix()(1, 0), Complex(0, 0));
  EXPECT_EQ(p.matrix()(0, 0), Complex(0, 0));
}

TEST(PauliSite, MatchesKroneckerEmbedding) {
  for (int n = 1; n <= 4; ++n) {
    for (int site = 1; site <= n; ++site) {
      for (Axis a : {Axis::X, Axis::Y, Axis::Z, Axis::Plus, Axis::Minus}) {
        EXPECT_EQ((pauli_site(a, site, n).matrix() - kron_embed(pauli2(a), site, n)).cwiseAbs().maxCoeff(), 0.0)
            << "axis " << axis_name(a) << " site " << site << " n " << n;
      }
    }
  }
}

TEST(PauliSite, LadderFromCartesian) {
  const Operator x = pauli_site(Axis::X, 2, 3), y = pauli_site(Axis::Y, 2, 3);
  EXPECT_LT(max_diff(pauli_site(Axis::Plus, 2, 3), Complex(0.5, 0) * (x + kI * y)), 1e-15);
  EXPECT_LT(max_diff(pauli_site(Axis::Minus, 2, 3), Complex(0.5, 0) * (x - kI * y)), 1e-15);
}

TEST(PauliSite, AlgebraOnThreeSpins) {
  const Operator x2 = pauli_site(Axis::X, 2, 3);
  const Operator y2 = pauli_site(Axis::Y, 2, 3);
  const Operator z2 = pauli_site(Axis::Z, 2, 3);
  EXPECT_LT(max_diff(commutator(x2, y2), Complex(0, 2) * z2), 1e-14);
  EXPECT_LT(commutator(x2, pauli_site(Axis::Z, 1, 3)).max_abs(), 1e-15);
  const Operator eye = Operator::identity(3);
  const Axis axes[] = {Axis::X, Axis::Y, Axis::Z};
  for (int k = 1; k <= 3; ++k) {
    for (Axis a : axes) {
      for (Axis b : axes) {
        const Operator pa = pauli_site(a, k, 3), pb = pauli_site(b, k, 3);
        const Operator expected = a == b ? 2.0 * eye : Operator::zero(3);
        EXPECT_LT(max_diff(anticommutator(pa, pb), expected), 1e-14);
        for (int j = 1; j <= 3; ++j) {
          if (j != k) {
            EXPECT_LT(commutator(pa, pauli_site(b, j, 3)).max_abs(), 1e-15);
          }
        }
      }
    }
  }
}

TEST(PauliSite, Errors) {
  EXPECT_THROW(pauli_site(Axis::X, 0, 3), UsageError);
  EXPECT_THROW(pauli_site(Axis::X, 4, 3), UsageError);
  EXPECT_THROW(pauli_site(Axis::X, 1, kDefaultDenseCap + 1), CapacityError);
  EXPECT_THROW(parse_axis("w"), UsageError);
}

TEST(DenseCap, EnvironmentOverride) {
  ASSERT_EQ(setenv("SPINCHAIN_DENSE_CAP", "3", 1), 0);
  EXPECT_EQ(dense_cap(), 3);
  EXPECT_THROW(collective(Axis::Z, 4), CapacityError);
  EXPECT_NO_THROW(collective(Axis::Z, 3));
  ASSERT_EQ(setenv("SPINCHAIN_DENSE_CAP", "abc", 1), 0);
  EXPECT_THROW(dense_cap(), UsageError);
  unsetenv("SPINCHAIN_DENSE_CAP");
  EXPECT_EQ(dense_cap(), kDefaultDenseCap);
}

TEST(Collective, Examples) {
  const Operator z2 = collective(Axis::Z, 2);
  Matrix expect = Matrix::Zero(4, 4);
  expect.diagonal() << 2, 0, 0, -2;
  EXPECT_EQ((z2.matrix() - expect).cwiseAbs().maxCoeff(), 0.0);

  std::vector<double> ev;
  const Operator z3 = collective(Axis::Z, 3);
  for (int k = 0; k < 8; ++k) ev.push_back(z3.matrix()(k, k).real());
  std::sort(ev.begin(), ev.end());
  EXPECT_EQ(ev, (std::vector<double>{-3, -1, -1, -1, 1, 1, 1, 3}));

  const Operator x2 = collective(Axis::X, 2);
  EXPECT_EQ(x2.trace(), Complex(0, 0));
  EXPECT_LT(max_diff(x2, pauli_site(Axis::X, 1, 2) + pauli_site(Axis::X, 2, 2)), 1e-15);
  EXPECT_NEAR(hs_norm(x2), std::sqrt(8.0), 1e-14);
}

TEST(ZRotation, Examples) {
  EXPECT_LT(max_diff(z_rotation(0.0, 3), Operator::identity(3)), 1e-15);
  EXPECT_LT(max_diff(z_rotation(2 * std::numbers::pi, 3), -1.0 * Operator::identity(3)), 1e-12);
  EXPECT_LT(max_diff(z_rotation(2 * std::numbers::pi, 2), Operator::identity(2)), 1e-12);
  // Oracle: exp(-i phi Sz / 2) by Eigen's matrix exponential of the diagonal.
  const Operator r = z_rotation(0.7, 3);
  const Matrix gen = Complex(0, -0.35) * collective(Axis::Z, 3).matrix();
  Matrix oracle = Matrix::Zero(8, 8);
  for (int k = 0; k < 8; ++k) oracle(k, k) = std::exp(gen(k, k));
  EXPECT_LT((r.matrix() - oracle).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((r.matrix() * r.matrix().adjoint() - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ZRotation, Composition) {
  const Operator a = z_rotation(0.3, 4), b = z_rotation(1.9, 4);
  EXPECT_LT(max_diff(a * b, z_rotation(2.2, 4)), 1e-12);
}

TEST(ZRotation, PhaseOfDoubleQuantumCoherence) {
  const double phi = std::numbers::pi / 5;
  const Operator dq = pauli_site(Axis::Plus, 1, 3) * pauli_site(Axis::Plus, 3, 3);
  const Operator r = z_rotation(phi, 3);
  const Operator conj = r * dq * r.adjoint();
  EXPECT_LT(max_diff(conj, std::polar(1.0, -2 * phi) * dq), 1e-14);
  EXPECT_LT(max_diff(z_conjugate(dq, phi), conj), 1e-14);
}

TEST(TransverseRotation, MatchesDenseExponential) {
  std::mt19937_64 rng(5);
  const Operator a = random_hermitian(3, rng);
  const double phase = 0.4, angle = 1.1;
  const Matrix gen = std::cos(phase) * collective(Axis::X, 3).matrix() + std::sin(phase) * collective(Axis::Y, 3).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(gen);
  const Matrix u = es.eigenvectors() *
                   (Complex(0, -angle / 2) * es.eigenvalues().cast<Complex>()).array().exp().matrix().asDiagonal() *
                   es.eigenvectors().adjoint();
  const Matrix oracle = u * a.matrix() * u.adjoint();
  EXPECT_LT((transverse_rotation(a, phase, angle).matrix() - oracle).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Coherence, Examples) {
  const auto z = coherence_decompose(collective(Axis::Z, 4));
  ASSERT_EQ(z.components().size(), 1u);
  EXPECT_TRUE(z.components().count(0));
  const auto p = coherence_decompose(pauli_site(Axis::Plus, 1, 3));
  ASSERT_EQ(p.components().size(), 1u);
  EXPECT_TRUE(p.components().count(1));

  const int n = 4;
  const double b = 1.0, t = 0.3;
  const Operator rho = evolve(collective(Axis::Z, n), dq_hamiltonian(nn_uniform_couplings(n, b)), t);
  const auto parts = coherence_decompose(rho);
  for (const auto& [order, block] : parts.components()) {
    const double mag = block.cwiseAbs().maxCoeff();
    if (order == 0 || order == 2 || order == -2) {
      EXPECT_GT(mag, 1e-3) << "order " << order;
    } else {
      EXPECT_LT(mag, 1e-12) << "order " << order;
    }
  }
}

TEST(Coherence, ReconstructionAndConjugationProperties) {
  std::mt19937_64 rng(11);
  const double phi = std::numbers::pi / 5;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    const Operator a = random_hermitian(n, rng);
    const auto parts = coherence_decompose(a);
    EXPECT_LT(max_diff(parts.reconstruct(), a), 1e-12);
    for (const auto& [order, block] : parts.components()) {
      EXPECT_LT((block.adjoint() - parts.component(-order)).cwiseAbs().maxCoeff(), 1e-12);
    }
    if (trial < 10) {
      const Operator r = z_rotation(phi, n);
      const Matrix rotated = r.matrix() * a.matrix() * r.matrix().adjoint();
      const auto rparts = coherence_decompose(Operator(n, rotated));
      for (const auto& [order, block] : parts.components()) {
        EXPECT_LT((rparts.component(order) - std::polar(1.0, -order * phi) * block).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
}

TEST(InnerProducts, Examples) {
  EXPECT_EQ(hs_inner(pauli_site(Axis::Z, 1, 2), pauli_site(Axis::Z, 1, 2)), Complex(4, 0));
  EXPECT_EQ(hs_inner(pauli_site(Axis::Z, 1, 2), pauli_site(Axis::Z, 2, 2)), Complex(0, 0));
  EXPECT_EQ(hs_inner(pauli_site(Axis::Plus, 1, 1), pauli_site(Axis::Minus, 1, 1)), Complex(0, 0));
  // tr((s+)^dag s-) = tr(s- s-) = 0; the pairing tr(s+ s-) is 1.
  EXPECT_EQ((pauli_site(Axis::Plus, 1, 1) * pauli_site(Axis::Minus, 1, 1)).trace(), Complex(1, 0));
  EXPECT_EQ(hs_inner(pauli_site(Axis::Minus, 1, 1), pauli_site(Axis::Minus, 1, 1)), Complex(1, 0));
  EXPECT_THROW(hs_inner(pauli_site(Axis::Z, 1, 2), pauli_site(Axis::Z, 1, 3)), UsageError);
}

TEST(InnerProducts, Correlation) {
  std::mt19937_64 rng(3);
  const Operator a = random_hermitian(3, rng);
  EXPECT_NEAR(correlation(a, a), 1.0, 1e-14);
  EXPECT_EQ(correlation(pauli_site(Axis::Z, 1, 2), pauli_site(Axis::X, 1, 2)), 0.0);
  const int n = 6;
  const double c = correlation(collective(Axis::Z, n), pauli_site(Axis::Z, 1, n) + pauli_site(Axis::Z, n, n));
  EXPECT_NEAR(c, std::sqrt(2.0 / 6.0), 1e-14);
  EXPECT_THROW(correlation(Operator::zero(3), a), UsageError);
}
