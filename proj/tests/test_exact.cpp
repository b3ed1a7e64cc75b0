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
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spinchain/chain.hpp"
#include "spinchain/error.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/freefermion.hpp"
#include "spinchain/operator.hpp"

using namespace spinchain;

namespace {

// Full-space eigendecomposition, no block structure.
Matrix dense_evolve(const Matrix& a, const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXcd phase = (Complex(0, -t) * es.eigenvalues().cast<Complex>()).array().exp();
  const Matrix u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
  return u * a * u.adjoint();
}

// tr(rho^(n) O^(-n)) by explicit popcount bookkeeping.
std::map<int, double> oracle_mqc(const Matrix& rho, const Matrix& obs) {
  std::map<int, double> out;
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      const int order = std::popcount(static_cast<unsigned>(c)) - std::popcount(static_cast<unsigned>(r));
      out[order] += (rho(r, c) * obs(c, r)).real();
    }
  }
  return out;
}

Operator ends_state(int n) { return pauli_site(Axis::Z, 1, n) + pauli_site(Axis::Z, n, n); }

CouplingMatrix random_couplings(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) b(i, j) = b(j, i) = u(rng);
  }
  return CouplingMatrix(b);
}

double max_diff(const Operator& a, const Operator& b) { return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Evolve, TrivialCases) {
  const auto h = dq_hamiltonian(nn_uniform_couplings(3, 1.0));
  const Operator z = collective(Axis::Z, 3);
  EXPECT_LT(max_diff(evolve(z, h, 0.0), z), 1e-14);
  const auto hd = dipolar_hamiltonian(nn_uniform_couplings(3, 1.0));
  EXPECT_LT(max_diff(evolve(z, hd, 2.7), z), 1e-12);
}

TEST(Evolve, TwoSpinPseudoSpin) {
  const double b = 1.3;
  const auto h = dq_hamiltonian(nn_uniform_couplings(2, b));
  const Operator z = collective(Axis::Z, 2);
  for (double t : {0.0, 0.1, 0.37, 1.2, 3.0}) {
    EXPECT_NEAR(hs_inner(z, evolve(z, h, t)).real(), 8.0 * std::cos(2 * b * t), 1e-12) << t;
  }
}

TEST(Evolve, MatchesFullDiagonalization) {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 6; ++n) {
    const auto c = random_couplings(n, rng);
    for (const Operator& h : {dq_hamiltonian(c), dipolar_hamiltonian(c)}) {
      const Operator a = pauli_site(Axis::X, 1, n) + pauli_site(Axis::Y, n, n) * pauli_site(Axis::Z, 1, n);
      const Operator got = evolve(a, h, 0.83);
      EXPECT_LT((got.matrix() - dense_evolve(a.matrix(), h.matrix(), 0.83)).cwiseAbs().maxCoeff(), 1e-11) << n;
      EXPECT_NEAR(hs_inner(got, got).real(), hs_inner(a, a).real(), 1e-10);
    }
  }
}

TEST(Evolve, PropagatorReuseAndFrames) {
  const auto h = dq_hamiltonian(nn_uniform_couplings(5, 0.7));
  const Propagator p(h);
  const Operator z = collective(Axis::Z, 5);
  const auto frame = p.to_frame(z);
  for (double t : {0.2, 1.1}) EXPECT_LT(max_diff(p.from_frame(frame, t), evolve(z, h, t)), 1e-12);
  const SignalModel model(p, z, z);
  for (double t : {0.0, 0.4}) EXPECT_NEAR(model.value(t).real(), hs_inner(z, evolve(z, h, t)).real(), 1e-10);
  const Eigen::VectorXd ev = p.eigenvalues();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  Eigen::VectorXd sorted = ev;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  EXPECT_LT((sorted - es.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Evolve, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 1) = 1.0;
  EXPECT_THROW(evolve(collective(Axis::Z, 2), Operator(2, m), 1.0), UsageError);
  EXPECT_THROW(Propagator{Operator(2, m)}, UsageError);
  EXPECT_THROW(evolve(collective(Axis::Z, 3), dq_hamiltonian(nn_uniform_couplings(2, 1.0)), 1.0), UsageError);
}

TEST(MqcDirect, InitialSlice) {
  for (int n = 2; n <= 5; ++n) {
    const Operator z = collective(Axis::Z, n);
    const auto j = mqc_direct(z, dq_hamiltonian(nn_uniform_couplings(n, 1.0)), 0.0, z);
    for (const auto& [order, v] : j) {
      if (order == 0) {
        EXPECT_NEAR(v, n * std::ldexp(1.0, n), 1e-10);
      } else {
        EXPECT_NEAR(v, 0.0, 1e-12);
      }
    }
  }
}

TEST(MqcDirect, MatchesPopcountOracle) {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 6; ++n) {
    const auto c = random_couplings(n, rng);
    const auto h = dq_hamiltonian(c);
    const Operator z = collective(Axis::Z, n);
    const double t = 0.61;
    const auto got = mqc_direct(z, h, t, z);
    const Matrix rho = dense_evolve(z.matrix(), h.matrix(), t);
    const auto want = oracle_mqc(rho, rho);
    for (const auto& [order, v] : want) EXPECT_NEAR(got.at(order), v, 1e-9) << n << " " << order;
    for (int k = 1; k <= n; ++k) EXPECT_NEAR(got.at(k), got.at(-k), 1e-9);
  }
}

TEST(MqcDirect, SelectionRule) {
  for (int n = 3; n <= 8; ++n) {
    const auto h = dq_hamiltonian(nn_uniform_couplings(n, 1.0));
    for (const Operator& rho : {collective(Axis::Z, n), ends_state(n)}) {
      const MqcEvaluator ev(h, rho, collective(Axis::Z, n));
      for (int i = 0; i < 20; ++i) {
        const auto j = ev.direct(0.1 * (i + 1));
        for (const auto& [order, v] : j) {
          if (order != 0 && order != 2 && order != -2) {
            EXPECT_LT(std::abs(v), 1e-10) << n << " " << order;
          }
        }
      }
    }
  }
}

TEST(MqcDirect, TwoSpinThermal) {
  const double b = 0.9;
  const Operator z = collective(Axis::Z, 2);
  const auto h = dq_hamiltonian(nn_uniform_couplings(2, b));
  const double j00 = mqc_direct(z, h, 0.0, z).at(0);
  for (double t : {0.1, 0.5, 1.3}) {
    const double c = std::cos(2 * b * t);
    EXPECT_NEAR(mqc_direct(z, h, t, z).at(0) / j00, c * c, 1e-12);
  }
}

TEST(MqcDirect, SignBlindness) {
  const int n = 5;
  const auto c = nn_uniform_couplings(n, 1.0);
  const Operator h = dq_hamiltonian(c);
  const Operator z = collective(Axis::Z, n);
  for (double t : {0.3, 1.7}) {
    const auto a = mqc_direct(z, h, t, z);
    const auto b = mqc_direct(z, -1.0 * h, t, z);
    for (const auto& [order, v] : a) EXPECT_NEAR(v, b.at(order), 1e-9);
  }
}

TEST(MqcProtocol, MatchesDirect) {
  for (int n = 2; n <= 6; ++n) {
    const auto h = dq_hamiltonian(nn_uniform_couplings(n, 1.0));
    for (const Operator& rho : {collective(Axis::Z, n), ends_state(n)}) {
      const MqcEvaluator ev(h, rho, collective(Axis::Z, n));
      for (double t : {0.2, 0.4, 1.5}) {
        const auto d = ev.direct(t);
        const auto p = ev.protocol(t, 16, 4);
        for (int order = -4; order <= 4; ++order) {
          const double dv = d.count(order) ? d.at(order) : 0.0;
          EXPECT_NEAR(p.at(order), dv, 1e-10) << n << " " << order;
        }
      }
    }
  }
}

TEST(MqcProtocol, RandomCouplingsHigherOrders) {
  std::mt19937_64 rng(8);
  const int n = 5;
  const auto h = dq_hamiltonian(random_couplings(n, rng));
  const Operator rho = pauli_site(Axis::X, 2, n) + collective(Axis::Z, n);
  const MqcEvaluator ev(h, rho, rho);
  const auto d = ev.direct(0.9);
  const auto p = ev.protocol(0.9, 16, 4);
  for (int order = -4; order <= 4; ++order) EXPECT_NEAR(p.at(order), d.at(order), 1e-10);
}

TEST(MqcProtocol, CommutingStateGivesConstantSignal) {
  const int n = 4;
  const auto h = dipolar_hamiltonian(nn_uniform_couplings(n, 1.0));
  const Operator z = collective(Axis::Z, n);
  const MqcEvaluator ev(h, z, z);
  const double s0 = ev.phase_signal(0.7, 0.0);
  for (int m = 1; m < 16; ++m) EXPECT_NEAR(ev.phase_signal(0.7, 2 * std::numbers::pi * m / 16), s0, 1e-10);
  const auto j = ev.protocol(0.7, 16, 4);
  for (const auto& [order, v] : j) {
    if (order != 0) {
      EXPECT_NEAR(v, 0.0, 1e-10);
    }
  }
}

TEST(MqcProtocol, AliasingWithFourPhases) {
  const int n = 4;
  const auto h = dq_hamiltonian(nn_uniform_couplings(n, 1.0));
  const Operator z = collective(Axis::Z, n);
  const MqcEvaluator ev(h, z, z);
  const auto d = ev.direct(0.4);
  const auto p = ev.protocol(0.4, 4, 1);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_TRUE(p.count(2));
  EXPECT_FALSE(p.count(-2));
  EXPECT_GT(d.at(2), 1e-3);
  EXPECT_NEAR(p.at(2), d.at(2) + d.at(-2), 1e-10);
  EXPECT_NEAR(p.at(0), d.at(0) + d.at(4) + d.at(-4), 1e-10);
}

TEST(MqcProtocol, RejectsTooFewPhases) {
  const auto h = dq_hamiltonian(nn_uniform_couplings(3, 1.0));
  const Operator z = collective(Axis::Z, 3);
  EXPECT_THROW(mqc_protocol(z, h, 0.1, 8, z, 4), UsageError);
  EXPECT_THROW(mqc_protocol(z, h, 0.1, 1, z, 0), UsageError);
  EXPECT_NO_THROW(mqc_protocol(z, h, 0.1, 9, z, 4));
}

TEST(Normalize, SumsToOneAndMatchesClosedForm) {
  const int n = 6;
  const double b = 1.0;
  const Operator z = collective(Axis::Z, n);
  const auto h = dq_hamiltonian(nn_uniform_couplings(n, b));
  const std::vector<double> times = {0.0, 0.1, 0.35, 0.9, 2.0};
  const auto curve = normalize_curve(mqc_curve(z, h, times, z));
  EXPECT_TRUE(curve.normalized);
  EXPECT_NEAR(curve.value(0, 0), 1.0, 1e-12);
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_NEAR(curve.value(i, 0) + curve.value(i, 2) + curve.value(i, -2), 1.0, 1e-9);
    const auto analytic = mqc_thermal(n, b, times[i]);
    EXPECT_NEAR(curve.value(i, 0), analytic.j0, 1e-9);
    EXPECT_NEAR(curve.value(i, 2), analytic.j2, 1e-9);
    EXPECT_NEAR(curve.value(i, -2), analytic.j2, 1e-9);
  }
}

TEST(Normalize, RejectsNonpositiveTotal) {
  MqcCurve raw;
  raw.times = {0.0, 1.0};
  raw.intensities = {{{0, 1.0}}, {{0, 0.5}, {2, -0.5}}};
  EXPECT_THROW(normalize_curve(raw), NumericError);
  raw.times = {1.0, 0.0};
  EXPECT_THROW(raw.validate(), UsageError);
}

TEST(Fid, ConstantCases) {
  const int n = 3;
  const Operator z = collective(Axis::Z, n);
  const CouplingMatrix zero_c(Eigen::MatrixXd::Zero(n, n));
  const std::vector<double> times = {0.0, 0.5, 1.0, 4.0};
  const auto s = simulate_fid(z, dipolar_hamiltonian(zero_c), times);
  for (double v : s) EXPECT_NEAR(v, s.front(), 1e-12);
  EXPECT_NEAR(s.front(), n * std::ldexp(1.0, n), 1e-10);

  FidOptions no_pulse;
  no_pulse.readout_pulse = false;
  no_pulse.observable = z;
  const auto hd = dipolar_hamiltonian(nn_uniform_couplings(n, 1.0));
  const auto s2 = simulate_fid(z, hd, times, no_pulse);
  for (double v : s2) EXPECT_NEAR(v, s2.front(), 1e-10);

  EXPECT_THROW(simulate_fid(z, hd, {}), UsageError);
}

TEST(Fid, ThermalDecays) {
  const int n = 6;
  const Operator z = collective(Axis::Z, n);
  const auto hd = dipolar_hamiltonian(nn_uniform_couplings(n, 1.0));
  const auto s = simulate_fid(z, hd, {0.0, 0.5});
  EXPECT_LT(s[1], s[0]);
  // Short-time oracle: s(t) = tr(X e^{-iHt} X e^{iHt}) with the full diagonalization.
  const Operator x = collective(Axis::X, n);
  EXPECT_NEAR(s[1], hs_inner(x, Operator(n, dense_evolve(x.matrix(), hd.matrix(), 0.5))).real(), 1e-9);
}

TEST(SxCoefficients, Examples) {
  const int n = 8;
  const auto cx = sx_coefficients(collective(Axis::X, n));
  for (double v : cx) EXPECT_NEAR(v, 1.0, 1e-14);
  const auto cz = sx_coefficients(pauli_site(Axis::Z, 1, n));
  for (double v : cz) EXPECT_EQ(v, 0.0);
  const auto sz = sz_coefficients(ends_state(n));
  EXPECT_NEAR(sz[0], 1.0, 1e-14);
  EXPECT_NEAR(sz[n - 1], 1.0, 1e-14);
  EXPECT_NEAR(sz[3], 0.0, 1e-14);
}

TEST(SxCoefficients, EndSpinsDecaySlower) {
  const int n = 8;
  const auto hd = dipolar_hamiltonian(nn_uniform_couplings(n, 1.0));
  const Operator x = collective(Axis::X, n);
  const Propagator p(hd);
  const auto frame = p.to_frame(x);
  double zero_end = -1.0, zero_mid = -1.0;
  for (int i = 1; i <= 200; ++i) {
    const double t = 0.005 * i;
    const auto c = sx_coefficients(p.from_frame(frame, t));
    EXPECT_NEAR(c[0], c[n - 1], 1e-10);
    if (t <= 0.4) {
      EXPECT_GT(c[0], c[3]) << t;
    }
    if (t >= 0.2 && t <= 0.4) {
      EXPECT_GT(c[0] - c[3], 0.1) << t;
    }
    if (zero_end < 0 && c[0] <= 0.0) zero_end = t;
    if (zero_mid < 0 && c[3] <= 0.0) zero_mid = t;
  }
  ASSERT_GT(zero_mid, 0.0);
  EXPECT_GT(zero_end, 1.3 * zero_mid);
}
