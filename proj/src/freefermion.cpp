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
#include "spinchain/freefermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "spinchain/error.hpp"

namespace spinchain {

namespace {

void require_chain(int n_spins, const char* what) {
  if (n_spins < 2) throw UsageError(std::string(what) + ": n_spins must be >= 2");
}

double pairwise_range(const double* p, std::size_t n) {
  if (n <= 8) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += p[k];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_range(p, half) + pairwise_range(p + half, n - half);
}

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// sum_{r,c} a(r,c) b(c,r) = tr(a b)
Complex trace_product(const Matrix& a, const Matrix& b) {
  return (a.cwiseProduct(b.transpose())).sum();
}

}  // namespace

InitialState parse_initial_state(std::string_view name) {
  if (name == "thermal") return InitialState::Thermal;
  if (name == "ends") return InitialState::Ends;
  throw UsageError("unknown model '" + std::string(name) + "' (expected thermal or ends)");
}

std::string_view initial_state_name(InitialState s) {
  return s == InitialState::Thermal ? "thermal" : "ends";
}

FermionSpectrum::FermionSpectrum(int n_spins, double b) : n_(n_spins), b_(b) {
  require_chain(n_spins, "fermion_spectrum");
  if (!std::isfinite(b)) throw UsageError("fermion_spectrum: b must be finite");
  const double np1 = n_spins + 1;
  for (int k = 1; k <= n_spins; ++k) {
    kappa_.push_back(std::numbers::pi * k / np1);
    cos_.push_back(std::sin(std::numbers::pi * (n_spins + 1 - 2 * k) / (2.0 * np1)));
    sin_.push_back(std::sin(std::numbers::pi * k / np1));
  }
}

FermionSpectrum fermion_spectrum(int n_spins, double b) { return FermionSpectrum(n_spins, b); }

double pairwise_sum(std::span<const double> values) {
  return pairwise_range(values.data(), values.size());
}

ZeroDouble mqc_thermal(int n_spins, double b, double t) {
  const FermionSpectrum fs(n_spins, b);
  std::vector<double> c2(static_cast<std::size_t>(n_spins)), s2(static_cast<std::size_t>(n_spins));
  for (int k = 1; k <= n_spins; ++k) {
    const double x = 2.0 * fs.eigenphase(k, t);
    const double c = std::cos(x);
    const double s = std::sin(x);
    c2[k - 1] = c * c;
    s2[k - 1] = s * s;
  }
  return {pairwise_sum(c2) / n_spins, pairwise_sum(s2) / (2.0 * n_spins)};
}

ZeroDouble mqc_ends(int n_spins, double b, double t) {
  const FermionSpectrum fs(n_spins, b);
  std::vector<double> c2(static_cast<std::size_t>(n_spins)), s2(static_cast<std::size_t>(n_spins));
  for (int k = 1; k <= n_spins; ++k) {
    const double x = 2.0 * fs.eigenphase(k, t);
    const double c = std::cos(x);
    const double s = std::sin(x);
    const double w = fs.sin_kappa(k) * fs.sin_kappa(k);
    c2[k - 1] = w * c * c;
    s2[k - 1] = w * s * s;
  }
  const double np1 = n_spins + 1;
  return {2.0 * pairwise_sum(c2) / np1, pairwise_sum(s2) / np1};
}

ZeroDouble mqc_analytic(InitialState state, int n_spins, double b, double t) {
  return state == InitialState::Thermal ? mqc_thermal(n_spins, b, t) : mqc_ends(n_spins, b, t);
}

double time_averaged_j2(InitialState state, int n_spins, double b, double t_max, int samples) {
  if (samples < 1) throw UsageError("time_averaged_j2: samples must be >= 1");
  if (!(t_max > 0.0)) throw UsageError("time_averaged_j2: t_max must be positive");
  std::vector<double> v(static_cast<std::size_t>(samples));
  for (int m = 0; m < samples; ++m) {
    const double t = (m + 0.5) * t_max / samples;
    v[m] = mqc_analytic(state, n_spins, b, t).j2;
  }
  return pairwise_sum(v) / samples;
}

FermionPair jw_fermion(int j, int n_spins) {
  require_dense(n_spins);
  const std::uint64_t m = site_mask(j, n_spins);
  const std::uint64_t before = ~((m << 1) - 1) & ((std::uint64_t{1} << n_spins) - 1);
  const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << n_spins);
  Matrix c = Matrix::Zero(d, d);
  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(d); ++s) {
    if ((s & m) == 0) continue;
    const double sign = (std::popcount(s & before) % 2 == 0) ? -1.0 : 1.0;
    c(static_cast<Eigen::Index>(s ^ m), static_cast<Eigen::Index>(s)) = sign;
  }
  FermionPair p;
  p.create = c.adjoint();
  p.annihilate = std::move(c);
  return p;
}

Operator dq_fermion_form(int n_spins, double b) {
  require_chain(n_spins, "dq_fermion_form");
  require_dense(n_spins);
  std::vector<FermionPair> c;
  for (int j = 1; j <= n_spins; ++j) c.push_back(jw_fermion(j, n_spins));
  const Eigen::Index d = c[0].annihilate.rows();
  Matrix h = Matrix::Zero(d, d);
  for (int j = 0; j + 1 < n_spins; ++j) {
    h -= b * (c[j + 1].create * c[j].create + c[j].annihilate * c[j + 1].annihilate);
  }
  return Operator(n_spins, std::move(h));
}

bool IdentityReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed(); });
}

std::string IdentityReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed()) return c.name;
  }
  return {};
}

IdentityCheck trig_orthogonality_check(int n_spins) {
  require_chain(n_spins, "trig_orthogonality_check");
  const double np1 = n_spins + 1;
  double worst = 0.0;
  std::vector<double> terms(2 * static_cast<std::size_t>(n_spins) + 1);
  for (int k = -n_spins; k <= n_spins; ++k) {
    if (k == 0) continue;
    for (int h = -n_spins; h <= n_spins; ++h) {
      if (h == 0) continue;
      const double kappa = std::numbers::pi * k / np1;
      const double eta = std::numbers::pi * h / np1;
      for (int j = -n_spins; j <= n_spins; ++j) {
        terms[j + n_spins] = std::sin(kappa * j) * std::sin(eta * j);
      }
      const double lhs = pairwise_sum(terms) / np1;
      const double rhs = (k == h ? 1.0 : 0.0) - (k == -h ? 1.0 : 0.0);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return {"trig_orthogonality", worst, 1e-12};
}

IdentityCheck trig_sin_cos_check(int n_spins) {
  require_chain(n_spins, "trig_sin_cos_check");
  const double np1 = n_spins + 1;
  double worst = 0.0;
  std::vector<double> terms(2 * static_cast<std::size_t>(n_spins) + 1);
  for (int k = -n_spins; k <= n_spins; ++k) {
    if (k == 0) continue;
    for (int h = -n_spins; h <= n_spins; ++h) {
      if (h == 0) continue;
      const double kappa = std::numbers::pi * k / np1;
      const double eta = std::numbers::pi * h / np1;
      for (int j = -n_spins; j <= n_spins; ++j) {
        terms[j + n_spins] = std::sin(kappa * j) * std::cos(eta * j);
      }
      worst = std::max(worst, std::abs(pairwise_sum(terms)));
    }
  }
  return {"trig_sin_cos", worst, 1e-12};
}

IdentityReport identity_residuals(int n_spins, const IdentityOptions& options) {
  if (n_spins < 2 || n_spins > 8) throw UsageError("identity_residuals: need 2 <= N <= 8");
  require_dense(n_spins);
  const int n = n_spins;
  const double np1 = n + 1;
  IdentityReport rep{n, {}, {}};
  rep.checks.push_back(trig_orthogonality_check(n));
  rep.checks.push_back(trig_sin_cos_check(n));

  std::vector<FermionPair> c;
  for (int j = 1; j <= n; ++j) c.push_back(jw_fermion(j, n));
  const Eigen::Index d = c[0].annihilate.rows();
  const Matrix eye = Matrix::Identity(d, d);

  double car = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Matrix mixed = c[i].create * c[j].annihilate + c[j].annihilate * c[i].create;
      car = std::max(car, max_abs_entry(mixed - (i == j ? eye : Matrix::Zero(d, d))));
      const Matrix same = c[i].annihilate * c[j].annihilate + c[j].annihilate * c[i].annihilate;
      car = std::max(car, max_abs_entry(same));
    }
  }
  rep.checks.push_back({"canonical_anticommutation", car, 1e-12});

  double zres = 0.0;
  for (int j = 1; j <= n; ++j) {
    const Matrix z = eye - 2.0 * c[j - 1].create * c[j - 1].annihilate;
    zres = std::max(zres, max_abs_entry(z - pauli_site(Axis::Z, j, n).matrix()));
  }
  rep.checks.push_back({"jw_sigma_z", zres, 1e-12});

  const Operator spin = [&] {
    Matrix acc = Operator::zero(n).matrix();
    for (int i = 1; i < n; ++i) {
      acc += (pauli_site(Axis::Plus, i, n) * pauli_site(Axis::Plus, i + 1, n)).matrix();
      acc += (pauli_site(Axis::Minus, i, n) * pauli_site(Axis::Minus, i + 1, n)).matrix();
    }
    return Operator(n, std::move(acc));
  }();
  rep.checks.push_back(
      {"dq_fermion_form", max_abs_entry(spin.matrix() - dq_fermion_form(n, 1.0).matrix()), 1e-12});

  // Sine modes s_k (k = 1..N) and their reflected partners s_{-k} = -s_{N+1-k}.
  std::vector<Matrix> s(static_cast<std::size_t>(n), Matrix::Zero(d, d));
  for (int k = 1; k <= n; ++k) {
    const double kappa = std::numbers::pi * k / np1;
    for (int j = 1; j <= n; ++j) s[k - 1] += std::sqrt(2.0 / np1) * std::sin(kappa * j) * c[j - 1].annihilate;
  }
  auto s_neg = [&](int k) -> Matrix { return -s[n - k]; };
  const double r2 = std::sqrt(2.0);
  // d_k and d_{-k} inverted from a_{+-k} = (gamma d_{+-k} + d^dag_{-+k}) / sqrt2.
  std::vector<Matrix> d_pos(static_cast<std::size_t>(n)), d_neg(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    d_pos[k - 1] = (s[k - 1] + s_neg(k).adjoint()) / r2;
    d_neg[k - 1] = (s[k - 1].adjoint() - s_neg(k)) / r2;
  }
  const double gamma_pos = options.flip_gamma ? -1.0 : 1.0;
  const double gamma_neg = -1.0;
  std::vector<Matrix> a_pos(static_cast<std::size_t>(n)), a_neg(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    a_pos[k - 1] = (gamma_pos * d_pos[k - 1] + d_neg[k - 1].adjoint()) / r2;
    a_neg[k - 1] = (gamma_neg * d_neg[k - 1] + d_pos[k - 1].adjoint()) / r2;
  }

  const double full = std::ldexp(1.0, n - 1);
  const double quarter = std::ldexp(1.0, n - 2);
  double pair_res = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double tp = trace_product(a_pos[k - 1].adjoint(), a_pos[k - 1]).real();
    const double tn = trace_product(a_neg[k - 1].adjoint(), a_neg[k - 1]).real();
    rep.pair_traces.push_back(tp);
    pair_res = std::max({pair_res, std::abs(tp - full), std::abs(tn - full)});
  }
  rep.checks.push_back({"trace_pair", pair_res, 1e-9});

  std::vector<Matrix> number(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) number[k - 1] = a_pos[k - 1].adjoint() * a_pos[k - 1];
  double num_res = 0.0;
  for (int h = 1; h <= n; ++h) {
    for (int k = 1; k <= n; ++k) {
      const Complex v = trace_product(number[h - 1], number[k - 1]);
      const double expected = h == k ? full : quarter;
      num_res = std::max(num_res, std::abs(v - Complex(expected, 0.0)));
    }
  }
  rep.checks.push_back({"trace_number_product", num_res, 1e-9});

  // tr(a^dag_h a^dag_{-k} a_{-k'} a_{h'}); the index -k is identified with N+1-k.
  std::vector<Matrix> left(static_cast<std::size_t>(n * n)), right(static_cast<std::size_t>(n * n));
  for (int h = 1; h <= n; ++h) {
    for (int k = 1; k <= n; ++k) {
      left[(h - 1) * n + (k - 1)] = a_pos[h - 1].adjoint() * a_neg[k - 1].adjoint();
      right[(k - 1) * n + (h - 1)] = a_neg[k - 1] * a_pos[h - 1];
    }
  }
  double pairing_res = 0.0;
  for (int h = 1; h <= n; ++h) {
    for (int k = 1; k <= n; ++k) {
      for (int kp = 1; kp <= n; ++kp) {
        for (int hp = 1; hp <= n; ++hp) {
          const Complex v = trace_product(left[(h - 1) * n + (k - 1)], right[(kp - 1) * n + (hp - 1)]);
          double expected = 0.0;
          if (k == kp && h == hp) expected += quarter;
          if (hp == n + 1 - k && h == n + 1 - kp) expected -= quarter;
          pairing_res = std::max(pairing_res, std::abs(v - Complex(expected, 0.0)));
        }
      }
    }
  }
  rep.checks.push_back({"trace_pairing", pairing_res, 1e-9});
  return rep;
}

}  // namespace spinchain
