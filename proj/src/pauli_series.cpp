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
#include "spinchain/pauli_series.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "spinchain/error.hpp"

namespace spinchain {

namespace {

constexpr Complex kIPow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

int phase_of(const PauliString& p) { return std::popcount(p.x & p.z) & 3; }

std::uint64_t site_bit(int site, int n) {
  if (site < 1 || site > n) {
    throw UsageError("Pauli site " + std::to_string(site) + " out of range 1.." + std::to_string(n));
  }
  return std::uint64_t{1} << (n - site);
}

}  // namespace

PauliString pauli_string(int n_spins, std::initializer_list<std::pair<int, Axis>> factors) {
  if (n_spins < 1 || n_spins > 64) throw UsageError("Pauli strings support 1..64 spins");
  PauliString p;
  for (const auto& [site, axis] : factors) {
    const std::uint64_t m = site_bit(site, n_spins);
    if ((p.x | p.z) & m) throw UsageError("Pauli string: site " + std::to_string(site) + " repeated");
    switch (axis) {
      case Axis::X: p.x |= m; break;
      case Axis::Y: p.x |= m; p.z |= m; break;
      case Axis::Z: p.z |= m; break;
      default: throw UsageError("Pauli string factors must be x, y or z");
    }
  }
  return p;
}

PauliSum::PauliSum(int n_spins) : n_(n_spins) {
  if (n_spins < 1 || n_spins > 64) throw UsageError("Pauli sums support 1..64 spins");
}

void PauliSum::add(const PauliString& p, Complex c) {
  if (c == Complex(0.0, 0.0)) return;
  terms_[p] += c;
}

Complex PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void PauliSum::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < tol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

double PauliSum::max_abs() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  if (a.n_spins() != b.n_spins()) throw UsageError("commutator: Pauli sums on different sizes");
  PauliSum out(a.n_spins());
  for (const auto& [pa, ca] : a.terms()) {
    const int fa = phase_of(pa);
    for (const auto& [pb, cb] : b.terms()) {
      const int anti = std::popcount(pa.x & pb.z) + std::popcount(pa.z & pb.x);
      if ((anti & 1) == 0) continue;
      const PauliString r{pa.x ^ pb.x, pa.z ^ pb.z};
      const int e = (fa + phase_of(pb) - phase_of(r) + 2 * std::popcount(pa.z & pb.x)) & 3;
      out.add(r, 2.0 * kIPow[e] * ca * cb);
    }
  }
  return out;
}

PauliSum collective_pauli_sum(Axis axis, int n_spins) {
  PauliSum s(n_spins);
  for (int k = 1; k <= n_spins; ++k) s.add(pauli_string(n_spins, {{k, axis}}), 1.0);
  return s;
}

PauliSum dipolar_pauli_sum(const CouplingMatrix& c, double scale) {
  const int n = c.n_spins();
  if (!(scale > 0.0)) throw UsageError("dipolar_pauli_sum: scale must be positive");
  PauliSum h(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double b = c(i, j) / scale;
      if (b == 0.0) continue;
      h.add(pauli_string(n, {{i, Axis::Z}, {j, Axis::Z}}), b);
      h.add(pauli_string(n, {{i, Axis::X}, {j, Axis::X}}), -0.5 * b);
      h.add(pauli_string(n, {{i, Axis::Y}, {j, Axis::Y}}), -0.5 * b);
    }
  }
  return h;
}

Operator to_dense(const PauliSum& p) {
  const int n = p.n_spins();
  require_dense(n);
  const std::uint64_t d = std::uint64_t{1} << n;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& [s, c] : p.terms()) {
    const Complex global = kIPow[phase_of(s)] * c;
    for (std::uint64_t col = 0; col < d; ++col) {
      const double zsign = (std::popcount(col & s.z) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(col ^ s.x), static_cast<Eigen::Index>(col)) += global * zsign;
    }
  }
  return Operator(n, std::move(m));
}

SxSeries::SxSeries(const CouplingMatrix& c, int order) : n_(c.n_spins()), order_(order) {
  if (order < 0 || order > 12 || order % 2 != 0) {
    throw UsageError("sx_series: order must be even and <= 12, got " + std::to_string(order));
  }
  if (n_ > 64) throw UsageError("sx_series: at most 64 spins");
  b_ref_ = c.reference();
  if (!(b_ref_ > 0.0)) throw UsageError("sx_series: couplings are all zero");
  const PauliSum h = dipolar_pauli_sum(c, b_ref_);
  PauliSum term = collective_pauli_sum(Axis::X, n_);
  std::vector<PauliString> sx;
  for (int k = 1; k <= n_; ++k) sx.push_back(pauli_string(n_, {{k, Axis::X}}));
  double factorial = 1.0;
  for (int m = 0; m <= order_; ++m) {
    if (m > 0) {
      term = commutator(h, term);
      term.prune(kSeriesPruneTolerance);
      factorial *= m;
    }
    const Complex pref = kIPow[(4 - (m & 3)) & 3] / factorial;
    std::vector<double> row(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) {
      const Complex v = pref * term.coefficient(sx[k]);
      row[k] = v.real();
      imag_residual_ = std::max(imag_residual_, std::abs(v.imag()));
    }
    taylor_.push_back(std::move(row));
  }
}

std::vector<double> SxSeries::coefficients_tau(double tau) const {
  std::vector<double> c(static_cast<std::size_t>(n_), 0.0);
  for (int k = 0; k < n_; ++k) {
    double acc = 0.0;
    for (int m = order_; m >= 0; --m) acc = acc * tau + taylor_[m][k];
    c[k] = acc;
  }
  return c;
}

std::vector<double> SxSeries::coefficients(double t) const { return coefficients_tau(b_ref_ * t); }

namespace {

// k-th nonvanishing order counted from the top (k = 0 is the highest).
double term_from_top(const std::vector<std::vector<double>>& taylor, int order, int k, double tau) {
  for (int m = order; m > 0; --m) {
    double worst = 0.0;
    for (double v : taylor[m]) worst = std::max(worst, std::abs(v));
    if (worst == 0.0) continue;
    if (k-- == 0) return worst * std::pow(std::abs(tau), m);
  }
  return 0.0;
}

}  // namespace

double SxSeries::last_term_tau(double tau) const { return term_from_top(taylor_, order_, 0, tau); }

double SxSeries::previous_term_tau(double tau) const { return term_from_top(taylor_, order_, 1, tau); }

bool SxSeries::within_radius_tau(double tau) const { return last_term_tau(tau) < previous_term_tau(tau); }

std::vector<double> sx_series(const CouplingMatrix& c, double t, int order) {
  return SxSeries(c, order).coefficients(t);
}

}  // namespace spinchain
