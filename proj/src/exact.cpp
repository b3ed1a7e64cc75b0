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
#include "spinchain/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "spinchain/error.hpp"

namespace spinchain {

namespace {

Eigen::Index find_root(std::vector<Eigen::Index>& parent, Eigen::Index x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

bool all_zero(const Matrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    if (m.data()[k] != Complex(0.0, 0.0)) return false;
  }
  return true;
}

// sum over entries (r,c) of a(r,c) * b(c,r), grouped by coherence order of (r,c).
std::vector<Complex> order_traces(const Matrix& a, const Matrix& b, int n) {
  std::vector<Complex> acc(2 * static_cast<std::size_t>(n) + 1, Complex(0.0, 0.0));
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    const int pc = std::popcount(static_cast<std::uint64_t>(c));
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      const int order = pc - std::popcount(static_cast<std::uint64_t>(r));
      acc[order + n] += a(r, c) * b(c, r);
    }
  }
  return acc;
}

}  // namespace

Propagator::Propagator(const Operator& h) : n_spins_(h.n_spins()) {
  if (h.dim() == 0) throw UsageError("Propagator: empty Hamiltonian");
  const double defect = h.hermiticity_defect();
  if (defect > 1e-9) {
    throw UsageError("Propagator: Hamiltonian is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const Eigen::Index d = h.dim();
  const Matrix& m = h.matrix();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < c; ++r) {
      if (m(r, c) == Complex(0.0, 0.0) && m(c, r) == Complex(0.0, 0.0)) continue;
      const Eigen::Index a = find_root(parent, r);
      const Eigen::Index b = find_root(parent, c);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(d), -1);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index root = find_root(parent, k);
    if (slot[root] < 0) {
      slot[root] = static_cast<Eigen::Index>(blocks_.size());
      blocks_.emplace_back();
    }
    blocks_[slot[root]].index.push_back(k);
  }
  for (Block& blk : blocks_) {
    const Matrix sub = m(blk.index, blk.index);
    const Matrix herm = 0.5 * (sub + sub.adjoint());
    if (herm.imag().cwiseAbs().maxCoeff() == 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(herm.real());
      if (es.info() != Eigen::Success) throw NumericError("Propagator: eigensolver failed");
      blk.energies = es.eigenvalues();
      blk.vectors = es.eigenvectors().cast<Complex>();
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
      if (es.info() != Eigen::Success) throw NumericError("Propagator: eigensolver failed");
      blk.energies = es.eigenvalues();
      blk.vectors = es.eigenvectors();
    }
  }
}

Eigen::VectorXd Propagator::eigenvalues() const {
  std::vector<double> all;
  for (const Block& b : blocks_) all.insert(all.end(), b.energies.begin(), b.energies.end());
  std::sort(all.begin(), all.end());
  return Eigen::Map<Eigen::VectorXd>(all.data(), static_cast<Eigen::Index>(all.size()));
}

Propagator::Frame Propagator::to_frame(const Operator& a) const {
  if (a.n_spins() != n_spins_) throw UsageError("Propagator: dimension mismatch");
  const std::size_t nb = blocks_.size();
  Frame f;
  f.blocks.resize(nb * nb);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      Matrix sub = a.matrix()(blocks_[i].index, blocks_[j].index);
      if (all_zero(sub)) continue;
      f.blocks[i * nb + j] = blocks_[i].vectors.adjoint() * sub * blocks_[j].vectors;
    }
  }
  return f;
}

Operator Propagator::from_frame(const Frame& f, double t) const {
  const std::size_t nb = blocks_.size();
  if (f.blocks.size() != nb * nb) throw UsageError("Propagator: frame does not match");
  const Eigen::Index d = Eigen::Index{1} << n_spins_;
  Matrix out = Matrix::Zero(d, d);
  std::vector<Eigen::VectorXcd> phase(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    phase[i] = (Complex(0.0, -t) * blocks_[i].energies.cast<Complex>()).array().exp().matrix();
  }
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const Matrix& blk = f.blocks[i * nb + j];
      if (blk.size() == 0) continue;
      const Matrix x = phase[i].asDiagonal() * blk * phase[j].conjugate().asDiagonal();
      out(blocks_[i].index, blocks_[j].index) = blocks_[i].vectors * x * blocks_[j].vectors.adjoint();
    }
  }
  return Operator(n_spins_, std::move(out));
}

SignalModel::SignalModel(const Propagator& p, const Propagator::Frame& state,
                         const Propagator::Frame& observable) {
  const std::size_t nb = p.blocks_.size();
  if (state.blocks.size() != nb * nb || observable.blocks.size() != nb * nb) {
    throw UsageError("SignalModel: frame does not match propagator");
  }
  double wmax = 0.0;
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const Matrix& s = state.blocks[i * nb + j];
      const Matrix& o = observable.blocks[i * nb + j];
      if (s.size() == 0 || o.size() == 0) continue;
      const auto& ei = p.blocks_[i].energies;
      const auto& ej = p.blocks_[j].energies;
      for (Eigen::Index c = 0; c < s.cols(); ++c) {
        for (Eigen::Index r = 0; r < s.rows(); ++r) {
          const Complex w = std::conj(o(r, c)) * s(r, c);
          if (w == Complex(0.0, 0.0)) continue;
          omega_.push_back(ei(r) - ej(c));
          weight_.push_back(w);
          wmax = std::max(wmax, std::abs(w));
        }
      }
    }
  }
  const double cut = 1e-16 * wmax;
  std::size_t keep = 0;
  for (std::size_t k = 0; k < weight_.size(); ++k) {
    if (std::abs(weight_[k]) <= cut) continue;
    omega_[keep] = omega_[k];
    weight_[keep] = weight_[k];
    ++keep;
  }
  omega_.resize(keep);
  weight_.resize(keep);
}

SignalModel::SignalModel(const Propagator& p, const Operator& state, const Operator& observable)
    : SignalModel(p, p.to_frame(state), p.to_frame(observable)) {}

Complex SignalModel::value(double t) const {
  Complex acc(0.0, 0.0);
  for (std::size_t k = 0; k < omega_.size(); ++k) {
    const double a = omega_[k] * t;
    acc += weight_[k] * Complex(std::cos(a), -std::sin(a));
  }
  return acc;
}

Operator evolve(const Operator& state, const Operator& h, double t) {
  if (state.n_spins() != h.n_spins()) throw UsageError("evolve: dimension mismatch");
  if (t == 0.0) {
    const double defect = h.hermiticity_defect();
    if (defect > 1e-9) throw UsageError("evolve: Hamiltonian is not Hermitian");
    return state;
  }
  return Propagator(h).evolve(state, t);
}

MqcEvaluator::MqcEvaluator(const Operator& h_dq, const Operator& rho0, const Operator& observable)
    : n_spins_(h_dq.n_spins()),
      propagator_(h_dq),
      rho_(propagator_.to_frame(rho0)),
      obs_(propagator_.to_frame(observable)) {}

MqcSlice MqcEvaluator::direct(double t) const {
  const Operator rho = propagator_.from_frame(rho_, t);
  const Operator obs = propagator_.from_frame(obs_, t);
  const std::vector<Complex> acc = order_traces(rho.matrix(), obs.matrix(), n_spins_);
  MqcSlice out;
  for (int order = -n_spins_; order <= n_spins_; ++order) out[order] = acc[order + n_spins_].real();
  return out;
}

double MqcEvaluator::phase_signal(double t, double phi) const {
  const Operator rho = z_conjugate(propagator_.from_frame(rho_, t), phi);
  const Operator obs = propagator_.from_frame(obs_, t);
  return (rho.matrix().cwiseProduct(obs.matrix().transpose())).sum().real();
}

MqcSlice MqcEvaluator::protocol(double t, int n_phases, int max_order) const {
  if (max_order < 0) throw UsageError("mqc_protocol: max_order must be >= 0");
  if (n_phases < 2 || n_phases < 2 * max_order + 1) {
    throw UsageError("mqc_protocol: " + std::to_string(n_phases) + " phases cannot resolve order " +
                     std::to_string(max_order) + " (need M >= " + std::to_string(2 * max_order + 1) +
                     ")");
  }
  const Operator rho = propagator_.from_frame(rho_, t);
  const Operator obs = propagator_.from_frame(obs_, t);
  const Matrix obs_t = obs.matrix().transpose();
  std::vector<double> signal(static_cast<std::size_t>(n_phases));
  for (int m = 0; m < n_phases; ++m) {
    const double phi = 2.0 * std::numbers::pi * m / n_phases;
    signal[m] = (z_conjugate(rho, phi).matrix().cwiseProduct(obs_t)).sum().real();
  }
  MqcSlice out;
  for (int order = -(n_phases - 1) / 2; order <= n_phases / 2; ++order) {
    Complex acc(0.0, 0.0);
    for (int m = 0; m < n_phases; ++m) {
      acc += signal[m] * std::polar(1.0, 2.0 * std::numbers::pi * order * m / n_phases);
    }
    out[order] = acc.real() / n_phases;
  }
  return out;
}

MqcSlice mqc_direct(const Operator& rho0, const Operator& h_dq, double t, const Operator& observable) {
  return MqcEvaluator(h_dq, rho0, observable).direct(t);
}

MqcSlice mqc_protocol(const Operator& rho0, const Operator& h_dq, double t, int n_phases,
                      const Operator& observable, int max_order) {
  return MqcEvaluator(h_dq, rho0, observable).protocol(t, n_phases, max_order);
}

void MqcCurve::validate() const {
  if (times.size() != intensities.size()) throw UsageError("MqcCurve: times/intensities size mismatch");
  if (!weights.empty() && weights.size() != times.size()) {
    throw UsageError("MqcCurve: weights size mismatch");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw UsageError("MqcCurve: times must be strictly ascending");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw UsageError("MqcCurve: weights must be finite and >= 0");
  }
}

double MqcCurve::value(std::size_t i, int order) const {
  const MqcSlice& s = intensities.at(i);
  auto it = s.find(order);
  return it == s.end() ? 0.0 : it->second;
}

MqcCurve mqc_curve(const Operator& rho0, const Operator& h_dq, const std::vector<double>& times,
                   const Operator& observable) {
  MqcEvaluator ev(h_dq, rho0, observable);
  MqcCurve out;
  out.times = times;
  for (double t : times) out.intensities.push_back(ev.direct(t));
  out.validate();
  return out;
}

MqcCurve normalize_curve(const MqcCurve& raw) {
  raw.validate();
  MqcCurve out = raw;
  for (std::size_t i = 0; i < out.intensities.size(); ++i) {
    double total = 0.0;
    for (const auto& [order, v] : out.intensities[i]) total += v;
    if (!(total > 0.0)) {
      throw NumericError("normalize_curve: nonpositive total intensity at time index " + std::to_string(i));
    }
    for (auto& [order, v] : out.intensities[i]) v /= total;
  }
  out.normalized = true;
  return out;
}

std::vector<double> simulate_fid(const Operator& rho0, const Operator& h_dip,
                                 const std::vector<double>& times, const FidOptions& options) {
  if (times.empty()) throw UsageError("simulate_fid: empty time grid");
  const int n = rho0.n_spins();
  const Operator state =
      options.readout_pulse ? transverse_rotation(rho0, 0.5 * std::numbers::pi, 0.5 * std::numbers::pi) : rho0;
  const Operator obs = options.observable ? *options.observable : collective(Axis::X, n);
  const Propagator p(h_dip);
  const SignalModel model(p, state, obs);
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(model.value(t).real());
  return out;
}

std::vector<double> sx_coefficients(const Operator& state) {
  const int n = state.n_spins();
  const double scale = std::ldexp(1.0, -n);
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  for (int site = 1; site <= n; ++site) {
    const auto m = static_cast<Eigen::Index>(site_mask(site, n));
    Complex acc(0.0, 0.0);
    for (Eigen::Index r = 0; r < state.dim(); ++r) acc += state.matrix()(r ^ m, r);
    c[site - 1] = acc.real() * scale;
  }
  return c;
}

std::vector<double> sz_coefficients(const Operator& state) {
  const int n = state.n_spins();
  const double scale = std::ldexp(1.0, -n);
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  for (int site = 1; site <= n; ++site) {
    const auto m = static_cast<std::uint64_t>(site_mask(site, n));
    double acc = 0.0;
    for (Eigen::Index r = 0; r < state.dim(); ++r) {
      const double z = (static_cast<std::uint64_t>(r) & m) ? -1.0 : 1.0;
      acc += z * state.matrix()(r, r).real();
    }
    c[site - 1] = acc * scale;
  }
  return c;
}

}  // namespace spinchain
