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
#include "spinchain/prep.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

#include "spinchain/error.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/minimize.hpp"
#include "spinchain/pauli_series.hpp"

namespace spinchain {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

template <class F>
T1Result first_local_minimum(F&& objective, const T1Options& o, const char* what) {
  if (!(o.tau_step > 0.0) || !(o.tau_max > o.tau_step)) {
    throw UsageError(std::string(what) + ": invalid scan window");
  }
  double prev_tau = 0.0, prev_f = objective(0.0);
  double cur_tau = o.tau_step, cur_f = objective(cur_tau);
  for (double next_tau = 2.0 * o.tau_step; next_tau <= o.tau_max + 1e-12; next_tau += o.tau_step) {
    const double next_f = objective(next_tau);
    if (cur_f < prev_f && cur_f <= next_f) {
      const ScalarMinimum m = golden_section(objective, prev_tau, next_tau, o.tolerance);
      T1Result r{};
      r.tau1 = m.x;
      r.objective = m.f;
      return r;
    }
    prev_tau = cur_tau;
    prev_f = cur_f;
    cur_tau = next_tau;
    cur_f = next_f;
  }
  throw NumericError(std::string(what) + ": no local minimum of the interior polarization in (0, " +
                     std::to_string(o.tau_max) + "]");
}

void require_t1_chain(const CouplingMatrix& c) {
  if (c.n_spins() < 5) {
    throw UsageError("find_t1: needs N >= 5, got " + std::to_string(c.n_spins()));
  }
}

}  // namespace

PulsePhase parse_pulse_phase(std::string_view text) {
  const std::string t = trim(text);
  if (t == "x" || t == "+x") return {0.0, "x"};
  if (t == "y" || t == "+y") return {0.5 * kPi, "y"};
  if (t == "-x") return {kPi, "-x"};
  if (t == "-y") return {1.5 * kPi, "-y"};
  double deg = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), deg);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(deg)) {
    throw UsageError("invalid pulse phase '" + t + "' (expected x, y, -x, -y or degrees)");
  }
  return {deg * kPi / 180.0, t};
}

std::vector<PulsePhase> parse_phase_list(std::string_view text) {
  std::vector<PulsePhase> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_pulse_phase(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw UsageError("empty phase cycle");
  return out;
}

std::vector<PulsePhase> resolve_phase_cycle(std::string_view text, int n_spins) {
  const std::string s = trim(text);
  if (s == "zq") return zero_quantum_cycle(n_spins);
  if (s == "xy") return two_step_cycle();
  return parse_phase_list(s);
}

Operator hard_pulse(const Operator& state, const PulsePhase& axis, double angle) {
  return transverse_rotation(state, axis.radians, angle);
}

Operator hard_pulse(const Operator& state, std::string_view axis, double angle) {
  const std::string a = trim(axis);
  if (a != "x" && a != "y" && a != "-x" && a != "-y") {
    throw UsageError("hard_pulse: axis must be x, y, -x or -y, got '" + a + "'");
  }
  return hard_pulse(state, parse_pulse_phase(a), angle);
}

std::vector<PulsePhase> two_step_cycle() { return {{0.5 * kPi, "y"}, {0.0, "x"}}; }

std::vector<PulsePhase> zero_quantum_cycle(int n_spins) {
  if (n_spins < 1) throw UsageError("zero_quantum_cycle: n_spins must be >= 1");
  const int steps = n_spins / 2 + 1;
  std::vector<PulsePhase> out;
  for (int m = 0; m < steps; ++m) {
    const double phi = 0.5 * kPi - kPi * m / steps;
    char label[32];
    std::snprintf(label, sizeof label, "%.6g", phi * 180.0 / kPi);
    out.push_back({phi, label});
  }
  out[0].label = "y";
  if (steps == 2) out[1].label = "x";
  return out;
}

double interior_objective(std::span<const double> c) {
  double acc = 0.0;
  for (std::size_t k = 1; k + 1 < c.size(); ++k) acc += c[k] * c[k];
  return acc;
}

T1Result find_t1(const CouplingMatrix& c, const T1Options& options) {
  require_t1_chain(c);
  const SxSeries series(c, options.order);
  T1Result r = first_local_minimum(
      [&](double tau) { return interior_objective(series.coefficients_tau(tau)); }, options, "find_t1");
  r.b_ref = series.reference();
  r.t1 = r.tau1 / r.b_ref;
  r.within_radius = series.within_radius_tau(r.tau1);
  return r;
}

T1Result find_t1_exact(const CouplingMatrix& c, const T1Options& options) {
  require_t1_chain(c);
  const int n = c.n_spins();
  require_dense(n);
  const double b_ref = c.reference();
  if (!(b_ref > 0.0)) throw UsageError("find_t1_exact: couplings are all zero");
  const Propagator p(dipolar_hamiltonian(c));
  const Propagator::Frame state = p.to_frame(collective(Axis::X, n));
  std::vector<SignalModel> sites;
  for (int k = 2; k < n; ++k) sites.emplace_back(p, state, p.to_frame(pauli_site(Axis::X, k, n)));
  const double scale = std::ldexp(1.0, -n);
  T1Result r = first_local_minimum(
      [&](double tau) {
        double acc = 0.0;
        for (const SignalModel& m : sites) {
          const double ck = m.value(tau / b_ref).real() * scale;
          acc += ck * ck;
        }
        return acc;
      },
      options, "find_t1_exact");
  r.b_ref = b_ref;
  r.t1 = r.tau1 / b_ref;
  return r;
}

PrepResult describe_prepared(Operator state, double t1) {
  const int n = state.n_spins();
  const Matrix& m = state.matrix();
  const double norm2 = m.squaredNorm();
  if (!(norm2 > 0.0)) throw UsageError("describe_prepared: zero state");
  PrepResult r;
  r.t1 = t1;
  r.per_site_z = sz_coefficients(state);
  const std::uint64_t first = site_mask(1, n);
  const std::uint64_t last = site_mask(n, n);
  double overlap = 0.0, zq2 = 0.0, comm2 = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const auto uc = static_cast<std::uint64_t>(c);
    const int pc = std::popcount(uc);
    overlap += (((uc & first) ? -1.0 : 1.0) + ((uc & last) ? -1.0 : 1.0)) * m(c, c).real();
    for (Eigen::Index row = 0; row < m.rows(); ++row) {
      const int order = pc - std::popcount(static_cast<std::uint64_t>(row));
      const double a2 = std::norm(m(row, c));
      if (order == 0 && row != c) zq2 += a2;
      comm2 += 4.0 * order * order * a2;
    }
  }
  r.fidelity = overlap / std::sqrt(norm2 * 2.0 * std::ldexp(1.0, n));
  r.zq_residual_norm = std::sqrt(zq2 / norm2);
  r.commutator_residual = std::sqrt(comm2 / norm2);
  r.state = std::move(state);
  return r;
}

PrepResult prep_protocol(const CouplingMatrix& c, double t1, const std::vector<PulsePhase>& cycle,
                         const PrepOptions& options) {
  if (cycle.empty()) throw UsageError("prep_protocol: empty phase cycle");
  if (!(t1 >= 0.0) || !std::isfinite(t1)) throw UsageError("prep_protocol: t1 must be finite and >= 0");
  const int n = c.n_spins();
  require_dense(n);
  std::optional<Propagator> p;
  if (t1 > 0.0) p.emplace(dipolar_hamiltonian(c));
  const Operator sz = collective(Axis::Z, n);
  auto scan = [&](const PulsePhase& a) {
    Operator s = hard_pulse(sz, a, 0.5 * kPi);
    if (p) s = p->evolve(s, t1);
    return hard_pulse(s, PulsePhase{a.radians + kPi, ""}, 0.5 * kPi);
  };
  const Operator ref = scan(cycle.front());
  Matrix acc = ref.matrix();
  for (std::size_t k = 1; k < cycle.size(); ++k) {
    if (options.explicit_scans) {
      acc += scan(cycle[k]).matrix();
    } else {
      acc += z_conjugate(ref, cycle[k].radians - cycle.front().radians).matrix();
    }
  }
  acc /= static_cast<double>(cycle.size());
  return describe_prepared(Operator(n, std::move(acc)), t1);
}

PrepResult prep_protocol(const CouplingMatrix& c, double t1) {
  return prep_protocol(c, t1, zero_quantum_cycle(c.n_spins()));
}

int ErrorBreakdown::largest_interior_site() const {
  int best = 0;
  double best_v = -1.0;
  for (std::size_t k = 1; k + 1 < site_z.size(); ++k) {
    if (std::abs(site_z[k]) > best_v) {
      best_v = std::abs(site_z[k]);
      best = static_cast<int>(k) + 1;
    }
  }
  return best;
}

std::vector<std::pair<std::string, double>> ErrorBreakdown::named() const {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t k = 0; k < site_z.size(); ++k) out.emplace_back("z" + std::to_string(k + 1), site_z[k]);
  for (std::size_t i = 0; i < three_spin.size(); ++i) {
    out.emplace_back("zzq" + std::to_string(i + 2), three_spin[i]);
  }
  out.emplace_back("remainder", remainder);
  return out;
}

ErrorBreakdown error_breakdown(const Operator& state) {
  const int n = state.n_spins();
  Matrix rest = state.matrix();
  const Eigen::Index d = rest.rows();
  ErrorBreakdown e;
  e.norm = std::sqrt(rest.squaredNorm());
  const double site_norm = std::sqrt(std::ldexp(1.0, n));
  for (int k = 1; k <= n; ++k) {
    const auto mk = site_mask(k, n);
    double acc = 0.0;
    for (Eigen::Index r = 0; r < d; ++r) {
      acc += ((static_cast<std::uint64_t>(r) & mk) ? -1.0 : 1.0) * state.matrix()(r, r).real();
    }
    const double p = acc / site_norm;
    e.site_z.push_back(p);
    for (Eigen::Index r = 0; r < d; ++r) {
      rest(r, r) -= p * ((static_cast<std::uint64_t>(r) & mk) ? -1.0 : 1.0) / site_norm;
    }
  }
  const double zq_norm = std::sqrt(std::ldexp(1.0, n - 1));
  for (int i = 2; i < n; ++i) {
    const auto ml = site_mask(i - 1, n), mc = site_mask(i, n), mr = site_mask(i + 1, n);
    Complex acc(0.0, 0.0);
    for (Eigen::Index col = 0; col < d; ++col) {
      const auto uc = static_cast<std::uint64_t>(col);
      if (((uc & ml) != 0) == ((uc & mr) != 0)) continue;
      const double z = (uc & mc) ? -1.0 : 1.0;
      acc += z * state.matrix()(static_cast<Eigen::Index>(uc ^ ml ^ mr), col);
    }
    const double p = acc.real() / zq_norm;
    e.three_spin.push_back(p);
    for (Eigen::Index col = 0; col < d; ++col) {
      const auto uc = static_cast<std::uint64_t>(col);
      if (((uc & ml) != 0) == ((uc & mr) != 0)) continue;
      const double z = (uc & mc) ? -1.0 : 1.0;
      rest(static_cast<Eigen::Index>(uc ^ ml ^ mr), col) -= p * z / zq_norm;
    }
  }
  e.remainder = std::sqrt(rest.squaredNorm());
  return e;
}

ErrorBreakdown error_breakdown(const PrepResult& r) { return error_breakdown(r.state); }

}  // namespace spinchain
