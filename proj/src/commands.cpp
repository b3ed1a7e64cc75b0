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
#include "spinchain/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "spinchain/csv.hpp"
#include "spinchain/error.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/freefermion.hpp"
#include "spinchain/prep.hpp"
#include "spinchain/spectrum.hpp"

namespace spinchain {

namespace {

std::string kv(const std::string& key, double v) { return key + "=" + format_number(v) + "\n"; }
std::string kv(const std::string& key, const std::string& v) { return key + "=" + v + "\n"; }

Operator initial_state(InitialState s, int n) {
  if (s == InitialState::Thermal) return collective(Axis::Z, n);
  return pauli_site(Axis::Z, 1, n) + pauli_site(Axis::Z, n, n);
}

// Writes the table (summary lines become leading comments) or appends it to the report.
std::string emit(const RunConfig& cfg, CsvTable table, const std::string& summary) {
  if (cfg.output.empty()) {
    std::istringstream lines(summary);
    std::string line;
    std::vector<std::string> comments;
    while (std::getline(lines, line)) comments.push_back(line);
    table.leading_comments.insert(table.leading_comments.begin(), comments.begin(), comments.end());
    return to_csv(table);
  }
  write_file_atomic(cfg.output, to_csv(table));
  return summary + kv("wrote", cfg.output);
}

std::string cycle_labels(const std::vector<PulsePhase>& cycle) {
  std::string s;
  for (std::size_t i = 0; i < cycle.size(); ++i) s += (i ? "," : "") + cycle[i].label;
  return s;
}

}  // namespace

CouplingMatrix config_couplings(const RunConfig& cfg, double b) {
  if (cfg.couplings == CouplingModel::NearestNeighbor) return nn_uniform_couplings(cfg.n_spins, b);
  return dipolar_couplings(fap_chain_geometry(cfg.n_spins, false), b);
}

std::string run_mqc(const RunConfig& cfg) {
  cfg.validate();
  const double b = cfg.b();
  const std::vector<double> times = cfg.times();
  const int n = cfg.n_spins;
  CsvTable table;
  table.leading_comments.push_back("model=" + std::string(initial_state_name(cfg.model)) +
                                   " n_spins=" + std::to_string(n) + " b_rad_s=" + format_number(b) +
                                   " engine=" + std::string(engine_name(cfg.engine)));
  table.header = {"t_us", "J0", "J2"};
  std::string summary;
  if (cfg.engine == Engine::Analytic) {
    table.leading_comments.push_back("J2 is the single double-quantum intensity, J0 + 2 J2 = 1");
    for (double t : times) {
      const ZeroDouble z = mqc_analytic(cfg.model, n, b, t);
      table.rows.push_back({t * 1e6, z.j0, z.j2});
    }
  } else {
    require_dense(n);
    table.leading_comments.push_back("J2 = (Jp2 + Jm2) / 2; Jp2, Jm2, J4 from " + std::to_string(cfg.phases) +
                                     "-phase encoding, normalized to sum 1 over all orders");
    table.header.insert(table.header.end(), {"Jp2", "Jm2", "J4"});
    if (cfg.engine == Engine::Both) table.header.insert(table.header.end(), {"J0_analytic", "J2_analytic"});
    if (cfg.engine == Engine::Both && cfg.couplings != CouplingModel::NearestNeighbor) {
      table.leading_comments.push_back("analytic columns assume nearest-neighbor couplings");
    }
    const Operator rho0 = initial_state(cfg.model, n);
    const MqcEvaluator ev(dq_hamiltonian(config_couplings(cfg, b)), rho0, collective(Axis::Z, n));
    double deviation = 0.0;
    for (double t : times) {
      const MqcSlice raw = ev.protocol(t, cfg.phases, std::min(4, (cfg.phases - 1) / 2));
      double total = 0.0;
      for (const auto& [order, v] : raw) total += v;
      if (!(total > 0.0)) throw NumericError("mqc: nonpositive total intensity");
      auto get = [&](int order) {
        auto it = raw.find(order);
        return it == raw.end() ? 0.0 : it->second / total;
      };
      const double j0 = get(0), jp2 = get(2), jm2 = get(-2), j4 = get(4);
      std::vector<double> row{t * 1e6, j0, 0.5 * (jp2 + jm2), jp2, jm2, j4};
      if (cfg.engine == Engine::Both) {
        const ZeroDouble z = mqc_analytic(cfg.model, n, b, t);
        row.push_back(z.j0);
        row.push_back(z.j2);
        deviation = std::max({deviation, std::abs(j0 - z.j0), std::abs(jp2 - z.j2), std::abs(jm2 - z.j2)});
      }
      table.rows.push_back(std::move(row));
    }
    if (cfg.engine == Engine::Both) {
      table.trailing_comments.push_back("max_deviation=" + format_number(deviation));
      summary += kv("max_deviation", deviation);
    }
  }
  return emit(cfg, std::move(table), summary);
}

std::string run_prep(const RunConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_spins;
  require_dense(n);
  const double b = cfg.b_rad_s.value_or(1.0);
  if (cfg.t1_us && !cfg.b_rad_s) throw UsageError("t1_us needs b_rad_s");
  const CouplingMatrix c = config_couplings(cfg, b);
  T1Options opt;
  opt.order = cfg.order;
  std::string summary;
  summary += kv("n_spins", std::to_string(n));
  summary += kv("couplings", std::string(coupling_model_name(cfg.couplings)));
  double t1 = 0.0;
  if (cfg.t1_us) {
    t1 = *cfg.t1_us * 1e-6;
    summary += kv("tau1", t1 * c.reference());
  } else {
    const T1Result r = find_t1(c, opt);
    t1 = r.t1;
    summary += kv("tau1", r.tau1);
    if (cfg.couplings == CouplingModel::Geometric) {
      summary += kv("tau1_nn", find_t1(nn_uniform_couplings(n, b), opt).tau1);
    }
    summary += kv("series_within_radius", r.within_radius ? "true" : "false");
    summary += kv("b_for_t1_30.3us_rad_s", r.tau1 / 30.3e-6);
  }
  if (cfg.b_rad_s) {
    summary += kv("b_rad_s", b);
    summary += kv("t1_us", t1 * 1e6);
  } else {
    summary += kv("t1_us", "unavailable (b_rad_s not set; times in units of 1/b)");
  }
  const std::vector<PulsePhase> cycle = resolve_phase_cycle(cfg.phase_cycle, n);
  const PrepResult r = prep_protocol(c, t1, cycle);
  const ErrorBreakdown e = error_breakdown(r);
  summary += kv("phase_cycle", cycle_labels(cycle));
  summary += kv("fidelity", r.fidelity);
  summary += kv("zq_residual", r.zq_residual_norm);
  summary += kv("commutator_residual", r.commutator_residual);
  summary += kv("largest_interior_error_site", std::to_string(e.largest_interior_site()));
  summary += kv("remainder", e.remainder / e.norm);
  CsvTable table;
  table.header = {"site", "sz"};
  for (int k = 1; k <= n; ++k) table.rows.push_back({static_cast<double>(k), r.per_site_z[k - 1]});
  return emit(cfg, std::move(table), summary);
}

std::string run_fid(const RunConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_spins;
  require_dense(n);
  const double b = cfg.b();
  if (cfg.t_start_us != 0.0) throw UsageError("fid: t_start_us must be 0 for the spectrum");
  const CouplingMatrix c = config_couplings(cfg, b);
  const Operator h = dipolar_hamiltonian(c);
  const std::vector<double> times = cfg.times();
  double t1 = 0.0;
  if (cfg.t1_us) {
    t1 = *cfg.t1_us * 1e-6;
  } else {
    T1Options opt;
    opt.order = cfg.order;
    t1 = find_t1(c, opt).t1;
  }
  const PrepResult prepared = prep_protocol(c, t1, resolve_phase_cycle(cfg.phase_cycle, n));
  const std::vector<double> s_th = simulate_fid(collective(Axis::Z, n), h, times);
  const std::vector<double> s_pr = simulate_fid(prepared.state, h, times);
  SpectrumOptions so;
  so.zero_fill = cfg.zero_fill;
  so.apodization_rate = std::numbers::pi * cfg.line_broadening_hz;
  const double dt = times[1] - times[0];
  const Spectrum f_th = spectrum(s_th, dt, so);
  const Spectrum f_pr = spectrum(s_pr, dt, so);
  CsvTable table;
  table.leading_comments.push_back("domain 0: x = time (us); domain 1: x = frequency (Hz)");
  table.header = {"domain", "x", "thermal", "prepared"};
  for (std::size_t i = 0; i < times.size(); ++i) table.rows.push_back({0.0, times[i] * 1e6, s_th[i], s_pr[i]});
  for (std::size_t i = 0; i < f_th.frequencies.size(); ++i) {
    table.rows.push_back({1.0, f_th.frequencies[i], f_th.amplitudes[i], f_pr.amplitudes[i]});
  }
  std::string summary;
  summary += kv("t1_us", t1 * 1e6);
  const double w_th = half_max_width(f_th);
  const double w_pr = half_max_width(f_pr);
  summary += kv("fwhm_thermal_hz", w_th);
  summary += kv("fwhm_prepared_hz", w_pr);
  summary += kv("fwhm_ratio", w_th / w_pr);
  return emit(cfg, std::move(table), summary);
}

std::string run_synth(const RunConfig& cfg) {
  cfg.validate();
  const MqcCurve curve = synth_curve(cfg.model, cfg.n_spins, cfg.b(), cfg.times(), cfg.noise_sd, cfg.seed);
  CsvTable table = mqc_table(curve);
  table.leading_comments.push_back("synthetic model=" + std::string(initial_state_name(cfg.model)) +
                                   " n_spins=" + std::to_string(cfg.n_spins) + " b_rad_s=" +
                                   format_number(cfg.b()) + " noise_sd=" + format_number(cfg.noise_sd) +
                                   " seed=" + std::to_string(cfg.seed));
  return emit(cfg, std::move(table), "");
}

VerifyReport run_verify(bool inject_gamma_flip) {
  VerifyReport rep;
  rep.passed = true;
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %4s %14s %10s  %s\n", "check", "N", "max_residual", "threshold", "status");
  out << line;
  auto row = [&](const std::string& name, int n, double res, double thr) {
    const bool ok = res < thr;
    std::snprintf(line, sizeof line, "%-28s %4d %14.3e %10.1e  %s\n", name.c_str(), n, res, thr, ok ? "PASS" : "FAIL");
    out << line;
    if (!ok && rep.passed) {
      rep.passed = false;
      rep.failed_check = name + " (N=" + std::to_string(n) + ")";
    }
  };
  IdentityOptions io;
  io.flip_gamma = inject_gamma_flip;
  std::vector<std::string> traces;
  for (int n = 2; n <= 6; ++n) {
    const IdentityReport r = identity_residuals(n, io);
    for (const auto& c : r.checks) row(c.name, n, c.max_residual, c.threshold);
    std::string t = "N=" + std::to_string(n) + ":";
    for (double v : r.pair_traces) t += " " + format_number(v);
    t += " (2^(N-1)=" + format_number(std::ldexp(1.0, n - 1)) + ")";
    traces.push_back(t);
  }
  for (int n : {10, 25, 50}) {
    const IdentityCheck a = trig_orthogonality_check(n);
    row(a.name, n, a.max_residual, a.threshold);
    const IdentityCheck s = trig_sin_cos_check(n);
    row(s.name, n, s.max_residual, s.threshold);
  }
  for (int n = 2; n <= 6; ++n) {
    double dev = 0.0, selection = 0.0;
    for (InitialState st : {InitialState::Thermal, InitialState::Ends}) {
      const Operator rho0 = initial_state(st, n);
      const MqcEvaluator ev(dq_hamiltonian(nn_uniform_couplings(n, 1.0)), rho0, collective(Axis::Z, n));
      for (int k = 0; k < 10; ++k) {
        const double t = 2.0 * k / 9.0;
        const MqcSlice raw = ev.direct(t);
        double total = 0.0;
        for (const auto& [o, v] : raw) total += v;
        const ZeroDouble z = mqc_analytic(st, n, 1.0, t);
        dev = std::max({dev, std::abs(raw.at(0) / total - z.j0), std::abs(raw.at(2) / total - z.j2),
                        std::abs(raw.at(-2) / total - z.j2)});
        for (const auto& [o, v] : raw) {
          if (o != 0 && o != 2 && o != -2) selection = std::max(selection, std::abs(v / total));
        }
      }
    }
    row("oracle_equivalence", n, dev, 1e-9);
    row("selection_rule", n, selection, 1e-10);
  }
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ut(0.0, 10.0);
  for (int n : {2, 11, 51, 200}) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double t = ut(rng);
      const ZeroDouble a = mqc_thermal(n, 1.0, t);
      const ZeroDouble e = mqc_ends(n, 1.0, t);
      worst = std::max({worst, std::abs(a.j0 + 2.0 * a.j2 - 1.0), std::abs(e.j0 + 2.0 * e.j2 - 1.0)});
    }
    row("sum_rule", n, worst, 1e-14);
  }
  out << "\ntr(a^dag_k a_k), k = 1..N:\n";
  for (const auto& t : traces) out << "  " << t << "\n";
  out << (rep.passed ? "verify: all checks passed\n" : "verify: FAILED " + rep.failed_check + "\n");
  rep.table = out.str();
  return rep;
}

std::string run_fit(const FitRequest& req) {
  const MqcCurve data = read_mqc_csv_file(req.data_path);
  const FitResult r = fit(data, req.options);
  std::string summary;
  summary += kv("model", std::string(initial_state_name(r.model)));
  summary += kv("columns", r.used_j2 ? "J0,J2" : "J0 only (no J2 column in input)");
  summary += kv("points", std::to_string(r.points));
  summary += kv("n_best", std::to_string(r.n_best));
  summary += kv("b_best_rad_s", r.b_best);
  summary += kv("residual", r.residual);
  CsvTable table;
  table.header = {"N", "b_rad_s", "residual"};
  for (const auto& [n, br] : r.per_n) table.rows.push_back({static_cast<double>(n), br.first, br.second});
  if (!req.landscape_path.empty()) {
    write_file_atomic(req.landscape_path, to_csv(table));
    summary += kv("wrote", req.landscape_path);
  }
  return summary;
}

}  // namespace spinchain
