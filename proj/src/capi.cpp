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
#include "spinchain/spinchain.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "spinchain/chain.hpp"
#include "spinchain/commands.hpp"
#include "spinchain/config.hpp"
#include "spinchain/error.hpp"
#include "spinchain/exact.hpp"
#include "spinchain/freefermion.hpp"

struct sc_config {
  spinchain::RunConfig cfg;
};

struct sc_operator {
  spinchain::Operator op;
};

namespace {

thread_local std::string g_last_error;

template <class F>
sc_status guard(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const spinchain::CapacityError& e) {
    g_last_error = e.what();
    return SC_ERR_CAPACITY;
  } catch (const spinchain::UsageError& e) {
    g_last_error = e.what();
    return SC_ERR_USAGE;
  } catch (const spinchain::NumericError& e) {
    g_last_error = e.what();
    return SC_ERR_NUMERIC;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SC_ERR_CAPACITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SC_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class T>
void require(const T* p, const char* what) {
  if (p == nullptr) throw spinchain::UsageError(std::string(what) + " is NULL");
}

spinchain::Axis axis_of(char c) { return spinchain::parse_axis(std::string(1, c)); }

spinchain::InitialState model_of(sc_model m) {
  if (m == SC_MODEL_THERMAL) return spinchain::InitialState::Thermal;
  if (m == SC_MODEL_ENDS) return spinchain::InitialState::Ends;
  throw spinchain::UsageError("unknown model");
}

sc_status wrap_op(spinchain::Operator op, sc_operator** out) {
  *out = new sc_operator{std::move(op)};
  return SC_OK;
}

template <class F>
sc_status run_command(const sc_config* cfg, char** report, F&& f) {
  return guard([&] {
    require(cfg, "config");
    require(report, "report");
    *report = dup(f(cfg->cfg));
    return SC_OK;
  });
}

}  // namespace

extern "C" {

const char* sc_last_error(void) { return g_last_error.c_str(); }

const char* sc_version(void) { return "1.0.0"; }

int sc_dense_cap(void) {
  try {
    return spinchain::dense_cap();
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return -1;
  }
}

void sc_string_free(char* s) { std::free(s); }

sc_status sc_config_new(sc_config** out) {
  return guard([&] {
    require(out, "out");
    *out = new sc_config{};
    return SC_OK;
  });
}

sc_status sc_config_parse(sc_config* cfg, const char* text) {
  return guard([&] {
    require(cfg, "config");
    require(text, "text");
    cfg->cfg = spinchain::parse_config_text(text);
    return SC_OK;
  });
}

sc_status sc_config_load(sc_config* cfg, const char* path) {
  return guard([&] {
    require(cfg, "config");
    require(path, "path");
    cfg->cfg = spinchain::load_config(path);
    return SC_OK;
  });
}

sc_status sc_config_set(sc_config* cfg, const char* key, const char* value) {
  return guard([&] {
    require(cfg, "config");
    require(key, "key");
    require(value, "value");
    spinchain::RunConfig next = cfg->cfg;
    spinchain::apply_setting(next, key, value);
    cfg->cfg = next;
    return SC_OK;
  });
}

sc_status sc_config_canonical(const sc_config* cfg, char** out) {
  return guard([&] {
    require(cfg, "config");
    require(out, "out");
    cfg->cfg.validate();
    *out = dup(spinchain::serialize_config(cfg->cfg));
    return SC_OK;
  });
}

void sc_config_free(sc_config* cfg) { delete cfg; }

sc_status sc_cmd_mqc(const sc_config* cfg, char** report) {
  return run_command(cfg, report, [](const spinchain::RunConfig& c) { return spinchain::run_mqc(c); });
}

sc_status sc_cmd_prep(const sc_config* cfg, char** report) {
  return run_command(cfg, report, [](const spinchain::RunConfig& c) { return spinchain::run_prep(c); });
}

sc_status sc_cmd_fid(const sc_config* cfg, char** report) {
  return run_command(cfg, report, [](const spinchain::RunConfig& c) { return spinchain::run_fid(c); });
}

sc_status sc_cmd_synth(const sc_config* cfg, char** report) {
  return run_command(cfg, report, [](const spinchain::RunConfig& c) { return spinchain::run_synth(c); });
}

sc_status sc_cmd_verify(int inject_gamma_flip, char** report) {
  return guard([&] {
    require(report, "report");
    const spinchain::VerifyReport r = spinchain::run_verify(inject_gamma_flip != 0);
    *report = dup(r.table);
    if (!r.passed) {
      g_last_error = "verification failed: " + r.failed_check;
      return SC_ERR_VERIFY;
    }
    return SC_OK;
  });
}

void sc_fit_options_default(sc_fit_options* opt) {
  if (opt == nullptr) return;
  const spinchain::FitOptions d;
  opt->model = SC_MODEL_THERMAL;
  opt->n_min = d.n_min;
  opt->n_max = d.n_max;
  opt->b_min = d.b_min;
  opt->b_max = d.b_max;
}

sc_status sc_cmd_fit(const char* data_path, const sc_fit_options* opt, const char* landscape_path,
                     char** report) {
  return guard([&] {
    require(data_path, "data_path");
    require(opt, "options");
    require(report, "report");
    spinchain::FitRequest req;
    req.data_path = data_path;
    req.options.model = model_of(opt->model);
    req.options.n_min = opt->n_min;
    req.options.n_max = opt->n_max;
    req.options.b_min = opt->b_min;
    req.options.b_max = opt->b_max;
    if (landscape_path != nullptr) req.landscape_path = landscape_path;
    *report = dup(spinchain::run_fit(req));
    return SC_OK;
  });
}

sc_status sc_mqc_analytic(sc_model model, int n_spins, double b, double t, double* j0, double* j2) {
  return guard([&] {
    require(j0, "j0");
    require(j2, "j2");
    const spinchain::ZeroDouble z = spinchain::mqc_analytic(model_of(model), n_spins, b, t);
    *j0 = z.j0;
    *j2 = z.j2;
    return SC_OK;
  });
}

sc_status sc_op_pauli_site(char axis, int site, int n_spins, sc_operator** out) {
  return guard([&] {
    require(out, "out");
    return wrap_op(spinchain::pauli_site(axis_of(axis), site, n_spins), out);
  });
}

sc_status sc_op_collective(char axis, int n_spins, sc_operator** out) {
  return guard([&] {
    require(out, "out");
    return wrap_op(spinchain::collective(axis_of(axis), n_spins), out);
  });
}

sc_status sc_op_dq_hamiltonian_nn(int n_spins, double b, sc_operator** out) {
  return guard([&] {
    require(out, "out");
    return wrap_op(spinchain::dq_hamiltonian(spinchain::nn_uniform_couplings(n_spins, b)), out);
  });
}

sc_status sc_op_dipolar_hamiltonian_nn(int n_spins, double b, sc_operator** out) {
  return guard([&] {
    require(out, "out");
    return wrap_op(spinchain::dipolar_hamiltonian(spinchain::nn_uniform_couplings(n_spins, b)), out);
  });
}

sc_status sc_op_add(const sc_operator* a, const sc_operator* b, sc_operator** out) {
  return guard([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    return wrap_op(a->op + b->op, out);
  });
}

int sc_op_n_spins(const sc_operator* op) { return op == nullptr ? -1 : op->op.n_spins(); }

sc_status sc_op_hs_inner(const sc_operator* a, const sc_operator* b, double* re, double* im) {
  return guard([&] {
    require(a, "a");
    require(b, "b");
    require(re, "re");
    require(im, "im");
    const spinchain::Complex v = spinchain::hs_inner(a->op, b->op);
    *re = v.real();
    *im = v.imag();
    return SC_OK;
  });
}

sc_status sc_op_correlation(const sc_operator* a, const sc_operator* b, double* out) {
  return guard([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = spinchain::correlation(a->op, b->op);
    return SC_OK;
  });
}

sc_status sc_op_evolve(const sc_operator* state, const sc_operator* h, double t, sc_operator** out) {
  return guard([&] {
    require(state, "state");
    require(h, "h");
    require(out, "out");
    return wrap_op(spinchain::evolve(state->op, h->op, t), out);
  });
}

sc_status sc_mqc_direct(const sc_operator* rho0, const sc_operator* h_dq, double t,
                        const sc_operator* observable, int order, double* value) {
  return guard([&] {
    require(rho0, "rho0");
    require(h_dq, "h_dq");
    require(observable, "observable");
    require(value, "value");
    const spinchain::MqcSlice s = spinchain::mqc_direct(rho0->op, h_dq->op, t, observable->op);
    auto it = s.find(order);
    if (it == s.end()) throw spinchain::UsageError("coherence order outside [-N, N]");
    *value = it->second;
    return SC_OK;
  });
}

void sc_op_free(sc_operator* op) { delete op; }

}  // extern "C"
