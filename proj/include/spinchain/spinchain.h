/* Copyright 2026 The spinchain Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef SPINCHAIN_H_
#define SPINCHAIN_H_

#if defined(SPINCHAIN_BUILDING_LIBRARY)
#define SC_API __attribute__((visibility("default")))
#else
#define SC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_USAGE = 1,
  SC_ERR_VERIFY = 2,
  SC_ERR_CAPACITY = 3,
  SC_ERR_NUMERIC = 4,
  SC_ERR_INTERNAL = 5
} sc_status;

typedef enum sc_model { SC_MODEL_THERMAL = 0, SC_MODEL_ENDS = 1 } sc_model;

typedef struct sc_config sc_config;
typedef struct sc_operator sc_operator;

/* Message of the last failure on the calling thread; empty after success. */
SC_API const char* sc_last_error(void);
SC_API const char* sc_version(void);
/* Current dense cap (SPINCHAIN_DENSE_CAP or 14); negative on an invalid override. */
SC_API int sc_dense_cap(void);

/* Strings returned through char** are owned by the caller. */
SC_API void sc_string_free(char* s);

SC_API sc_status sc_config_new(sc_config** out);
/* Replaces the configuration with the parsed text. */
SC_API sc_status sc_config_parse(sc_config* cfg, const char* text);
SC_API sc_status sc_config_load(sc_config* cfg, const char* path);
SC_API sc_status sc_config_set(sc_config* cfg, const char* key, const char* value);
SC_API sc_status sc_config_canonical(const sc_config* cfg, char** out);
SC_API void sc_config_free(sc_config* cfg);

/* Commands. The report is set on success and, for verify, on verification failure. */
SC_API sc_status sc_cmd_mqc(const sc_config* cfg, char** report);
SC_API sc_status sc_cmd_prep(const sc_config* cfg, char** report);
SC_API sc_status sc_cmd_fid(const sc_config* cfg, char** report);
SC_API sc_status sc_cmd_synth(const sc_config* cfg, char** report);
SC_API sc_status sc_cmd_verify(int inject_gamma_flip, char** report);

typedef struct sc_fit_options {
  sc_model model;
  int n_min;
  int n_max;
  double b_min; /* rad/s */
  double b_max;
} sc_fit_options;

SC_API void sc_fit_options_default(sc_fit_options* opt);
/* landscape_path may be NULL. */
SC_API sc_status sc_cmd_fit(const char* data_path, const sc_fit_options* opt, const char* landscape_path,
                            char** report);

SC_API sc_status sc_mqc_analytic(sc_model model, int n_spins, double b, double t, double* j0, double* j2);

/* Operators. axis is one of 'x', 'y', 'z', '+', '-'. */
SC_API sc_status sc_op_pauli_site(char axis, int site, int n_spins, sc_operator** out);
SC_API sc_status sc_op_collective(char axis, int n_spins, sc_operator** out);
SC_API sc_status sc_op_dq_hamiltonian_nn(int n_spins, double b, sc_operator** out);
SC_API sc_status sc_op_dipolar_hamiltonian_nn(int n_spins, double b, sc_operator** out);
SC_API sc_status sc_op_add(const sc_operator* a, const sc_operator* b, sc_operator** out);
SC_API int sc_op_n_spins(const sc_operator* op);
SC_API sc_status sc_op_hs_inner(const sc_operator* a, const sc_operator* b, double* re, double* im);
SC_API sc_status sc_op_correlation(const sc_operator* a, const sc_operator* b, double* out);
SC_API sc_status sc_op_evolve(const sc_operator* state, const sc_operator* h, double t, sc_operator** out);
/* Unnormalized J_order(t) by direct trace. */
SC_API sc_status sc_mqc_direct(const sc_operator* rho0, const sc_operator* h_dq, double t,
                               const sc_operator* observable, int order, double* value);
SC_API void sc_op_free(sc_operator* op);

#ifdef __cplusplus
}
#endif

#endif /* SPINCHAIN_H_ */
