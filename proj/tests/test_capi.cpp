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
#include <cstdio>
#include <cstdlib>
#include <string>

#include <gtest/gtest.h>

#include "spinchain/spinchain.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  sc_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, VersionAndCap) {
  EXPECT_STREQ(sc_version(), "1.0.0");
  unsetenv("SPINCHAIN_DENSE_CAP");
  EXPECT_EQ(sc_dense_cap(), 14);
  setenv("SPINCHAIN_DENSE_CAP", "oops", 1);
  EXPECT_LT(sc_dense_cap(), 0);
  unsetenv("SPINCHAIN_DENSE_CAP");
}

TEST(CApi, ConfigLifecycle) {
  sc_config* cfg = nullptr;
  ASSERT_EQ(sc_config_new(&cfg), SC_OK);
  EXPECT_EQ(sc_config_set(cfg, "n_spins", "6"), SC_OK);
  EXPECT_EQ(sc_config_set(cfg, "b_rad_s", "13488"), SC_OK);
  EXPECT_EQ(sc_config_set(cfg, "nonsense", "1"), SC_ERR_USAGE);
  EXPECT_NE(std::string(sc_last_error()).find("nonsense"), std::string::npos);
  char* text = nullptr;
  ASSERT_EQ(sc_config_canonical(cfg, &text), SC_OK);
  EXPECT_STREQ(sc_last_error(), "");
  const std::string canon = take(text);
  EXPECT_NE(canon.find("n_spins=6\n"), std::string::npos);

  EXPECT_EQ(sc_config_parse(cfg, "n_spins=5\nn_spins=6\n"), SC_ERR_USAGE);
  EXPECT_NE(std::string(sc_last_error()).find(":2"), std::string::npos) << sc_last_error();
  ASSERT_EQ(sc_config_parse(cfg, canon.c_str()), SC_OK);
  ASSERT_EQ(sc_config_canonical(cfg, &text), SC_OK);
  EXPECT_EQ(take(text), canon);
  EXPECT_EQ(sc_config_load(cfg, "/nonexistent.cfg"), SC_ERR_USAGE);
  sc_config_free(cfg);
  sc_config_free(nullptr);
  EXPECT_EQ(sc_config_new(nullptr), SC_ERR_USAGE);
}

TEST(CApi, Commands) {
  sc_config* cfg = nullptr;
  ASSERT_EQ(sc_config_new(&cfg), SC_OK);
  char* report = nullptr;
  EXPECT_EQ(sc_cmd_mqc(cfg, &report), SC_ERR_USAGE);
  ASSERT_EQ(sc_config_set(cfg, "b_rad_s", "13488"), SC_OK);
  ASSERT_EQ(sc_cmd_mqc(cfg, &report), SC_OK);
  EXPECT_NE(take(report).find("t_us,J0,J2"), std::string::npos);
  ASSERT_EQ(sc_cmd_prep(cfg, &report), SC_OK);
  EXPECT_NE(take(report).find("fidelity="), std::string::npos);
  ASSERT_EQ(sc_config_set(cfg, "engine", "exact"), SC_OK);
  ASSERT_EQ(sc_config_set(cfg, "n_spins", "15"), SC_OK);
  EXPECT_EQ(sc_cmd_mqc(cfg, &report), SC_ERR_CAPACITY);
  sc_config_free(cfg);

  ASSERT_EQ(sc_cmd_verify(0, &report), SC_OK);
  EXPECT_NE(take(report).find("oracle_equivalence"), std::string::npos);
  ASSERT_EQ(sc_cmd_verify(1, &report), SC_ERR_VERIFY);
  EXPECT_NE(take(report).find("trace_pairing"), std::string::npos);
}

TEST(CApi, SynthAndFit) {
  sc_config* cfg = nullptr;
  ASSERT_EQ(sc_config_new(&cfg), SC_OK);
  const std::string path = testing::TempDir() + "capi_synth.csv";
  for (auto [k, v] : {std::pair{"n_spins", "11"}, {"b_rad_s", "13488"}, {"t_start_us", "37.6"},
                      {"t_count", "40"}}) {
    ASSERT_EQ(sc_config_set(cfg, k, v), SC_OK);
  }
  ASSERT_EQ(sc_config_set(cfg, "output", path.c_str()), SC_OK);
  char* report = nullptr;
  ASSERT_EQ(sc_cmd_synth(cfg, &report), SC_OK) << sc_last_error();
  sc_string_free(report);
  sc_config_free(cfg);

  sc_fit_options opt;
  sc_fit_options_default(&opt);
  EXPECT_EQ(opt.model, SC_MODEL_THERMAL);
  EXPECT_EQ(opt.n_min, 2);
  EXPECT_EQ(opt.n_max, 30);
  ASSERT_EQ(sc_cmd_fit(path.c_str(), &opt, nullptr, &report), SC_OK) << sc_last_error();
  EXPECT_NE(take(report).find("n_best=11"), std::string::npos);
  opt.n_min = 40;
  EXPECT_EQ(sc_cmd_fit(path.c_str(), &opt, nullptr, &report), SC_ERR_USAGE);
  std::remove(path.c_str());
}

TEST(CApi, AnalyticAndOperators) {
  double j0 = 0, j2 = 0;
  ASSERT_EQ(sc_mqc_analytic(SC_MODEL_THERMAL, 2, 1.0, 0.3, &j0, &j2), SC_OK);
  EXPECT_NEAR(j0, std::pow(std::cos(0.6), 2), 1e-14);
  EXPECT_NEAR(j0 + 2 * j2, 1.0, 1e-15);
  EXPECT_EQ(sc_mqc_analytic(SC_MODEL_ENDS, 1, 1.0, 0.3, &j0, &j2), SC_ERR_USAGE);

  sc_operator *z = nullptr, *h = nullptr, *e1 = nullptr, *e2 = nullptr, *ends = nullptr, *zt = nullptr;
  ASSERT_EQ(sc_op_collective('z', 2, &z), SC_OK);
  ASSERT_EQ(sc_op_dq_hamiltonian_nn(2, 1.5, &h), SC_OK);
  EXPECT_EQ(sc_op_n_spins(z), 2);
  ASSERT_EQ(sc_op_evolve(z, h, 0.4, &zt), SC_OK);
  double re = 0, im = 0;
  ASSERT_EQ(sc_op_hs_inner(z, zt, &re, &im), SC_OK);
  EXPECT_NEAR(re, 8 * std::cos(2 * 1.5 * 0.4), 1e-12);
  EXPECT_NEAR(im, 0.0, 1e-12);
  double v = 0;
  ASSERT_EQ(sc_mqc_direct(z, h, 0.0, z, 0, &v), SC_OK);
  EXPECT_NEAR(v, 8.0, 1e-12);

  ASSERT_EQ(sc_op_pauli_site('z', 1, 6, &e1), SC_OK);
  ASSERT_EQ(sc_op_pauli_site('z', 6, 6, &e2), SC_OK);
  ASSERT_EQ(sc_op_add(e1, e2, &ends), SC_OK);
  sc_operator* z6 = nullptr;
  ASSERT_EQ(sc_op_collective('z', 6, &z6), SC_OK);
  ASSERT_EQ(sc_op_correlation(z6, ends, &v), SC_OK);
  EXPECT_NEAR(v, std::sqrt(2.0 / 6.0), 1e-14);
  sc_operator* bad = nullptr;
  EXPECT_EQ(sc_op_add(z, ends, &bad), SC_ERR_USAGE);
  EXPECT_EQ(sc_op_pauli_site('w', 1, 2, &bad), SC_ERR_USAGE);
  EXPECT_EQ(sc_op_collective('z', 15, &bad), SC_ERR_CAPACITY);
  EXPECT_EQ(bad, nullptr);
  for (sc_operator* p : {z, h, e1, e2, ends, zt, z6}) sc_op_free(p);
  sc_op_free(nullptr);
}
