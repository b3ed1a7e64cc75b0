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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinchain/spinchain.h"

namespace {

int exit_code(sc_status s) {
  switch (s) {
    case SC_OK: return 0;
    case SC_ERR_VERIFY: return 2;
    case SC_ERR_CAPACITY: return 3;
    default: return 1;
  }
}

int fail(sc_status s) {
  std::fprintf(stderr, "spinchain: %s\n", sc_last_error());
  return exit_code(s);
}

struct ConfigArgs {
  std::string path;
  std::vector<std::string> sets;
  std::string output;
};

void add_config_args(CLI::App* cmd, ConfigArgs& a, const char* output_help = "output CSV path (default: stdout)") {
  cmd->add_option("-c,--config", a.path, "key=value config file")->check(CLI::ExistingFile);
  cmd->add_option("-s,--set", a.sets, "override a config key (key=value)");
  cmd->add_option("-o,--output", a.output, output_help);
}

bool write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!(out << text)) return false;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
  return !ec;
}

using ConfigPtr = std::unique_ptr<sc_config, decltype(&sc_config_free)>;

sc_status build_config(const ConfigArgs& a, ConfigPtr& out) {
  sc_config* raw = nullptr;
  sc_status s = sc_config_new(&raw);
  if (s != SC_OK) return s;
  out.reset(raw);
  if (!a.path.empty() && (s = sc_config_load(raw, a.path.c_str())) != SC_OK) return s;
  for (const std::string& kv : a.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) return sc_config_set(raw, kv.c_str(), "");
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if ((s = sc_config_set(raw, key.c_str(), value.c_str())) != SC_OK) return s;
  }
  if (!a.output.empty() && (s = sc_config_set(raw, "output", a.output.c_str())) != SC_OK) return s;
  return SC_OK;
}

int print_report(sc_status s, char* report) {
  if (report != nullptr) {
    std::fputs(report, stdout);
    sc_string_free(report);
  }
  return s == SC_OK ? 0 : fail(s);
}

int run_config_command(const ConfigArgs& a, sc_status (*cmd)(const sc_config*, char**)) {
  ConfigPtr cfg(nullptr, &sc_config_free);
  if (const sc_status s = build_config(a, cfg); s != SC_OK) return fail(s);
  char* report = nullptr;
  const sc_status s = cmd(cfg.get(), &report);
  return print_report(s, report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dipolar spin-chain MQC simulation, end-of-chain preparation and fitting"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sc_version()));

  ConfigArgs mqc_args, prep_args, fid_args, synth_args, show_args;
  CLI::App* mqc = app.add_subcommand("mqc", "zero/double-quantum intensities J0, J2 versus time");
  add_config_args(mqc, mqc_args);
  CLI::App* prep = app.add_subcommand("prep", "end-of-chain state preparation and diagnostics");
  add_config_args(prep, prep_args);
  CLI::App* fid = app.add_subcommand("fid", "FID and spectrum, thermal versus prepared state");
  add_config_args(fid, fid_args);
  CLI::App* synth = app.add_subcommand("synth", "synthetic MQC data (t_us,J0,J2)");
  add_config_args(synth, synth_args);
  CLI::App* show = app.add_subcommand("config", "print the canonical form of a config");
  add_config_args(show, show_args, "write the canonical config to this file");

  bool inject = false;
  CLI::App* verify = app.add_subcommand("verify", "identity, oracle and sum-rule checks");
  verify->add_flag("--inject-gamma-flip", inject, "test mode: flip the Bogoliubov sign gamma_k for k > 0");

  std::string data_path, landscape_path, model = "thermal";
  int n_min = 2, n_max = 30;
  double b_min = 1e3, b_max = 1e5;
  bool hz = false;
  CLI::App* fit = app.add_subcommand("fit", "fit (N, b) to an MQC curve");
  fit->add_option("data", data_path, "CSV with header t_us,J0,J2 (optional w)")->required();
  fit->add_option("--model", model, "thermal or ends")->check(CLI::IsMember({"thermal", "ends"}));
  fit->add_option("--n-min", n_min, "smallest chain length");
  fit->add_option("--n-max", n_max, "largest chain length");
  fit->add_option("--b-min", b_min, "lower end of the coupling range (rad/s)");
  fit->add_option("--b-max", b_max, "upper end of the coupling range (rad/s)");
  fit->add_flag("--hz", hz, "b range is given in Hz");
  fit->add_option("-o,--output", landscape_path, "per-N residual CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (mqc->parsed()) return run_config_command(mqc_args, sc_cmd_mqc);
  if (prep->parsed()) return run_config_command(prep_args, sc_cmd_prep);
  if (fid->parsed()) return run_config_command(fid_args, sc_cmd_fid);
  if (synth->parsed()) return run_config_command(synth_args, sc_cmd_synth);
  if (show->parsed()) {
    ConfigArgs args = show_args;
    args.output.clear();
    ConfigPtr cfg(nullptr, &sc_config_free);
    if (const sc_status s = build_config(args, cfg); s != SC_OK) return fail(s);
    char* text = nullptr;
    const sc_status s = sc_config_canonical(cfg.get(), &text);
    if (s != SC_OK || show_args.output.empty()) return print_report(s, text);
    const bool ok = write_text(show_args.output, text);
    sc_string_free(text);
    if (!ok) {
      std::fprintf(stderr, "spinchain: cannot write '%s'\n", show_args.output.c_str());
      return 1;
    }
    std::printf("wrote=%s\n", show_args.output.c_str());
    return 0;
  }
  if (verify->parsed()) {
    char* report = nullptr;
    const sc_status s = sc_cmd_verify(inject ? 1 : 0, &report);
    return print_report(s, report);
  }
  if (fit->parsed()) {
    sc_fit_options opt;
    sc_fit_options_default(&opt);
    opt.model = model == "ends" ? SC_MODEL_ENDS : SC_MODEL_THERMAL;
    opt.n_min = n_min;
    opt.n_max = n_max;
    const double scale = hz ? 2.0 * std::numbers::pi : 1.0;
    opt.b_min = b_min * scale;
    opt.b_max = b_max * scale;
    char* report = nullptr;
    const sc_status s =
        sc_cmd_fit(data_path.c_str(), &opt, landscape_path.empty() ? nullptr : landscape_path.c_str(), &report);
    return print_report(s, report);
  }
  return 1;
}
