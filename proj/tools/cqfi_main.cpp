// Copyright 2026 The cqfi Authors
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

// cqfi run <config> [--seed N] [--n-trajs N] [--out DIR] [--threads N]
// cqfi validate <config>
// cqfi audit <run-dir>
//
// Exit codes: 0 pass, 1 audit failure, 2 config error, 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cqfi/experiment.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAuditFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(const cqfi::Error& e) {
  return e.code() == cqfi::ErrorCode::kConfigInvalid ? kExitConfig : kExitNumerical;
}

void print_report(const cqfi::RunReport& r) {
  std::printf("experiment %s  config %s  seed %llu\n", cqfi::to_string(r.config.experiment).c_str(),
              r.config_hash.c_str(), static_cast<unsigned long long>(r.config.master_seed));
  for (const auto& c : r.checks) {
    const char* tag = c.status == cqfi::CheckStatus::kPass   ? "PASS"
                      : c.status == cqfi::CheckStatus::kFail ? "FAIL"
                                                             : "n/a ";
    if (c.status == cqfi::CheckStatus::kNotApplicable) {
      std::printf("  [%s] %2d %-32s %s\n", tag, c.criterion, c.name.c_str(), c.note.c_str());
    } else {
      std::printf("  [%s] %2d %-32s value %.6g threshold %.6g margin %.3g\n", tag, c.criterion, c.name.c_str(), c.value,
                  c.threshold, c.margin);
    }
  }
  std::printf("outputs in %s  (wall clock %.2f s)\n", r.config.directory.c_str(), r.wall_seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional quantum Fisher information along quantum-jump trajectories"};
  app.require_subcommand(1);

  std::string run_config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_trajs, threads;
  std::optional<std::string> out_dir;
  auto* run = app.add_subcommand("run", "run an experiment and write its tables and audit.json");
  run->add_option("config", run_config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "override ensemble.master_seed");
  run->add_option("--n-trajs", n_trajs, "override ensemble.n_trajs");
  run->add_option("--out", out_dir, "override output.directory");
  run->add_option("--threads", threads, "override ensemble.threads (0 = all cores)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "parse and bounds-check a config; print it with defaults");
  validate->add_option("config", validate_path, "experiment config (JSON)")->required();

  std::string audit_dir;
  auto* audit = app.add_subcommand("audit", "re-check the inequalities of a finished run");
  audit->add_option("run-dir", audit_dir, "directory written by `run`")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*validate) {
      const cqfi::ExperimentConfig cfg = cqfi::validate_config(validate_path);
      std::cout << cfg.to_json().dump(2) << '\n';
      return kExitPass;
    }
    if (*run) {
      cqfi::ExperimentConfig cfg = cqfi::validate_config(run_config);
      if (seed) cfg.master_seed = *seed;
      if (n_trajs) {
        if (*n_trajs < 1) throw cqfi::Error(cqfi::ErrorCode::kConfigInvalid, "--n-trajs: must be at least 1");
        cfg.n_trajs = *n_trajs;
      }
      if (out_dir) cfg.directory = *out_dir;
      if (threads) cfg.threads = *threads;
      const cqfi::RunReport report = cqfi::run_experiment(cfg);
      print_report(report);
      return report.all_pass() ? kExitPass : kExitAuditFail;
    }
    if (*audit) {
      const cqfi::AuditOutcome outcome = cqfi::audit_run_dir(audit_dir);
      for (const auto& m : outcome.messages) std::printf("%s\n", m.c_str());
      std::printf("%s\n", outcome.pass ? "audit passed" : "audit FAILED");
      return outcome.pass ? kExitPass : kExitAuditFail;
    }
  } catch (const cqfi::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (*audit) return kExitAuditFail;
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitPass;
}
