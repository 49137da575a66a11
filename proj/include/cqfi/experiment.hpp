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

// Experiment driver: config parsing, the three experiments, output tables
// and the inequality audit.
//
// Determinism: trajectories are split into kBlocks fixed index ranges,
// block b covering [floor(b N / kBlocks), floor((b + 1) N / kBlocks)).
// Blocks may run on any thread but are merged strictly in order, so the
// thread count never changes an output byte.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cqfi/models.hpp"

namespace cqfi {

inline constexpr std::size_t kBlocks = 32;

enum class ExperimentKind { kDrivenQubit, kFieldSensing, kGaussianForce };

std::string to_string(ExperimentKind k);

struct FieldSensingSettings {
  ThermalFieldSensorParams reference;
  std::size_t n_draws = 50;
};

struct GaussianForceSettings {
  double omega = 1.0;
  double force = 0.0;
  GaussianState initial;
  double k_dt = 1.0;
  std::size_t n_draws = 100;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kDrivenQubit;
  DrivenQubitParams driven;
  FieldSensingSettings sensing;
  GaussianForceSettings gaussian;
  std::optional<double> t_final, dt;  // required except for field_sensing
  std::size_t n_trajs = 5000;
  std::uint64_t master_seed = 20260416;
  std::size_t threads = 1;  // 0: one per hardware thread
  std::string directory;
  bool write_csv = true, write_json = true;
  bool dump_trajectories = false;
  std::size_t max_dumped = 10;

  /// Canonical JSON echo with every default filled in.
  nlohmann::ordered_json to_json() const;
  /// FNV-1a 64 of the canonical echo, as 16 hex digits.
  std::string hash() const;
};

/// Parses and bounds-checks; throws Error(kConfigInvalid) naming the field
/// path (e.g. "grid.dt"). Unknown keys are rejected.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig validate_config(const std::filesystem::path& path);

enum class CheckStatus { kPass, kFail, kNotApplicable };
std::string to_string(CheckStatus s);

struct CheckResult {
  int criterion = 0;
  std::string name;
  CheckStatus status = CheckStatus::kNotApplicable;
  double value = 0.0;      // the audited quantity
  double threshold = 0.0;  // pass iff value compares favourably with this
  double margin = 0.0;     // signed distance to failure; >= 0 on pass
  double stat_error = 0.0;
  std::string note;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

struct RunReport {
  ExperimentConfig config;
  std::string config_hash;
  std::vector<CheckResult> checks;  // criteria 1..10, each exactly once
  nlohmann::ordered_json informational = nlohmann::ordered_json::object();
  double wall_seconds = 0.0;  // printed, never written to disk

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

/// Runs the configured experiment and writes its tables and audit.json into
/// config.directory. Numerical errors propagate as cqfi::Error.
RunReport run_experiment(const ExperimentConfig& config);

struct AuditOutcome {
  bool pass = true;
  std::vector<std::string> messages;
};

/// Re-checks the inequalities from the CSVs and audit.json of a run directory.
AuditOutcome audit_run_dir(const std::filesystem::path& dir);

/// Shared CSV number format: 17 significant digits.
std::string format_number(double x);

}  // namespace cqfi
