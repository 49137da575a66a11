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

#include "cqfi/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "experiment_internal.hpp"

namespace cqfi {

using nlohmann::ordered_json;

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kNotApplicable: return "not_applicable";
  }
  return "unknown";
}

bool RunReport::all_pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::kFail; });
}

ordered_json RunReport::to_json() const {
  ordered_json j;
  j["config_hash"] = config_hash;
  j["config"] = config.to_json();
  j["rng"] = {{"generator", "philox4x32-10"},
              {"master_seed", config.master_seed},
              {"stream", "trajectory index"},
              {"blocks", kBlocks}};
  ordered_json checks_json = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["criterion"] = c.criterion;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    if (c.status != CheckStatus::kNotApplicable) {
      e["value"] = c.value;
      e["threshold"] = c.threshold;
      e["margin"] = c.margin;
      e["stat_error"] = c.stat_error;
    }
    if (!c.note.empty()) e["note"] = c.note;
    if (!c.details.empty()) e["details"] = c.details;
    checks_json.push_back(std::move(e));
  }
  j["checks"] = std::move(checks_json);
  j["informational"] = informational;
  j["all_pass"] = all_pass();
  return j;
}

namespace detail {

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<const char*> header) : path_(path) {
  f_ = std::fopen(path.string().c_str(), "w");
  if (f_ == nullptr) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  bool first = true;
  for (const char* h : header) {
    std::fprintf(f_, first ? "%s" : ",%s", h);
    first = false;
  }
  std::fputc('\n', f_);
}

CsvWriter::~CsvWriter() {
  if (f_ != nullptr) std::fclose(f_);
}

void CsvWriter::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void CsvWriter::row(const std::vector<double>& values) {
  bool first = true;
  for (double v : values) {
    std::fprintf(f_, first ? "%.17g" : ",%.17g", v);
    first = false;
  }
  std::fputc('\n', f_);
}

CheckResult make_check(int criterion, std::string name, bool pass, double value, double threshold, double margin,
                       double stat_error, std::string note) {
  CheckResult c;
  c.criterion = criterion;
  c.name = std::move(name);
  c.status = pass ? CheckStatus::kPass : CheckStatus::kFail;
  c.value = value;
  c.threshold = threshold;
  c.margin = margin;
  c.stat_error = stat_error;
  c.note = std::move(note);
  return c;
}

CheckResult not_applicable(int criterion, std::string name, std::string why) {
  CheckResult c;
  c.criterion = criterion;
  c.name = std::move(name);
  c.status = CheckStatus::kNotApplicable;
  c.note = std::move(why);
  return c;
}

namespace {

const char* criterion_name(int k) {
  switch (k) {
    case 1: return "cqfi_qfi_convergence";
    case 2: return "cross_term_vanishing";
    case 3: return "negative_cross_term";
    case 4: return "trajectory_geometry";
    case 5: return "speed_limit_hierarchy";
    case 6: return "observable_speed_limits";
    case 7: return "thermal_sensor_closed_forms";
    case 8: return "gaussian_outcome_independence";
    case 9: return "stochastic_fisher_bound";
    case 10: return "ensemble_reconstruction";
    default: return "unknown";
  }
}

}  // namespace

void complete_checks(RunReport& report) {
  for (int k = 1; k <= 10; ++k) {
    const bool present = std::any_of(report.checks.begin(), report.checks.end(),
                                     [k](const CheckResult& c) { return c.criterion == k; });
    if (!present) {
      report.checks.push_back(
          not_applicable(k, criterion_name(k), "not evaluated by the " + to_string(report.config.experiment) + " experiment"));
    }
  }
  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.criterion < b.criterion; });
}

void write_report(const RunReport& report) {
  if (!report.config.write_json) return;
  const std::filesystem::path path = std::filesystem::path(report.config.directory) / "audit.json";
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << report.to_json().dump(2) << '\n';
}

}  // namespace detail

RunReport run_experiment(const ExperimentConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.directory, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + config.directory + ": " + ec.message());
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  switch (config.experiment) {
    case ExperimentKind::kDrivenQubit: report = detail::run_driven_qubit(config); break;
    case ExperimentKind::kFieldSensing: report = detail::run_field_sensing(config); break;
    case ExperimentKind::kGaussianForce: report = detail::run_gaussian_force(config); break;
  }
  report.config = config;
  report.config_hash = config.hash();
  detail::complete_checks(report);
  detail::write_report(report);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace cqfi
