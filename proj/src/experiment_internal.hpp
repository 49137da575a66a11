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

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "cqfi/experiment.hpp"

namespace cqfi::detail {

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<const char*> header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);

 private:
  std::FILE* f_ = nullptr;
  std::filesystem::path path_;
};

CheckResult make_check(int criterion, std::string name, bool pass, double value, double threshold, double margin,
                       double stat_error = 0.0, std::string note = {});
CheckResult not_applicable(int criterion, std::string name, std::string why);

/// Criterion 9 on random (rho, drho, alpha) draws in dimensions 2 and 3.
CheckResult stochastic_fisher_audit(std::uint64_t master_seed, std::size_t draws, nlohmann::ordered_json& info);

RunReport run_driven_qubit(const ExperimentConfig& cfg);
RunReport run_field_sensing(const ExperimentConfig& cfg);
RunReport run_gaussian_force(const ExperimentConfig& cfg);

/// Adds not-applicable entries so criteria 1..10 each appear once, sorted.
void complete_checks(RunReport& report);
void write_report(const RunReport& report);

}  // namespace cqfi::detail
