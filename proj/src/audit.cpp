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

// `audit <run-dir>`: recompute what can be recomputed from the emitted
// tables and make sure it agrees with audit.json.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "cqfi/experiment.hpp"

namespace cqfi {

namespace {

struct Table {
  std::map<std::string, std::size_t> cols;
  std::vector<std::vector<double>> rows;

  const std::vector<double>& row(std::size_t i) const { return rows[i]; }
  double get(std::size_t i, const std::string& name) const {
    const auto it = cols.find(name);
    if (it == cols.end()) throw Error(ErrorCode::kIoError, "missing column " + name);
    return rows[i][it->second];
  }
  std::size_t size() const { return rows.size(); }
};

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kIoError, path.string() + " is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ss, cell, ',')) t.cols[cell] = k++;
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> r;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) r.push_back(std::strtod(cell.c_str(), nullptr));
    if (r.size() != t.cols.size()) throw Error(ErrorCode::kIoError, path.string() + ": ragged row");
    t.rows.push_back(std::move(r));
  }
  return t;
}

class Auditor {
 public:
  explicit Auditor(AuditOutcome& out) : out_(out) {}
  void expect(bool ok, const std::string& what) {
    out_.messages.push_back((ok ? "ok    " : "FAIL  ") + what);
    if (!ok) out_.pass = false;
  }

 private:
  AuditOutcome& out_;
};

void audit_driven(const std::filesystem::path& dir, const nlohmann::json& report, Auditor& a) {
  const double n = report["config"]["ensemble"]["n_trajs"].get<double>();
  const double gamma0 = report["config"]["model"]["gamma0"].get<double>();

  const Table geo = read_csv(dir / "geometry.csv");
  std::size_t bad_geo = 0;
  for (std::size_t i = 0; i < geo.size(); ++i) {
    const double l = geo.get(i, "L");
    if (geo.get(i, "J") < l * l - 1e-9) ++bad_geo;
  }
  a.expect(bad_geo == 0, "geometry.csv: J >= L^2 on every row (" + std::to_string(bad_geo) + " violations)");

  const Table sl = read_csv(dir / "speedlimits.csv");
  std::size_t bad_point = 0, bad_integral = 0, bad_traj = 0;
  double max_rate = 0.0;
  for (std::size_t i = 0; i < sl.size(); ++i) {
    max_rate = std::max(max_rate, std::abs(sl.get(i, "ens_rate")));
    if (sl.get(i, "ens_point_lhs") > sl.get(i, "ens_point_rhs") + 1e-9) ++bad_point;
    if (sl.get(i, "ens_integral_lhs") > sl.get(i, "ens_integral_rhs") + 1e-9) ++bad_integral;
    if (sl.get(i, "traj_max_point_excess") > 1e-9) ++bad_traj;
  }
  a.expect(bad_point == 0 && bad_integral == 0, "speedlimits.csv: ensemble observable bound, pointwise and integral");
  a.expect(bad_traj == 0, "speedlimits.csv: trajectory observable bound at every grid time");
  a.expect(max_rate <= 1e-9, "speedlimits.csv: ensemble d<H_RWA>/dt = 0 within 1e-9");

  const Table ens = read_csv(dir / "cqfi_ensemble.csv");
  const Table qfi = read_csv(dir / "qfi_timeseries.csv");
  if (n >= 100) {
    std::size_t within = 0;
    std::vector<double> ratios;
    double gap = 0.0;
    std::size_t window = 0;
    const double t_start = gamma0 > 0.0 ? 5.0 / gamma0 : INFINITY;
    for (std::size_t i = 0; i < ens.size(); ++i) {
      const double m = ens.get(i, "mean_cross"), s = ens.get(i, "sem_cross"), sq = ens.get(i, "sem_cross_quarter");
      if (std::abs(m) <= 4.0 * s || (m == 0.0 && s == 0.0)) ++within;
      if (sq > 0.0) ratios.push_back(s / sq);
      const double fq = qfi.get(i, "F_Q");
      if (ens.get(i, "t") >= t_start * (1.0 - 1e-12) && fq > 0.0) {
        gap += std::abs(ens.get(i, "mean_f") - fq) / fq;
        ++window;
      }
    }
    const double frac = static_cast<double>(within) / static_cast<double>(ens.size());
    a.expect(frac >= 0.99, "cqfi_ensemble.csv: |<f^X>| <= 4 SEM at >= 99% of grid points (" + format_number(frac) + ")");
    if (!ratios.empty()) {
      std::nth_element(ratios.begin(), ratios.begin() + static_cast<std::ptrdiff_t>(ratios.size() / 2), ratios.end());
      const double med = ratios[ratios.size() / 2];
      a.expect(med >= 0.4 && med <= 0.6, "cqfi_ensemble.csv: SEM(N)/SEM(N/4) in [0.4, 0.6] (" + format_number(med) + ")");
    }
    if (window > 0) {
      gap /= static_cast<double>(window);
      const double thr = n >= 50000 ? 0.01 : 0.03;
      a.expect(gap <= thr, "qfi_timeseries.csv vs cqfi_ensemble.csv: time-averaged gap " + format_number(gap) +
                               " <= " + format_number(thr));
    }
  }

  const Table rec = read_csv(dir / "ensemble_reconstruction.csv");
  std::size_t bad_rec = 0;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (rec.get(i, "trace_distance") > rec.get(i, "bound")) ++bad_rec;
  }
  a.expect(bad_rec == 0, "ensemble_reconstruction.csv: trace distance <= 5/sqrt(N) everywhere");
}

void audit_sensing(const std::filesystem::path& dir, Auditor& a) {
  const Table t = read_csv(dir / "sensor_oracle.csv");
  double worst = 0.0;
  auto err = [](double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };
  for (std::size_t i = 0; i < t.size(); ++i) {
    worst = std::max({worst, err(t.get(i, "p_plus_num"), t.get(i, "p_plus")),
                      err(t.get(i, "p_minus_num"), t.get(i, "p_minus")),
                      err(t.get(i, "f_ic_plus_num"), t.get(i, "f_ic_plus")),
                      err(t.get(i, "f_ic_minus_num"), t.get(i, "f_ic_minus")),
                      err(t.get(i, "f_c_plus_num"), t.get(i, "f_c")), err(t.get(i, "f_c_minus_num"), t.get(i, "f_c"))});
  }
  a.expect(worst <= 1e-6, "sensor_oracle.csv: numeric pipeline within 1e-6 of the closed forms (" +
                              format_number(worst) + ")");
}

void audit_gaussian(const std::filesystem::path& dir, Auditor& a) {
  const Table t = read_csv(dir / "gaussian_draws.csv");
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, t.get(i, "relative_error"));
  a.expect(worst <= 1e-7, "gaussian_draws.csv: CQFI = QFI within 1e-7 relative (" + format_number(worst) + ")");
}

}  // namespace

AuditOutcome audit_run_dir(const std::filesystem::path& dir) {
  AuditOutcome out;
  Auditor a(out);
  std::ifstream in(dir / "audit.json");
  if (!in) throw Error(ErrorCode::kIoError, "no audit.json in " + dir.string());
  nlohmann::json report;
  try {
    report = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kIoError, std::string("audit.json: ") + e.what());
  }

  const auto& checks = report.at("checks");
  std::vector<int> seen;
  for (const auto& c : checks) {
    const int k = c.at("criterion").get<int>();
    seen.push_back(k);
    const std::string status = c.at("status").get<std::string>();
    a.expect(status != "fail", "audit.json criterion " + std::to_string(k) + " (" + c.at("name").get<std::string>() +
                                   "): " + status);
  }
  std::sort(seen.begin(), seen.end());
  a.expect(seen == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, "audit.json lists criteria 1..10 exactly once");

  const std::string kind = report.at("config").at("experiment").get<std::string>();
  if (kind == "driven_qubit") {
    audit_driven(dir, report, a);
  } else if (kind == "field_sensing") {
    audit_sensing(dir, a);
  } else if (kind == "gaussian_force") {
    audit_gaussian(dir, a);
  }
  return out;
}

}  // namespace cqfi
