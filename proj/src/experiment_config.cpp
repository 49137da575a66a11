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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <utility>

#include "cqfi/experiment.hpp"

namespace cqfi {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kDrivenQubit: return "driven_qubit";
    case ExperimentKind::kFieldSensing: return "field_sensing";
    case ExperimentKind::kGaussianForce: return "gaussian_force";
  }
  return "unknown";
}

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::kConfigInvalid, path + ": " + why);
}

// One JSON object plus the set of keys the schema has consumed; anything
// left over when finish() runs is an unknown key.
class Section {
 public:
  Section(const json* j, std::string path) : j_(j), path_(std::move(path)) {
    if (j_ != nullptr && !j_->is_object()) bad(path_, "must be an object");
  }

  std::string at(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const char* key) {
    known_.insert(key);
    if (j_ == nullptr) return nullptr;
    const auto it = j_->find(key);
    return it == j_->end() ? nullptr : &*it;
  }

  std::optional<double> number(const char* key) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number()) bad(at(key), "must be a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) bad(at(key), "must be finite");
    return x;
  }
  double number(const char* key, double def) { return number(key).value_or(def); }

  std::uint64_t unsigned_int(const char* key, std::uint64_t def) {
    const json* v = find(key);
    if (v == nullptr) return def;
    if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<std::int64_t>() < 0)) {
      bad(at(key), "must be a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  bool boolean(const char* key, bool def) {
    const json* v = find(key);
    if (v == nullptr) return def;
    if (!v->is_boolean()) bad(at(key), "must be true or false");
    return v->get<bool>();
  }

  std::optional<std::string> string(const char* key) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) bad(at(key), "must be a string");
    return v->get<std::string>();
  }

  void finish() const {
    if (j_ == nullptr) return;
    for (const auto& [k, v] : j_->items()) {
      if (!known_.count(k)) bad(path_.empty() ? k : path_ + "." + k, "unknown key");
    }
  }

 private:
  const json* j_;
  std::string path_;
  std::set<std::string> known_;
};

void parse_driven(Section& m, ExperimentConfig& c) {
  auto& p = c.driven;
  p.omega = m.number("omega", p.omega);
  p.epsilon = m.number("epsilon", p.epsilon);
  p.gamma0 = m.number("gamma0", p.gamma0);
  if (!(p.omega > 0.0)) bad(m.at("omega"), "must be positive");
  if (!(p.epsilon >= 0.0)) bad(m.at("epsilon"), "must be non-negative");
  if (p.epsilon / p.omega > 0.2) bad(m.at("epsilon"), "drive must stay weak: epsilon / omega <= 0.2");
  if (!(p.gamma0 >= 0.0)) bad(m.at("gamma0"), "must be non-negative");
  const auto n_bar = m.number("n_bar");
  const auto temperature = m.number("temperature");
  if (n_bar && temperature) bad(m.at("temperature"), "give either n_bar or temperature, not both");
  if (n_bar) {
    if (!(*n_bar >= 0.0)) bad(m.at("n_bar"), "must be non-negative");
    p.temperature = temperature_for_occupation(p.omega, *n_bar);
  } else if (temperature) {
    if (!(*temperature >= 0.0)) bad(m.at("temperature"), "must be non-negative");
    p.temperature = *temperature;
  }
}

void parse_sensing(Section& m, ExperimentConfig& c) {
  auto& s = c.sensing;
  s.reference.delta = m.number("delta", s.reference.delta);
  s.reference.theta = m.number("theta", s.reference.theta);
  s.reference.beta = m.number("beta", s.reference.beta);
  s.n_draws = m.unsigned_int("n_draws", s.n_draws);
  if (!(s.reference.beta >= 0.0)) bad(m.at("beta"), "must be non-negative");
  if (!(std::hypot(s.reference.delta, s.reference.theta) > 0.0)) bad(m.at("delta"), "delta and theta both zero");
  if (s.n_draws < 1) bad(m.at("n_draws"), "must be at least 1");
}

void parse_gaussian(Section& m, ExperimentConfig& c) {
  auto& g = c.gaussian;
  g.omega = m.number("omega", g.omega);
  g.force = m.number("force", g.force);
  g.k_dt = m.number("k_dt", g.k_dt);
  g.n_draws = m.unsigned_int("n_draws", g.n_draws);
  if (!(g.omega > 0.0)) bad(m.at("omega"), "must be positive");
  if (!(g.k_dt > 0.0)) bad(m.at("k_dt"), "must be positive");
  if (g.n_draws < 1) bad(m.at("n_draws"), "must be at least 1");
  if (const json* mean = m.find("mean")) {
    if (!mean->is_array() || mean->size() != 2 || !(*mean)[0].is_number() || !(*mean)[1].is_number()) {
      bad(m.at("mean"), "must be [x, p]");
    }
    g.initial.mean = {(*mean)[0].get<double>(), (*mean)[1].get<double>()};
  }
  if (const json* cov = m.find("cov")) {
    if (!cov->is_array() || cov->size() != 2) bad(m.at("cov"), "must be [[Vx, Vxp], [Vxp, Vp]]");
    for (int i = 0; i < 2; ++i) {
      const json& row = (*cov)[static_cast<std::size_t>(i)];
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
        bad(m.at("cov"), "must be [[Vx, Vxp], [Vxp, Vp]]");
      }
      g.initial.cov(i, 0) = row[0].get<double>();
      g.initial.cov(i, 1) = row[1].get<double>();
    }
  }
  try {
    g.initial.validate();
  } catch (const Error& e) {
    bad(m.at("cov"), e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  Section top(&doc, "");
  ExperimentConfig c;
  const auto kind = top.string("experiment");
  if (!kind) bad("experiment", "required (driven_qubit, field_sensing or gaussian_force)");
  if (*kind == "driven_qubit") {
    c.experiment = ExperimentKind::kDrivenQubit;
  } else if (*kind == "field_sensing") {
    c.experiment = ExperimentKind::kFieldSensing;
  } else if (*kind == "gaussian_force") {
    c.experiment = ExperimentKind::kGaussianForce;
  } else {
    bad("experiment", "unknown experiment '" + *kind + "'");
  }

  Section model(top.find("model"), "model");
  switch (c.experiment) {
    case ExperimentKind::kDrivenQubit: parse_driven(model, c); break;
    case ExperimentKind::kFieldSensing: parse_sensing(model, c); break;
    case ExperimentKind::kGaussianForce: parse_gaussian(model, c); break;
  }
  model.finish();

  const json* grid_doc = top.find("grid");
  const bool grid_required = c.experiment != ExperimentKind::kFieldSensing;
  if (grid_doc == nullptr && grid_required) bad("grid", "required");
  if (grid_doc != nullptr) {
    Section grid(grid_doc, "grid");
    c.t_final = grid.number("t_final");
    c.dt = grid.number("dt");
    if (!c.t_final) bad("grid.t_final", "required");
    if (!c.dt) bad("grid.dt", "required");
    if (!(*c.dt > 0.0)) bad("grid.dt", "must be positive");
    if (!(*c.t_final > 0.0)) bad("grid.t_final", "must be positive");
    if (*c.t_final / *c.dt > 1e7) bad("grid.dt", "t_final / dt exceeds 1e7 steps");
    if (std::llround(*c.t_final / *c.dt) < 1) bad("grid.dt", "grid has no steps");
    grid.finish();
  }

  Section ens(top.find("ensemble"), "ensemble");
  c.n_trajs = ens.unsigned_int("n_trajs", c.n_trajs);
  c.master_seed = ens.unsigned_int("master_seed", c.master_seed);
  c.threads = ens.unsigned_int("threads", c.threads);
  if (c.n_trajs < 1) bad("ensemble.n_trajs", "must be at least 1");
  if (c.threads > 1024) bad("ensemble.threads", "at most 1024");
  ens.finish();

  Section out(top.find("output"), "output");
  c.directory = out.string("directory").value_or("runs/" + to_string(c.experiment));
  if (c.directory.empty()) bad("output.directory", "must not be empty");
  if (const json* formats = out.find("formats")) {
    if (!formats->is_array() || formats->empty()) bad("output.formats", "must be a non-empty array");
    c.write_csv = c.write_json = false;
    for (const auto& f : *formats) {
      if (f == "csv") {
        c.write_csv = true;
      } else if (f == "json") {
        c.write_json = true;
      } else {
        bad("output.formats", "entries must be \"csv\" or \"json\"");
      }
    }
  }
  c.dump_trajectories = out.boolean("dump_trajectories", c.dump_trajectories);
  c.max_dumped = out.unsigned_int("max_dumped", c.max_dumped);
  out.finish();

  top.finish();
  return c;
}

ExperimentConfig validate_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigInvalid, path.string() + ": cannot open");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigInvalid, path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

ordered_json ExperimentConfig::to_json() const {
  ordered_json j;
  j["experiment"] = to_string(experiment);
  ordered_json m;
  switch (experiment) {
    case ExperimentKind::kDrivenQubit:
      m["omega"] = driven.omega;
      m["epsilon"] = driven.epsilon;
      m["gamma0"] = driven.gamma0;
      m["temperature"] = driven.temperature;
      break;
    case ExperimentKind::kFieldSensing:
      m["delta"] = sensing.reference.delta;
      m["theta"] = sensing.reference.theta;
      m["beta"] = sensing.reference.beta;
      m["n_draws"] = sensing.n_draws;
      break;
    case ExperimentKind::kGaussianForce:
      m["omega"] = gaussian.omega;
      m["force"] = gaussian.force;
      m["mean"] = {gaussian.initial.mean(0), gaussian.initial.mean(1)};
      m["cov"] = {{gaussian.initial.cov(0, 0), gaussian.initial.cov(0, 1)},
                  {gaussian.initial.cov(1, 0), gaussian.initial.cov(1, 1)}};
      m["k_dt"] = gaussian.k_dt;
      m["n_draws"] = gaussian.n_draws;
      break;
  }
  j["model"] = m;
  if (t_final && dt) j["grid"] = {{"t_final", *t_final}, {"dt", *dt}};
  j["ensemble"] = {{"n_trajs", n_trajs}, {"master_seed", master_seed}, {"threads", threads}};
  ordered_json formats = ordered_json::array();
  if (write_csv) formats.push_back("csv");
  if (write_json) formats.push_back("json");
  j["output"] = {{"directory", directory},
                 {"formats", formats},
                 {"dump_trajectories", dump_trajectories},
                 {"max_dumped", max_dumped}};
  return j;
}

std::string ExperimentConfig::hash() const {
  // Threads and the output location do not affect results, so they stay out of the hash.
  ordered_json j = to_json();
  j["ensemble"].erase("threads");
  j.erase("output");
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cqfi
