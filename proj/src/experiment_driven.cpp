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

// The driven-qubit experiment: GKSL ensemble, SLD series, the trajectory
// fan-out and criteria 1-6, 9, 10.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

#include "cqfi/conditional.hpp"
#include "cqfi/info_geometry.hpp"
#include "cqfi/jump_unraveling.hpp"
#include "experiment_internal.hpp"

namespace cqfi::detail {

using nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-9;

struct PointStats {
  MomentSums f, ic, coh, cross, ell, j;
  double traj_lhs = 0.0, traj_rhs = 0.0;
  double traj_audited = 0.0;
  double traj_excess = -kInf;  // max over trajectories of |rate|/spread - sqrt(f)

  void merge(const PointStats& o) {
    f.merge(o.f);
    ic.merge(o.ic);
    coh.merge(o.coh);
    cross.merge(o.cross);
    ell.merge(o.ell);
    j.merge(o.j);
    traj_lhs += o.traj_lhs;
    traj_rhs += o.traj_rhs;
    traj_audited += o.traj_audited;
    traj_excess = std::max(traj_excess, o.traj_excess);
  }
};

// Audit counters for one trajectory bound.
struct BoundTally {
  std::size_t audited = 0, excluded = 0, point_violations = 0, integral_violations = 0;
  double worst_point = kInf, worst_integral = kInf;  // min of rhs - lhs
  double max_abs_rate = 0.0;

  void merge(const BoundTally& o) {
    audited += o.audited;
    excluded += o.excluded;
    point_violations += o.point_violations;
    integral_violations += o.integral_violations;
    worst_point = std::min(worst_point, o.worst_point);
    worst_integral = std::min(worst_integral, o.worst_integral);
    max_abs_rate = std::max(max_abs_rate, o.max_abs_rate);
  }
};

struct Counters {
  std::size_t samples = 0, negative_cross = 0;
  double min_cross_over_fmax = kInf;
  std::size_t geom_points = 0, geom_violations = 0, delta_violations = 0;
  std::size_t ratio_points = 0, ratio_violations = 0;
  double min_geom_margin = kInf, min_delta = kInf, min_ratio = kInf;
  BoundTally hamiltonian, sigma_z;
  std::vector<std::size_t> jumps;
  double exposure_excited = 0.0, exposure_ground = 0.0;  // int |<level|psi>|^2 dt before each step

  void merge(const Counters& o) {
    samples += o.samples;
    negative_cross += o.negative_cross;
    min_cross_over_fmax = std::min(min_cross_over_fmax, o.min_cross_over_fmax);
    geom_points += o.geom_points;
    geom_violations += o.geom_violations;
    delta_violations += o.delta_violations;
    ratio_points += o.ratio_points;
    ratio_violations += o.ratio_violations;
    min_geom_margin = std::min(min_geom_margin, o.min_geom_margin);
    min_delta = std::min(min_delta, o.min_delta);
    min_ratio = std::min(min_ratio, o.min_ratio);
    hamiltonian.merge(o.hamiltonian);
    sigma_z.merge(o.sigma_z);
    for (std::size_t k = 0; k < jumps.size(); ++k) jumps[k] += o.jumps[k];
    exposure_excited += o.exposure_excited;
    exposure_ground += o.exposure_ground;
  }
};

struct BlockAcc {
  std::vector<PointStats> pts;
  std::vector<cplx> rho;  // sum of |psi><psi| per grid point, row-major
  Counters c;

  BlockAcc(std::size_t points, std::size_t dim, std::size_t channels) : pts(points), rho(points * dim * dim) {
    c.jumps.assign(channels, 0);
  }
  void merge(const BlockAcc& o) {
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i].merge(o.pts[i]);
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] += o.rho[i];
    c.merge(o.c);
  }
};

struct Context {
  const ExperimentConfig& cfg;
  const GKSLModel& model;
  const EnsembleSolution& sol;
  const std::vector<CqfiKernel>& kernels;
  const SpectralState& rho0;
  HermitianOperator h_obs;
  HermitianOperator z_obs;
  double f_max;
  std::vector<double>& ell_final;
  std::vector<double>& j_final;
};

// Integrated bound state along one trajectory.
struct BoundRun {
  double integral = 0.0, prev = 0.0;

  void visit(BoundTally& tally, PointStats* pt, const TrajectoryRate::Value& v, double f, double ell, double dt,
             bool first) {
    tally.max_abs_rate = std::max(tally.max_abs_rate, std::abs(v.rate));
    double lhs = 0.0;
    if (v.spread * v.spread > kVarianceFloor) {
      lhs = std::abs(v.rate) / v.spread;
      const double rhs = std::sqrt(std::max(0.0, f));
      ++tally.audited;
      tally.worst_point = std::min(tally.worst_point, rhs - lhs);
      if (lhs > rhs + kSlack) ++tally.point_violations;
      if (pt != nullptr) {
        pt->traj_lhs += lhs;
        pt->traj_rhs += rhs;
        pt->traj_audited += 1.0;
        pt->traj_excess = std::max(pt->traj_excess, lhs - rhs);
      }
    } else {
      ++tally.excluded;
    }
    if (!first) integral += 0.5 * dt * (lhs + prev);
    prev = lhs;
    tally.worst_integral = std::min(tally.worst_integral, 2.0 * ell - integral);
    if (integral > 2.0 * ell + kSlack) ++tally.integral_violations;
  }
};

void run_block(const Context& ctx, std::size_t begin, std::size_t end, BlockAcc& acc) {
  const TimeGrid& grid = ctx.sol.grid;
  const std::size_t dim = ctx.model.dim();
  const auto d = static_cast<Eigen::Index>(dim);
  JumpPropagator prop(ctx.model, grid.dt);
  TrajectoryRate rate_h(ctx.model, ctx.h_obs);
  TrajectoryRate rate_z(ctx.model, ctx.z_obs);
  CqfiKernel::Workspace ws(dim);
  Vector psi(d);
  Counters& c = acc.c;

  for (std::size_t idx = begin; idx < end; ++idx) {
    RunningGeometry geo(grid.dt);
    BoundRun bound_h, bound_z;
    run_trajectory(prop, ctx.rho0, grid, ctx.cfg.master_seed, idx, psi, [&](std::size_t i, const Vector& v, int ch) {
      const double t = grid.time(i);
      const CqfiTerms terms = ctx.kernels[i].evaluate(v, ws);
      PointStats& pt = acc.pts[i];
      pt.f.add(terms.total);
      pt.ic.add(terms.ic);
      pt.coh.add(terms.coh);
      pt.cross.add(terms.cross);
      cplx* r = acc.rho.data() + i * dim * dim;
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) r[a * d + b] += v(a) * std::conj(v(b));
      }
      if (ch >= 0) ++c.jumps[static_cast<std::size_t>(ch)];
      if (i + 1 < grid.size()) {
        c.exposure_excited += grid.dt * std::norm(v(0));
        c.exposure_ground += grid.dt * std::norm(v(1));
      }

      ++c.samples;
      if (ctx.f_max > 0.0) {
        c.min_cross_over_fmax = std::min(c.min_cross_over_fmax, terms.cross / ctx.f_max);
        if (terms.cross <= -1e-3 * ctx.f_max) ++c.negative_cross;
      }

      geo.push(terms.total);
      const double ell = geo.length(), j = geo.action();
      pt.ell.add(ell);
      pt.j.add(j);
      if (i > 0) {
        ++c.geom_points;
        const double margin = j - ell * ell;
        c.min_geom_margin = std::min(c.min_geom_margin, margin);
        if (margin < -kSlack) ++c.geom_violations;
        const DeltaResult dr = delta_from(ell, j, t);
        c.min_delta = std::min(c.min_delta, dr.delta);
        if (dr.delta < -kSlack) ++c.delta_violations;
        if (dr.ratio_defined) {
          ++c.ratio_points;
          c.min_ratio = std::min(c.min_ratio, dr.ratio);
          if (dr.ratio < 1.0 - kSlack) ++c.ratio_violations;
        }
      }

      bound_h.visit(c.hamiltonian, &pt, rate_h.evaluate(v, t), terms.total, ell, grid.dt, i == 0);
      bound_z.visit(c.sigma_z, nullptr, rate_z.evaluate(v, t), terms.total, ell, grid.dt, i == 0);
    });
    ctx.ell_final[idx] = geo.length();
    ctx.j_final[idx] = geo.action();
  }
}

ordered_json tally_json(const BoundTally& t) {
  return {{"audited_points", t.audited},
          {"excluded_points", t.excluded},
          {"point_violations", t.point_violations},
          {"integral_violations", t.integral_violations},
          {"worst_point_margin", t.worst_point},
          {"worst_integral_margin", t.worst_integral},
          {"max_abs_rate", t.max_abs_rate}};
}

ordered_json ledger_json(const SpeedLimitLedger& l) {
  return {{"excluded_points", l.excluded},
          {"point_violations", l.point_violations},
          {"integral_violations", l.integral_violations},
          {"worst_point_margin", l.worst_point_margin},
          {"worst_integral_margin", l.worst_integral_margin},
          {"max_abs_rate", l.max_abs_rate}};
}

void dump_trajectories(const ExperimentConfig& cfg, const GKSLModel& model, const SpectralState& rho0,
                       const TimeGrid& grid) {
  const std::size_t n = std::min(cfg.max_dumped, cfg.n_trajs);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Trajectory tr = simulate_trajectory(model, rho0, grid, cfg.master_seed, idx);
    char name[32];
    std::snprintf(name, sizeof name, "traj_%05zu.csv", idx);
    std::vector<std::string> header_store{"t"};
    for (std::size_t k = 0; k < model.dim(); ++k) {
      header_store.push_back("re_" + std::to_string(k));
      header_store.push_back("im_" + std::to_string(k));
    }
    const std::filesystem::path path = std::filesystem::path(cfg.directory) / name;
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (f == nullptr) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
    for (const auto& h : header_store) std::fprintf(f, "%s,", h.c_str());
    std::fprintf(f, "jump_flag,channel\n");
    std::size_t next_jump = 0;
    for (std::size_t i = 0; i < tr.states.size(); ++i) {
      std::fprintf(f, "%.17g", tr.times[i]);
      for (Eigen::Index k = 0; k < tr.states[i].amplitudes().size(); ++k) {
        const cplx a = tr.states[i].amplitudes()(k);
        std::fprintf(f, ",%.17g,%.17g", a.real(), a.imag());
      }
      int channel = -1;
      if (next_jump < tr.jumps.size() && tr.jumps[next_jump].step == i) {
        channel = static_cast<int>(tr.jumps[next_jump].channel);
        ++next_jump;
      }
      std::fprintf(f, ",%d,%d\n", channel >= 0 ? 1 : 0, channel);
    }
    std::fclose(f);
  }
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  return 0.5 * (hi + *std::max_element(v.begin(), mid));
}

}  // namespace

RunReport run_driven_qubit(const ExperimentConfig& cfg) {
  const DrivenQubitParams& p = cfg.driven;
  const GKSLModel model = build_driven_qubit(p);
  const DensityMatrix rho0 = driven_qubit_initial_state(p);
  const EnsembleSolution sol = evolve(rho0, model, *cfg.t_final, *cfg.dt);
  const std::vector<SldData> slds = sld_series(sol);
  const FisherSeries fs = fisher_time_series(sol, slds);
  std::vector<CqfiKernel> kernels;
  kernels.reserve(slds.size());
  for (std::size_t i = 0; i < slds.size(); ++i) kernels.emplace_back(slds[i], sol.states[i]);

  const std::size_t points = sol.states.size();
  const std::size_t dim = model.dim();
  const std::size_t n = cfg.n_trajs;
  const double f_max = *std::max_element(fs.f_q.begin(), fs.f_q.end());
  std::vector<double> ell_final(n), j_final(n);
  Context ctx{cfg,
              model,
              sol,
              kernels,
              rho0.spectral(),
              driven_qubit_hamiltonian(p),
              HermitianOperator(pauli::z()),
              f_max,
              ell_final,
              j_final};

  // Fan out over fixed blocks; merge strictly in block order.
  BlockAcc total(points, dim, model.jumps().size());
  std::optional<BlockAcc> quarter;
  std::vector<std::unique_ptr<BlockAcc>> done(kBlocks);
  std::size_t next_merge = 0;
  std::atomic<std::size_t> next_block{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto block_lo = [n](std::size_t b) { return b * n / kBlocks; };
  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t b = next_block.fetch_add(1);
        if (b >= kBlocks) break;
        auto acc = std::make_unique<BlockAcc>(points, dim, model.jumps().size());
        run_block(ctx, block_lo(b), block_lo(b + 1), *acc);
        const std::lock_guard<std::mutex> lock(mu);
        done[b] = std::move(acc);
        while (next_merge < kBlocks && done[next_merge]) {
          total.merge(*done[next_merge]);
          done[next_merge].reset();
          ++next_merge;
          if (next_merge == kBlocks / 4) quarter = total;
        }
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
      next_block.store(kBlocks);
    }
  };
  std::size_t threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = std::min(threads, kBlocks);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  const std::size_t n_quarter = block_lo(kBlocks / 4);

  // Ensemble geometry and the ensemble observable bound.
  const std::vector<double> length = cumulative_length(fs.f_q, sol.grid.dt);
  const std::vector<double> action = cumulative_action(fs.f_q, sol.grid.dt);
  const SpeedLimitLedger ens_h = observable_speed_limit(sol, fs.f_q, ctx.h_obs);
  const SpeedLimitLedger ens_z = observable_speed_limit(sol, fs.f_q, ctx.z_obs);

  // Trajectory-averaged state against the GKSL solution.
  std::vector<double> trace_dist(points);
  const auto d = static_cast<Eigen::Index>(dim);
  for (std::size_t i = 0; i < points; ++i) {
    Matrix avg(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) avg(a, b) = total.rho[i * dim * dim + a * d + b] / static_cast<double>(n);
    }
    trace_dist[i] = trace_distance(Matrix(0.5 * (avg + avg.adjoint())), sol.states[i].matrix());
  }

  if (cfg.write_csv) {
    const std::filesystem::path dir(cfg.directory);
    {
      CsvWriter w(dir / "qfi_timeseries.csv", {"t", "F_Q", "F_IC", "F_C"});
      for (std::size_t i = 0; i < points; ++i) w.row({sol.times[i], fs.f_q[i], fs.f_ic[i], fs.f_c[i]});
    }
    {
      CsvWriter w(dir / "cqfi_ensemble.csv", {"t", "mean_f", "mean_ic", "mean_coh", "mean_cross", "sem_cross", "sem_f",
                                              "sem_cross_quarter"});
      for (std::size_t i = 0; i < points; ++i) {
        const PointStats& s = total.pts[i];
        const double sem_q = quarter ? quarter->pts[i].cross.sem() : std::numeric_limits<double>::quiet_NaN();
        w.row({sol.times[i], s.f.mean(), s.ic.mean(), s.coh.mean(), s.cross.mean(), s.cross.sem(), s.f.sem(), sem_q});
      }
    }
    {
      CsvWriter w(dir / "geometry.csv", {"t", "L", "J", "mean_ell", "mean_j", "var_ell"});
      for (std::size_t i = 0; i < points; ++i) {
        const PointStats& s = total.pts[i];
        w.row({sol.times[i], length[i], action[i], s.ell.mean(), s.j.mean(), s.ell.variance()});
      }
    }
    {
      CsvWriter w(dir / "speedlimits.csv", {"t", "ens_rate", "ens_spread", "ens_point_lhs", "ens_point_rhs",
                                            "ens_integral_lhs", "ens_integral_rhs", "traj_mean_point_lhs",
                                            "traj_mean_point_rhs", "traj_max_point_excess"});
      for (std::size_t i = 0; i < points; ++i) {
        const auto& r = ens_h.rows[i];
        const PointStats& s = total.pts[i];
        const double na = s.traj_audited > 0.0 ? s.traj_audited : std::numeric_limits<double>::quiet_NaN();
        w.row({r.t, r.rate, r.spread, r.lhs_point, r.rhs_point, r.lhs_integral, r.rhs_integral, s.traj_lhs / na,
               s.traj_rhs / na, s.traj_excess});
      }
    }
    {
      CsvWriter w(dir / "ensemble_reconstruction.csv", {"t", "trace_distance", "bound"});
      const double bound = 5.0 / std::sqrt(static_cast<double>(n));
      for (std::size_t i = 0; i < points; ++i) w.row({sol.times[i], trace_dist[i], bound});
    }
  }
  if (cfg.dump_trajectories) dump_trajectories(cfg, model, rho0.spectral(), sol.grid);

  // ---- checks -------------------------------------------------------------
  RunReport report;
  const Counters& c = total.c;
  const bool stats_ok = n >= 100;
  const std::string small = "needs n_trajs >= 100 (got " + std::to_string(n) + ")";

  // 1. <f_Q> -> F_Q, time-averaged relative gap for t >= 5 / gamma0.
  {
    const double t_start = p.gamma0 > 0.0 ? 5.0 / p.gamma0 : kInf;
    double gap = 0.0, err = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < points; ++i) {
      if (sol.times[i] < t_start * (1.0 - 1e-12) || !(fs.f_q[i] > 0.0)) continue;
      gap += std::abs(total.pts[i].f.mean() - fs.f_q[i]) / fs.f_q[i];
      err += total.pts[i].f.sem() / fs.f_q[i];
      ++count;
    }
    const double threshold = n >= 50000 ? 0.01 : 0.03;
    if (!stats_ok) {
      report.checks.push_back(not_applicable(1, "cqfi_qfi_convergence", small));
    } else if (count == 0) {
      report.checks.push_back(not_applicable(1, "cqfi_qfi_convergence", "grid ends before t = 5 / gamma0"));
    } else {
      gap /= static_cast<double>(count);
      err /= static_cast<double>(count);
      auto chk = make_check(1, "cqfi_qfi_convergence", gap <= threshold, gap, threshold, threshold - gap, err,
                            "time-averaged |<f_Q> - F_Q| / F_Q over t >= 5 / gamma0");
      chk.details = {{"window_start", t_start}, {"window_points", count}};
      report.checks.push_back(std::move(chk));
    }
  }

  // 2. <f^X> within 4 SEM at >= 99% of grid points; SEM halves when N quadruples.
  {
    std::size_t within = 0;
    std::vector<double> ratios;
    for (std::size_t i = 0; i < points; ++i) {
      const MomentSums& x = total.pts[i].cross;
      if (std::abs(x.mean()) <= 4.0 * x.sem() || (x.sem() == 0.0 && x.mean() == 0.0)) ++within;
      if (quarter) {
        const double sq = quarter->pts[i].cross.sem();
        if (sq > 0.0) ratios.push_back(x.sem() / sq);
      }
    }
    const double frac = static_cast<double>(within) / static_cast<double>(points);
    const double ratio = median(ratios);
    if (!stats_ok) {
      report.checks.push_back(not_applicable(2, "cross_term_vanishing", small));
    } else {
      const bool ratio_ok = ratio >= 0.4 && ratio <= 0.6;
      auto chk = make_check(2, "cross_term_vanishing", frac >= 0.99 && ratio_ok, frac, 0.99,
                            std::min(frac - 0.99, 0.1 - std::abs(ratio - 0.5)), 0.0,
                            "fraction of grid points with |<f^X>| <= 4 SEM; SEM(N)/SEM(N/4) must lie in [0.4, 0.6]");
      chk.details = {{"sem_ratio_median", ratio},
                     {"sem_ratio_points", ratios.size()},
                     {"n_full", n},
                     {"n_quarter", n_quarter},
                     {"max_abs_mean_over_sem", [&] {
                        double m = 0.0;
                        for (const auto& s : total.pts) {
                          if (s.cross.sem() > 0.0) m = std::max(m, std::abs(s.cross.mean()) / s.cross.sem());
                        }
                        return m;
                      }()}};
      report.checks.push_back(std::move(chk));
    }
  }

  // 3. Negative cross terms.
  {
    const double frac = c.samples ? static_cast<double>(c.negative_cross) / static_cast<double>(c.samples) : 0.0;
    auto chk = make_check(3, "negative_cross_term", frac >= 0.01, frac, 0.01, frac - 0.01, 0.0,
                          "fraction of (trajectory, time) samples with f^X <= -1e-3 max_t F_Q");
    chk.details = {{"samples", c.samples}, {"negative_samples", c.negative_cross},
                   {"min_cross_over_max_F_Q", c.min_cross_over_fmax}};
    report.checks.push_back(std::move(chk));
  }

  // 4. Per-trajectory j >= l^2, delta >= 0, I_bar / delta >= 1.
  {
    const std::size_t bad = c.geom_violations + c.delta_violations + c.ratio_violations;
    auto chk = make_check(4, "trajectory_geometry", bad == 0, static_cast<double>(bad), 0.0,
                          std::min({c.min_geom_margin, c.min_delta, c.min_ratio - 1.0}), 0.0,
                          "violations of j >= l^2, delta >= -1e-9, I_bar/delta >= 1 (slack 1e-9)");
    chk.details = {{"points", c.geom_points},
                   {"j_ge_l2_violations", c.geom_violations},
                   {"delta_violations", c.delta_violations},
                   {"ratio_points", c.ratio_points},
                   {"ratio_violations", c.ratio_violations},
                   {"min_j_minus_l2", c.min_geom_margin},
                   {"min_delta", c.min_delta},
                   {"min_ratio", c.min_ratio}};
    report.checks.push_back(std::move(chk));
  }

  // 5. Hierarchy J >= L^2 >= Var(l) and <j> -> J at the final time.
  if (!stats_ok) {
    report.checks.push_back(not_applicable(5, "speed_limit_hierarchy", small));
  } else {
    const HierarchyReport h = hierarchy_check(action.back(), length.back(), ell_final, j_final);
    const bool pass = h.action_ge_length_sq && h.length_sq_ge_var && h.j_relative_gap <= 0.05;
    auto chk = make_check(5, "speed_limit_hierarchy", pass, h.j_relative_gap, 0.05, 0.05 - h.j_relative_gap,
                          h.mean_j.sem / std::max(h.action, 1e-300),
                          "J >= L^2 >= Var(l) within 3 sigma; |<j> - J| / J <= 5%");
    chk.details = {{"J", h.action},
                   {"L2", h.length_sq},
                   {"var_ell", h.var_ell.variance},
                   {"var_ell_se", h.var_ell.se},
                   {"mean_j", h.mean_j.mean},
                   {"mean_j_sem", h.mean_j.sem},
                   {"mean_ell", h.mean_ell.mean},
                   {"J_ge_L2", h.action_ge_length_sq},
                   {"L2_ge_var_ell", h.length_sq_ge_var}};
    report.checks.push_back(std::move(chk));
  }

  // 6. Observable speed limits with O = H_RWA.
  {
    const BoundTally& th = c.hamiltonian;
    const bool ens_ok = ens_h.point_violations == 0 && ens_h.integral_violations == 0;
    const bool zero_rate = ens_h.max_abs_rate <= 1e-9;
    const bool traj_ok = th.point_violations == 0 && th.integral_violations == 0;
    const double margin = std::min({ens_h.worst_point_margin, ens_h.worst_integral_margin, th.worst_point,
                                    th.worst_integral, 1e-9 - ens_h.max_abs_rate});
    auto chk = make_check(6, "observable_speed_limits", ens_ok && zero_rate && traj_ok,
                          static_cast<double>(ens_h.point_violations + ens_h.integral_violations +
                                              th.point_violations + th.integral_violations),
                          0.0, margin, 0.0,
                          "O = H_RWA: ensemble and trajectory bounds (slack 1e-9) and |d<H>/dt| <= 1e-9");
    chk.details = {{"ensemble", ledger_json(ens_h)}, {"trajectory", tally_json(th)}};
    report.checks.push_back(std::move(chk));
  }

  // 9. Stochastic Fisher information bound on random draws.
  report.checks.push_back(stochastic_fisher_audit(cfg.master_seed, 10000, report.informational));

  // 10. Trajectory average vs GKSL state.
  {
    const double worst = *std::max_element(trace_dist.begin(), trace_dist.end());
    const double bound = 5.0 / std::sqrt(static_cast<double>(n));
    auto chk = make_check(10, "ensemble_reconstruction", worst <= bound, worst, bound, bound - worst, 0.0,
                          "max over grid of trace distance to the GKSL state, bound 5 / sqrt(N)");
    report.checks.push_back(std::move(chk));
  }

  // ---- informational --------------------------------------------------------
  ordered_json& info = report.informational;
  info["trajectory_sigma_z_bound"] = tally_json(c.sigma_z);
  info["ensemble_sigma_z_bound"] = ledger_json(ens_z);
  info["trajectory_hamiltonian_max_abs_rate"] = c.hamiltonian.max_abs_rate;
  {
    ordered_json jumps = ordered_json::object();
    for (std::size_t k = 0; k < model.jumps().size(); ++k) jumps[model.jumps()[k].label] = c.jumps[k];
    info["jump_counts"] = jumps;
    info["mean_jumps_per_trajectory"] = [&] {
      double s = 0.0;
      for (auto j : c.jumps) s += static_cast<double>(j);
      return s / static_cast<double>(n);
    }();
    const double nb = bose_occupation(p.omega, p.temperature);
    if (c.jumps.size() == 2 && c.jumps[0] > 0 && c.exposure_ground > 0.0) {
      // Per-exposure rates: absorptions per unit ground-state time over emissions per unit excited-state time.
      const double up = static_cast<double>(c.jumps[1]) / c.exposure_ground;
      const double down = static_cast<double>(c.jumps[0]) / c.exposure_excited;
      const double ratio = up / down;
      const double rel_err = std::sqrt(1.0 / static_cast<double>(c.jumps[0]) + 1.0 / static_cast<double>(c.jumps[1]));
      info["detailed_balance"] = {{"measured_rate_ratio", ratio},
                                  {"expected_rate_ratio", nb / (nb + 1.0)},
                                  {"stat_error", ratio * rel_err},
                                  {"within_3_sigma", std::abs(ratio - nb / (nb + 1.0)) <= 3.0 * ratio * rel_err}};
    }
  }
  info["ensemble_J_ge_L2_everywhere"] = [&] {
    for (std::size_t i = 0; i < points; ++i) {
      if (action[i] < length[i] * length[i] - 1e-9) return false;
    }
    return true;
  }();
  info["max_F_Q"] = f_max;
  return report;
}

}  // namespace cqfi::detail
