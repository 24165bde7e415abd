#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "rmhd/problems.hpp"
#include "rmhd/solver.hpp"

// Time-marching drivers shared by the CLI and the test suites: advance a
// field to a target time recording per-step diagnostics, and measure
// errors against an exact solution.

namespace rmhd {

struct run_trace {
  std::vector<real> time;      // after each accepted step
  std::vector<real> entropy;   // total entropy at those times
  std::vector<real> div_max;   // 2D only
  std::vector<real> div_l1;    // 2D only
  long steps = 0;
  long dt_halvings = 0;        // CLI retry bookkeeping
};

struct advance_options {
  bool trace_entropy = false;
  bool trace_divergence = false;
  int  max_dt_halvings = 0;    // library default: fail hard
  std::function<void(real)> on_step;   // called with t after each step
};

namespace detail {

inline real clipped_dt(real dt, real t, real t_end) {
  // Land exactly on t_end; absorb a trailing sliver into the last step.
  if (t + dt >= t_end - 1e-14 * std::max(real(1), std::abs(t_end)))
    return t_end - t;
  if (t + 2.0 * dt > t_end) return 0.5 * (t_end - t);
  return dt;
}

} // namespace detail

inline void advance_to(field1d& f, const bc1d& bcs, const scheme_config& cfg,
                       real t_end, run_trace* trace = nullptr,
                       const advance_options& opt = {}) {
  if (trace && opt.trace_entropy && trace->time.empty()) {
    trace->time.push_back(f.t);
    trace->entropy.push_back(total_entropy(f, cfg.eos));
  }
  while (f.t < t_end - 1e-14 * std::max(real(1), std::abs(t_end))) {
    real dt = detail::clipped_dt(cfl_dt_1d(f, cfg), f.t, t_end);
    int halved = 0;
    for (;;) {
      try {
        rk4_step(f, dt, cfg, bcs);
        break;
      } catch (const recovery_error&) {
        if (halved++ >= opt.max_dt_halvings) throw;
        dt *= 0.5;
        if (trace) ++trace->dt_halvings;
      }
    }
    if (trace) {
      ++trace->steps;
      if (opt.trace_entropy) {
        trace->time.push_back(f.t);
        trace->entropy.push_back(total_entropy(f, cfg.eos));
      }
    }
    if (opt.on_step) opt.on_step(f.t);
  }
}

inline void advance_to(field2d& f, const bc2d& bcs, const scheme_config& cfg,
                       real t_end, run_trace* trace = nullptr,
                       const advance_options& opt = {}) {
  auto record = [&](bool first) {
    if (!trace) return;
    if (first && !trace->time.empty()) return;
    if (opt.trace_entropy) {
      trace->time.push_back(f.t);
      trace->entropy.push_back(total_entropy(f, cfg.eos));
    }
    if (opt.trace_divergence) {
      field2d tmp = f;
      apply_boundary(tmp, bcs);
      const auto d = divergence_norm(tmp);
      trace->div_max.push_back(d.max);
      trace->div_l1.push_back(d.l1);
    }
  };
  record(true);
  while (f.t < t_end - 1e-14 * std::max(real(1), std::abs(t_end))) {
    real dt = detail::clipped_dt(cfl_dt_2d(f, cfg), f.t, t_end);
    int halved = 0;
    for (;;) {
      try {
        rk4_step(f, dt, cfg, bcs);
        break;
      } catch (const recovery_error&) {
        if (halved++ >= opt.max_dt_halvings) throw;
        dt *= 0.5;
        if (trace) ++trace->dt_halvings;
      }
    }
    if (trace) ++trace->steps;
    record(false);
    if (opt.on_step) opt.on_step(f.t);
  }
}

// ------------------------------------------------------------ convergence

struct convergence_row {
  int  n = 0;
  real l1 = 0, l2 = 0;
  real order_l1 = 0, order_l2 = 0;   // vs previous row; 0 for the first
};

struct convergence_report {
  std::string variable;
  real t = 0;
  std::vector<convergence_row> rows;
};

// l1/l2 errors of one primitive variable against the exact solution.
inline void field_errors(const field1d& f, const problem_spec& P, int comp,
                         real& l1, real& l2) {
  l1 = 0; l2 = 0;
  for (int i = 0; i < f.m.n; ++i) {
    const state prim = cons_to_prim(f.at(i), P.eos);
    const state ex = P.exact(f.m.xc(i), 0.0, f.t);
    const real e = prim[comp] - ex[comp];
    l1 += std::abs(e) * f.m.dx();
    l2 += e * e * f.m.dx();
  }
  l2 = std::sqrt(l2);
}

inline convergence_report convergence_study(const problem_spec& P,
                                            const scheme_config& cfg,
                                            const std::vector<int>& res,
                                            int comp = VY, real t_end = -1) {
  if (!P.exact)
    throw std::invalid_argument("convergence_study: problem has no exact solution");
  convergence_report rep;
  rep.variable = "component " + std::to_string(comp);
  rep.t = (t_end > 0) ? t_end : P.t_final;
  for (std::size_t r = 0; r < res.size(); ++r) {
    field1d f = init_problem_1d(P, res[r], cfg.ghost_width());
    advance_to(f, P.bcs1, cfg, rep.t);
    convergence_row row;
    row.n = res[r];
    field_errors(f, P, comp, row.l1, row.l2);
    if (r > 0) {
      const auto& prev = rep.rows.back();
      const real rr = std::log2(real(row.n) / prev.n);
      row.order_l1 = std::log2(prev.l1 / row.l1) / rr;
      row.order_l2 = std::log2(prev.l2 / row.l2) / rr;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

} // namespace rmhd
