#pragma once

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rmhd/core.hpp"
#include "rmhd/dissipation.hpp"
#include "rmhd/physics.hpp"
#include "rmhd/recovery.hpp"

// Mesh/field containers, boundary conditions, semi-discrete RHS assembly
// in 1D and 2D (fluxes plus the Godunov-Powell source with its matched
// magnetic interface average), RK4 stepping with CFL control, and the
// entropy and divergence diagnostics.

namespace rmhd {

// ---------------------------------------------------------------- config

struct scheme_config {
  int         k = 2;                        // EC part has order 2k
  dissipation mode = dissipation::none;     // none labels the scheme EC
  signal_mode wave_speed = signal_mode::unit;
  real        cfl = 0.4;
  gas         eos{};
  // Fixed step law dt = dt_coeff * dx^dt_power overrides CFL when set.
  real        dt_coeff = 0.0;
  real        dt_power = 1.0;
  bool        experimental_k4 = false;      // unlocks k = 4
  int         threads = 1;

  int ghost_width() const { return 3 * k + 1; }

  void validate() const {
    const int kmax = experimental_k4 ? 4 : 3;
    if (k < 1 || k > kmax)
      throw std::invalid_argument("scheme_config: k must be in 1..3 "
                                  "(4 requires the experimental_k4 gate)");
    if (mode == dissipation::weno && k != 3)
      throw std::invalid_argument("scheme_config: WENO dissipation is "
                                  "fifth order and requires k = 3");
    if (!(cfl > 0.0) || cfl > 1.0)
      throw std::invalid_argument("scheme_config: CFL must be in (0,1]");
    if (threads < 1)
      throw std::invalid_argument("scheme_config: threads must be >= 1");
  }
};

// ------------------------------------------------------------ mesh/field

struct mesh1d {
  int  n = 0;
  real x0 = 0, x1 = 1;
  int  ng = 0;

  real dx() const { return (x1 - x0) / n; }
  real xc(int i) const { return x0 + (i + 0.5) * dx(); }
  int  total() const { return n + 2 * ng; }
};

struct field1d {
  mesh1d m;
  real   t = 0;
  std::vector<state> u;   // conserved, including ghosts

  field1d() = default;
  explicit field1d(const mesh1d& mesh) : m(mesh), u(mesh.total()) {}

  state&       at(int i)       { return u[i + m.ng]; }
  const state& at(int i) const { return u[i + m.ng]; }
};

struct mesh2d {
  int  nx = 0, ny = 0;
  real x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  int  ng = 0;

  real dx() const { return (x1 - x0) / nx; }
  real dy() const { return (y1 - y0) / ny; }
  real xc(int i) const { return x0 + (i + 0.5) * dx(); }
  real yc(int j) const { return y0 + (j + 0.5) * dy(); }
  int  stride() const { return nx + 2 * ng; }
  int  total() const { return (nx + 2 * ng) * (ny + 2 * ng); }
};

struct field2d {
  mesh2d m;
  real   t = 0;
  std::vector<state> u;

  field2d() = default;
  explicit field2d(const mesh2d& mesh) : m(mesh), u(mesh.total()) {}

  state&       at(int i, int j)       { return u[(j + m.ng) * m.stride() + (i + m.ng)]; }
  const state& at(int i, int j) const { return u[(j + m.ng) * m.stride() + (i + m.ng)]; }
};

// ------------------------------------------------------------- boundary

enum class bc { periodic, outflow, inflow };

struct bc1d {
  bc left = bc::periodic, right = bc::periodic;
  state inflow_left{}, inflow_right{};   // conserved states for inflow sides
};

// side order: x-lo, x-hi, y-lo, y-hi
struct bc2d {
  std::array<bc, 4> side{bc::periodic, bc::periodic, bc::periodic, bc::periodic};
  std::array<state, 4> inflow{};
};

inline void apply_boundary(field1d& f, const bc1d& b) {
  const int n = f.m.n, ng = f.m.ng;
  for (int g = 1; g <= ng; ++g) {
    switch (b.left) {
      case bc::periodic: f.at(-g) = f.at(n - g); break;
      case bc::outflow:  f.at(-g) = f.at(0); break;
      case bc::inflow:   f.at(-g) = b.inflow_left; break;
    }
    switch (b.right) {
      case bc::periodic: f.at(n - 1 + g) = f.at(g - 1); break;
      case bc::outflow:  f.at(n - 1 + g) = f.at(n - 1); break;
      case bc::inflow:   f.at(n - 1 + g) = b.inflow_right; break;
    }
  }
}

inline void apply_boundary(field2d& f, const bc2d& b) {
  const int nx = f.m.nx, ny = f.m.ny, ng = f.m.ng;
  // x sides first (interior rows), then y sides over the full width so
  // corners pick up a consistent state.
  for (int j = 0; j < ny; ++j)
    for (int g = 1; g <= ng; ++g) {
      switch (b.side[0]) {
        case bc::periodic: f.at(-g, j) = f.at(nx - g, j); break;
        case bc::outflow:  f.at(-g, j) = f.at(0, j); break;
        case bc::inflow:   f.at(-g, j) = b.inflow[0]; break;
      }
      switch (b.side[1]) {
        case bc::periodic: f.at(nx - 1 + g, j) = f.at(g - 1, j); break;
        case bc::outflow:  f.at(nx - 1 + g, j) = f.at(nx - 1, j); break;
        case bc::inflow:   f.at(nx - 1 + g, j) = b.inflow[1]; break;
      }
    }
  for (int i = -ng; i < nx + ng; ++i)
    for (int g = 1; g <= ng; ++g) {
      switch (b.side[2]) {
        case bc::periodic: f.at(i, -g) = f.at(i, ny - g); break;
        case bc::outflow:  f.at(i, -g) = f.at(i, 0); break;
        case bc::inflow:   f.at(i, -g) = b.inflow[2]; break;
      }
      switch (b.side[3]) {
        case bc::periodic: f.at(i, ny - 1 + g) = f.at(i, g - 1); break;
        case bc::outflow:  f.at(i, ny - 1 + g) = f.at(i, ny - 1); break;
        case bc::inflow:   f.at(i, ny - 1 + g) = b.inflow[3]; break;
      }
    }
}

// ------------------------------------------------------------- parallel

namespace detail {

// Chunked parallel-for; writes must be disjoint per index. Serial when
// nthreads == 1 so single-threaded runs stay bit-identical trivially.
template <class F>
void parallel_for(int begin, int end, int nthreads, const F& body) {
  const int n = end - begin;
  if (nthreads <= 1 || n < 2 * nthreads) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  std::exception_ptr err;
  std::mutex err_mx;
  const int chunk = (n + nthreads - 1) / nthreads;
  for (int tnum = 0; tnum < nthreads; ++tnum) {
    const int lo = begin + tnum * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (int i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mx);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

} // namespace detail

// ----------------------------------------------------------- rhs assembly

// Per-pencil workspace reused across rows/columns of a sweep.
struct pencil {
  std::vector<state> prim, w;
  std::vector<real>  lam;                  // per-cell signal bound
  std::vector<interface_flux> iface;       // n+1 interfaces
};

namespace detail {

inline void prep_cell(pencil& P, int idx, const state& u,
                      const scheme_config& cfg, int dir) {
  P.prim[idx] = cons_to_prim(u, cfg.eos);
  P.w[idx]    = entropy_vars(P.prim[idx], cfg.eos);
  P.lam[idx]  = (cfg.wave_speed == signal_mode::estimate)
              ? max_signal_speed(P.prim[idx], dir, cfg.eos, cfg.wave_speed)
              : 1.0;
}

} // namespace detail

// Result of one RHS evaluation. Entropy fluxes are stored when requested
// so the entropy budget can be assembled against the same discrete
// operator that produced dudt.
struct rhs1d_result {
  std::vector<state> dudt;       // n
  std::vector<real>  qhat;       // n+1 interface entropy fluxes
  std::vector<real>  source_b;   // n+1 interface magnetic averages
  es_diagnostics diag;
};

inline void rhs_1d(const field1d& f, const scheme_config& cfg,
                   rhs1d_result& out, bool want_q = false) {
  const int n = f.m.n, ng = f.m.ng;
  const real dx = f.m.dx();
  if (ng < cfg.ghost_width())
    throw std::invalid_argument("rhs_1d: ghost width too small for scheme");

  pencil P;
  P.prim.resize(f.m.total());
  P.w.resize(f.m.total());
  P.lam.resize(f.m.total());
  P.iface.resize(n + 1);

  try {
    detail::parallel_for(0, f.m.total(), cfg.threads, [&](int i) {
      detail::prep_cell(P, i, f.u[i], cfg, 0);
    });
  } catch (const recovery_error& e) {
    throw recovery_error(std::string(e.what()) + " [rhs_1d, t=" +
                         std::to_string(f.t) + "]");
  }

  out.diag = es_diagnostics{};
  detail::parallel_for(0, n + 1, cfg.threads, [&](int j) {
    const int c = ng + j - 1;
    real lam = 1.0;
    if (cfg.wave_speed == signal_mode::estimate)
      lam = std::max(P.lam[c], P.lam[c + 1]);
    P.iface[j] = es_interface_flux(P.prim.data() + c, P.w.data() + c, cfg.k,
                                   cfg.eos, 0, cfg.mode, lam, want_q,
                                   &out.diag);
  });

  out.dudt.resize(n);
  out.qhat.assign(n + 1, 0.0);
  out.source_b.assign(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    out.qhat[j]     = P.iface[j].q;
    out.source_b[j] = P.iface[j].b_avg;
  }
  detail::parallel_for(0, n, cfg.threads, [&](int i) {
    const state& fl = P.iface[i].f;
    const state& fr = P.iface[i + 1].f;
    const state  s  = source_vector(P.prim[ng + i]);
    const real   db = (P.iface[i + 1].b_avg - P.iface[i].b_avg) / dx;
    for (int c = 0; c < NCOMP; ++c)
      out.dudt[i][c] = -(fr[c] - fl[c]) / dx - s[c] * db;
  });
}

struct rhs2d_result {
  std::vector<state> dudt;       // nx*ny row-major
  std::vector<real>  qhat_x;     // (nx+1)*ny, index j*(nx+1)+i
  std::vector<real>  qhat_y;     // nx*(ny+1), index j*nx+i
  es_diagnostics diag;
};

inline void rhs_2d(const field2d& f, const scheme_config& cfg,
                   rhs2d_result& out, bool want_q = false) {
  const int nx = f.m.nx, ny = f.m.ny, ng = f.m.ng;
  const real dx = f.m.dx(), dy = f.m.dy();
  const int stride = f.m.stride();
  if (ng < cfg.ghost_width())
    throw std::invalid_argument("rhs_2d: ghost width too small for scheme");

  // Primitives and entropy variables over the full ghosted block.
  std::vector<state> prim(f.m.total()), w(f.m.total());
  std::vector<real>  lamx, lamy;
  const bool est = (cfg.wave_speed == signal_mode::estimate);
  if (est) { lamx.resize(f.m.total()); lamy.resize(f.m.total()); }

  try {
    detail::parallel_for(0, f.m.total(), cfg.threads, [&](int idx) {
      prim[idx] = cons_to_prim(f.u[idx], cfg.eos);
      w[idx]    = entropy_vars(prim[idx], cfg.eos);
      if (est) {
        lamx[idx] = max_signal_speed(prim[idx], 0, cfg.eos, cfg.wave_speed);
        lamy[idx] = max_signal_speed(prim[idx], 1, cfg.eos, cfg.wave_speed);
      }
    });
  } catch (const recovery_error& e) {
    throw recovery_error(std::string(e.what()) + " [rhs_2d, t=" +
                         std::to_string(f.t) + "]");
  }

  out.dudt.assign(static_cast<std::size_t>(nx) * ny, state{});
  out.qhat_x.assign(static_cast<std::size_t>(nx + 1) * ny, 0.0);
  out.qhat_y.assign(static_cast<std::size_t>(nx) * (ny + 1), 0.0);
  out.diag = es_diagnostics{};

  // x sweep: rows are contiguous in memory.
  std::vector<es_diagnostics> row_diag(ny);
  detail::parallel_for(0, ny, cfg.threads, [&](int j) {
    const int row = (j + ng) * stride;
    std::vector<interface_flux> iface(nx + 1);
    for (int i = 0; i <= nx; ++i) {
      const int c = row + ng + i - 1;
      const real lam = est ? std::max(lamx[c], lamx[c + 1]) : 1.0;
      iface[i] = es_interface_flux(prim.data() + c, w.data() + c, cfg.k,
                                   cfg.eos, 0, cfg.mode, lam, want_q,
                                   &row_diag[j]);
      out.qhat_x[static_cast<std::size_t>(j) * (nx + 1) + i] = iface[i].q;
    }
    for (int i = 0; i < nx; ++i) {
      const state s = source_vector(prim[row + ng + i]);
      const real db = (iface[i + 1].b_avg - iface[i].b_avg) / dx;
      state& d = out.dudt[static_cast<std::size_t>(j) * nx + i];
      for (int c = 0; c < NCOMP; ++c)
        d[c] = -(iface[i + 1].f[c] - iface[i].f[c]) / dx - s[c] * db;
    }
  });

  // y sweep: gather each column into a contiguous pencil.
  std::vector<es_diagnostics> col_diag(nx);
  detail::parallel_for(0, nx, cfg.threads, [&](int i) {
    std::vector<state> cp(ny + 2 * ng), cw(ny + 2 * ng);
    std::vector<real>  cl(est ? ny + 2 * ng : 0);
    for (int j = 0; j < ny + 2 * ng; ++j) {
      const int idx = j * stride + (i + ng);
      cp[j] = prim[idx];
      cw[j] = w[idx];
      if (est) cl[j] = lamy[idx];
    }
    std::vector<interface_flux> iface(ny + 1);
    for (int j = 0; j <= ny; ++j) {
      const int c = ng + j - 1;
      const real lam = est ? std::max(cl[c], cl[c + 1]) : 1.0;
      iface[j] = es_interface_flux(cp.data() + c, cw.data() + c, cfg.k,
                                   cfg.eos, 1, cfg.mode, lam, want_q,
                                   &col_diag[i]);
      out.qhat_y[static_cast<std::size_t>(j) * nx + i] = iface[j].q;
    }
    for (int j = 0; j < ny; ++j) {
      const state s = source_vector(cp[ng + j]);
      const real db = (iface[j + 1].b_avg - iface[j].b_avg) / dy;
      state& d = out.dudt[static_cast<std::size_t>(j) * nx + i];
      for (int c = 0; c < NCOMP; ++c)
        d[c] += -(iface[j + 1].f[c] - iface[j].f[c]) / dy - s[c] * db;
    }
  });

  for (const auto& d : row_diag) out.diag.interface_fallbacks += d.interface_fallbacks;
  for (const auto& d : col_diag) out.diag.interface_fallbacks += d.interface_fallbacks;
}

// --------------------------------------------------------- time stepping

inline real cfl_dt_1d(const field1d& f, const scheme_config& cfg) {
  const real dx = f.m.dx();
  if (cfg.dt_coeff > 0.0) return cfg.dt_coeff * std::pow(dx, cfg.dt_power);
  real lam = 1.0;
  if (cfg.wave_speed == signal_mode::estimate) {
    lam = 0.0;
    for (int i = 0; i < f.m.n; ++i) {
      const state p = cons_to_prim(f.at(i), cfg.eos);
      lam = std::max(lam, max_signal_speed(p, 0, cfg.eos, cfg.wave_speed));
    }
  }
  return cfg.cfl / (lam / dx);
}

inline real cfl_dt_2d(const field2d& f, const scheme_config& cfg) {
  const real dx = f.m.dx(), dy = f.m.dy();
  if (cfg.dt_coeff > 0.0)
    return cfg.dt_coeff * std::pow(std::min(dx, dy), cfg.dt_power);
  real lx = 1.0, ly = 1.0;
  if (cfg.wave_speed == signal_mode::estimate) {
    lx = ly = 0.0;
    for (int j = 0; j < f.m.ny; ++j)
      for (int i = 0; i < f.m.nx; ++i) {
        const state p = cons_to_prim(f.at(i, j), cfg.eos);
        lx = std::max(lx, max_signal_speed(p, 0, cfg.eos, cfg.wave_speed));
        ly = std::max(ly, max_signal_speed(p, 1, cfg.eos, cfg.wave_speed));
      }
  }
  return cfg.cfl / (lx / dx + ly / dy);
}

// Classical RK4. Ghosts are refreshed before every stage; any recovery
// failure propagates and leaves the caller's field untouched.
inline void rk4_step(field1d& f, real dt, const scheme_config& cfg,
                     const bc1d& bcs) {
  const int n = f.m.n;
  field1d stage = f;
  rhs1d_result k1, k2, k3, k4;

  apply_boundary(stage, bcs);
  rhs_1d(stage, cfg, k1);
  for (int i = 0; i < n; ++i) stage.at(i) = f.at(i) + 0.5 * dt * k1.dudt[i];
  stage.t = f.t + 0.5 * dt;
  apply_boundary(stage, bcs);
  rhs_1d(stage, cfg, k2);
  for (int i = 0; i < n; ++i) stage.at(i) = f.at(i) + 0.5 * dt * k2.dudt[i];
  apply_boundary(stage, bcs);
  rhs_1d(stage, cfg, k3);
  for (int i = 0; i < n; ++i) stage.at(i) = f.at(i) + dt * k3.dudt[i];
  stage.t = f.t + dt;
  apply_boundary(stage, bcs);
  rhs_1d(stage, cfg, k4);

  for (int i = 0; i < n; ++i) {
    state u = f.at(i);
    for (int c = 0; c < NCOMP; ++c)
      u[c] += dt / 6.0 * (k1.dudt[i][c] + 2.0 * k2.dudt[i][c] +
                          2.0 * k3.dudt[i][c] + k4.dudt[i][c]);
    stage.at(i) = u;
  }
  // The combined state can lose admissibility even when every stage kept it;
  // reject the step with f untouched so a caller's dt retry starts clean.
  try {
    detail::parallel_for(0, n, cfg.threads,
                         [&](int i) { cons_to_prim(stage.at(i), cfg.eos); });
  } catch (const recovery_error& e) {
    throw recovery_error(std::string(e.what()) + " [rk4 update, t=" +
                         std::to_string(f.t + dt) + "]");
  }
  for (int i = 0; i < n; ++i) f.at(i) = stage.at(i);
  f.t += dt;
}

inline void rk4_step(field2d& f, real dt, const scheme_config& cfg,
                     const bc2d& bcs) {
  const int nx = f.m.nx, ny = f.m.ny;
  field2d stage = f;
  rhs2d_result k1, k2, k3, k4;
  auto cell = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };

  apply_boundary(stage, bcs);
  rhs_2d(stage, cfg, k1);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      stage.at(i, j) = f.at(i, j) + 0.5 * dt * k1.dudt[cell(i, j)];
  stage.t = f.t + 0.5 * dt;
  apply_boundary(stage, bcs);
  rhs_2d(stage, cfg, k2);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      stage.at(i, j) = f.at(i, j) + 0.5 * dt * k2.dudt[cell(i, j)];
  apply_boundary(stage, bcs);
  rhs_2d(stage, cfg, k3);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      stage.at(i, j) = f.at(i, j) + dt * k3.dudt[cell(i, j)];
  stage.t = f.t + dt;
  apply_boundary(stage, bcs);
  rhs_2d(stage, cfg, k4);

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      state u = f.at(i, j);
      const auto c0 = cell(i, j);
      for (int c = 0; c < NCOMP; ++c)
        u[c] += dt / 6.0 * (k1.dudt[c0][c] + 2.0 * k2.dudt[c0][c] +
                            2.0 * k3.dudt[c0][c] + k4.dudt[c0][c]);
      stage.at(i, j) = u;
    }
  // Same transactional commit as the 1D step: validate, then overwrite.
  try {
    detail::parallel_for(0, nx * ny, cfg.threads, [&](int idx) {
      cons_to_prim(stage.at(idx % nx, idx / nx), cfg.eos);
    });
  } catch (const recovery_error& e) {
    throw recovery_error(std::string(e.what()) + " [rk4 update, t=" +
                         std::to_string(f.t + dt) + "]");
  }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) f.at(i, j) = stage.at(i, j);
  f.t += dt;
}

// ----------------------------------------------------------- diagnostics

struct entropy_budget_t {
  real total = 0;                 // sum of E * cell volume
  real max_abs_residual = 0;      // EC equality check
  real max_pos_residual = 0;      // ES inequality check (signed)
  std::vector<real> residual;     // per cell
  std::vector<real> scale;        // local magnitude for relative tests
};

inline entropy_budget_t entropy_budget(const field1d& f,
                                       const rhs1d_result& rhs,
                                       const scheme_config& cfg) {
  const int n = f.m.n;
  const real dx = f.m.dx();
  entropy_budget_t b;
  b.residual.resize(n);
  b.scale.resize(n);
  b.max_pos_residual = -std::numeric_limits<real>::infinity();
  for (int i = 0; i < n; ++i) {
    const state prim = cons_to_prim(f.at(i), cfg.eos);
    const state w = entropy_vars(prim, cfg.eos);
    b.total += entropy_pair(prim, cfg.eos).E * dx;
    real wd = 0, wmag = 0;
    for (int c = 0; c < NCOMP; ++c) {
      wd   += w[c] * rhs.dudt[i][c];
      wmag += std::abs(w[c] * rhs.dudt[i][c]);
    }
    const real dq = (rhs.qhat[i + 1] - rhs.qhat[i]) / dx;
    b.residual[i] = wd + dq;
    b.scale[i] = wmag + (std::abs(rhs.qhat[i + 1]) + std::abs(rhs.qhat[i])) / dx;
    b.max_abs_residual = std::max(b.max_abs_residual, std::abs(b.residual[i]));
    b.max_pos_residual = std::max(b.max_pos_residual, b.residual[i]);
  }
  return b;
}

inline entropy_budget_t entropy_budget(const field2d& f,
                                       const rhs2d_result& rhs,
                                       const scheme_config& cfg) {
  const int nx = f.m.nx, ny = f.m.ny;
  const real dx = f.m.dx(), dy = f.m.dy();
  entropy_budget_t b;
  b.residual.resize(static_cast<std::size_t>(nx) * ny);
  b.scale.resize(b.residual.size());
  b.max_pos_residual = -std::numeric_limits<real>::infinity();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::size_t c0 = static_cast<std::size_t>(j) * nx + i;
      const state prim = cons_to_prim(f.at(i, j), cfg.eos);
      const state w = entropy_vars(prim, cfg.eos);
      b.total += entropy_pair(prim, cfg.eos).E * dx * dy;
      real wd = 0, wmag = 0;
      for (int c = 0; c < NCOMP; ++c) {
        wd   += w[c] * rhs.dudt[c0][c];
        wmag += std::abs(w[c] * rhs.dudt[c0][c]);
      }
      const real qxl = rhs.qhat_x[static_cast<std::size_t>(j) * (nx + 1) + i];
      const real qxr = rhs.qhat_x[static_cast<std::size_t>(j) * (nx + 1) + i + 1];
      const real qyl = rhs.qhat_y[static_cast<std::size_t>(j) * nx + i];
      const real qyr = rhs.qhat_y[static_cast<std::size_t>(j + 1) * nx + i];
      b.residual[c0] = wd + (qxr - qxl) / dx + (qyr - qyl) / dy;
      b.scale[c0] = wmag + (std::abs(qxr) + std::abs(qxl)) / dx
                         + (std::abs(qyr) + std::abs(qyl)) / dy;
      b.max_abs_residual = std::max(b.max_abs_residual, std::abs(b.residual[c0]));
      b.max_pos_residual = std::max(b.max_pos_residual, b.residual[c0]);
    }
  return b;
}

// Total entropy of a field (midpoint quadrature), without an RHS.
inline real total_entropy(const field1d& f, const gas& eos) {
  real s = 0;
  for (int i = 0; i < f.m.n; ++i)
    s += entropy_pair(cons_to_prim(f.at(i), eos), eos).E * f.m.dx();
  return s;
}

inline real total_entropy(const field2d& f, const gas& eos) {
  real s = 0;
  for (int j = 0; j < f.m.ny; ++j)
    for (int i = 0; i < f.m.nx; ++i)
      s += entropy_pair(cons_to_prim(f.at(i, j), eos), eos).E * f.m.dx() * f.m.dy();
  return s;
}

struct divergence_norms {
  real max = 0, l1 = 0;
};

// Central-difference divergence of B (diagnostic; needs filled ghosts).
inline divergence_norms divergence_norm(const field2d& f) {
  const real dx = f.m.dx(), dy = f.m.dy();
  divergence_norms d;
  for (int j = 0; j < f.m.ny; ++j)
    for (int i = 0; i < f.m.nx; ++i) {
      const real div = (f.at(i + 1, j)[BX] - f.at(i - 1, j)[BX]) / (2 * dx)
                     + (f.at(i, j + 1)[BY] - f.at(i, j - 1)[BY]) / (2 * dy);
      d.max = std::max(d.max, std::abs(div));
      d.l1 += std::abs(div) * dx * dy;
    }
  return d;
}

} // namespace rmhd
