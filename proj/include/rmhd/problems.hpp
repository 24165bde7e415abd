#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "rmhd/core.hpp"
#include "rmhd/physics.hpp"
#include "rmhd/solver.hpp"

// Canned benchmark problems: domain, EOS, boundary conditions, the
// initial primitive state as a function of position, and (when one
// exists) the exact solution as a function of position and time.

namespace rmhd {

struct problem_spec {
  std::string name;
  int  dim = 1;
  real x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  real t_final = 0;
  gas  eos{};
  bc1d bcs1{};
  bc2d bcs2{};
  std::function<state(real, real)>       init;    // (x, y) -> primitives
  std::function<state(real, real, real)> exact;   // (x, y, t), optional
};

// Circularly polarized wave advecting along x; the classic smooth
// accuracy benchmark. sigma = sqrt(1 + rho h gamma^2) evaluated at the
// wave's constant rho, p, |v|.
inline problem_spec alfven_wave() {
  problem_spec P;
  P.name = "alfven";
  P.dim = 1;
  P.x0 = 0; P.x1 = 1;
  P.t_final = 0.5;
  P.eos = gas{5.0 / 3.0};

  const real rho = 1.0, p = 0.01, amp = 0.2;
  const real h  = P.eos.enthalpy(rho, p);
  const real g2 = 1.0 / (1.0 - amp * amp);
  const real sigma = std::sqrt(1.0 + rho * h * g2);

  P.exact = [=](real x, real /*y*/, real t) {
    const real ph = 2.0 * M_PI * (x + t / sigma);
    state v{};
    v[RHO] = rho;
    v[VX] = 0.0;
    v[VY] = amp * std::sin(ph);
    v[VZ] = amp * std::cos(ph);
    v[BX] = 1.0;
    v[BY] = sigma * v[VY];
    v[BZ] = sigma * v[VZ];
    v[PRE] = p;
    return v;
  };
  P.init = [=, ex = P.exact](real x, real y) { return ex(x, y, 0.0); };
  P.bcs1 = bc1d{bc::periodic, bc::periodic};
  return P;
}

inline real alfven_sigma() {
  const gas eos{5.0 / 3.0};
  return std::sqrt(1.0 + eos.enthalpy(1.0, 0.01) / 0.96);
}

inline problem_spec riemann_problem(int index) {
  state L{}, R{};
  problem_spec P;
  P.dim = 1;
  P.eos = gas{5.0 / 3.0};
  switch (index) {
    case 1:
      L = {1.08, 0.4, 0.3, 0.2, 2.0, 0.3, 0.3, 0.95};
      R = {1.0, -0.45, -0.2, 0.2, 2.0, -0.7, 0.5, 1.0};
      P.x0 = -0.5; P.x1 = 0.5; P.t_final = 0.55;
      break;
    case 2:
      L = {1.0, 0.0, 0.0, 0.0, 5.0, 6.0, 6.0, 30.0};
      R = {1.0, 0.0, 0.0, 0.0, 5.0, 0.7, 0.7, 1.0};
      P.x0 = -0.5; P.x1 = 0.5; P.t_final = 0.4;
      break;
    case 3:
      L = {1.0, 0.0, 0.3, 0.4, 1.0, 6.0, 2.0, 5.0};
      R = {0.9, 0.0, 0.0, 0.0, 1.0, 5.0, 2.0, 5.3};
      P.x0 = -2.0; P.x1 = 2.0; P.t_final = 1.5;
      break;
    default:
      throw std::invalid_argument("riemann_problem: index must be 1, 2 or 3");
  }
  P.name = "riemann" + std::to_string(index);
  P.init = [L, R](real x, real /*y*/) { return x < 0.0 ? L : R; };
  P.bcs1 = bc1d{bc::outflow, bc::outflow};
  return P;
}

// Cylindrical magnetized explosion in a low-density ambient medium.
inline problem_spec blast() {
  problem_spec P;
  P.name = "blast";
  P.dim = 2;
  P.x0 = -6; P.x1 = 6; P.y0 = -6; P.y1 = 6;
  P.t_final = 4.0;
  P.eos = gas{4.0 / 3.0};
  P.init = [](real x, real y) {
    const real r = std::sqrt(x * x + y * y);
    const real rho_in = 1e-2, p_in = 1.0;
    const real rho_out = 1e-4, p_out = 5e-4;
    state v{};
    if (r < 0.8) {
      v[RHO] = rho_in;  v[PRE] = p_in;
    } else if (r > 1.0) {
      v[RHO] = rho_out; v[PRE] = p_out;
    } else {
      const real w = (r - 0.8) / 0.2;
      v[RHO] = rho_in + (rho_out - rho_in) * w;
      v[PRE] = p_in + (p_out - p_in) * w;
    }
    v[BX] = 0.1;
    return v;
  };
  P.bcs2.side = {bc::outflow, bc::outflow, bc::outflow, bc::outflow};
  return P;
}

inline problem_spec orszag_tang() {
  problem_spec P;
  P.name = "orszag_tang";
  P.dim = 2;
  P.x0 = 0; P.x1 = 2 * M_PI; P.y0 = 0; P.y1 = 2 * M_PI;
  P.t_final = 6.8558;
  P.eos = gas{4.0 / 3.0};
  const real A = 0.99 / std::sqrt(2.0);
  P.init = [A](real x, real y) {
    state v{};
    v[RHO] = 1.0;
    v[PRE] = 10.0;
    v[VX] = -A * std::sin(y);
    v[VY] =  A * std::sin(x);
    v[BX] = -std::sin(y);
    v[BY] =  std::sin(2.0 * x);
    return v;
  };
  P.bcs2.side = {bc::periodic, bc::periodic, bc::periodic, bc::periodic};
  return P;
}

// Planar shock overrunning a dense circular cloud; left boundary feeds
// the post-shock state.
inline problem_spec shock_cloud() {
  problem_spec P;
  P.name = "shock_cloud";
  P.dim = 2;
  P.x0 = -0.2; P.x1 = 1.2; P.y0 = 0; P.y1 = 1;
  P.t_final = 1.2;
  P.eos = gas{5.0 / 3.0};
  const state L = {3.86859, 0.68, 0.0, 0.0, 0.0, 0.84981, -0.84981, 1.25115};
  const state R = {1.0, 0.0, 0.0, 0.0, 0.0, 0.16106, 0.16106, 0.05};
  P.init = [L, R](real x, real y) {
    if (x < 0.05) return L;
    const real dx = x - 0.25, dy = y - 0.5;
    if (dx * dx + dy * dy < 0.15 * 0.15) {
      state c = R;
      c[RHO] = 30.0;
      return c;
    }
    return R;
  };
  P.bcs2.side = {bc::inflow, bc::outflow, bc::outflow, bc::outflow};
  P.bcs2.inflow[0] = prim_to_cons(L, P.eos);
  return P;
}

inline problem_spec make_problem(const std::string& name) {
  if (name == "alfven") return alfven_wave();
  if (name == "riemann1") return riemann_problem(1);
  if (name == "riemann2") return riemann_problem(2);
  if (name == "riemann3") return riemann_problem(3);
  if (name == "blast") return blast();
  if (name == "orszag_tang") return orszag_tang();
  if (name == "shock_cloud") return shock_cloud();
  throw std::invalid_argument("unknown problem: " + name);
}

// ------------------------------------------------------- initialization

inline field1d init_problem_1d(const problem_spec& P, int n, int ghosts) {
  if (P.dim != 1) throw std::invalid_argument("init_problem_1d: 2D problem");
  mesh1d m;
  m.n = n; m.x0 = P.x0; m.x1 = P.x1; m.ng = ghosts;
  field1d f(m);
  for (int i = 0; i < n; ++i)
    f.at(i) = prim_to_cons(P.init(m.xc(i), 0.0), P.eos);
  return f;
}

inline field2d init_problem_2d(const problem_spec& P, int nx, int ny,
                               int ghosts) {
  if (P.dim != 2) throw std::invalid_argument("init_problem_2d: 1D problem");
  mesh2d m;
  m.nx = nx; m.ny = ny;
  m.x0 = P.x0; m.x1 = P.x1; m.y0 = P.y0; m.y1 = P.y1;
  m.ng = ghosts;
  field2d f(m);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      f.at(i, j) = prim_to_cons(P.init(m.xc(i), m.yc(j)), P.eos);
  return f;
}

} // namespace rmhd
