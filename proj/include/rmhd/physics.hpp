#pragma once

#include <cmath>
#include <algorithm>
#include <stdexcept>

#include "rmhd/core.hpp"

// Pointwise relativistic MHD physics for an ideal-gas EOS:
// conversions, fluxes, the entropy pair and entropy variables, the
// Godunov-Powell source, and wave-speed estimates. Everything here is
// algebraic in a single state; interface formulas live in ec_flux.hpp.

namespace rmhd {

struct gas {
  real gamma = 5.0 / 3.0;   // adiabatic index

  real enthalpy(real rho, real p) const {
    return 1.0 + gamma * p / ((gamma - 1.0) * rho);
  }
  real sound_speed2(real rho, real p) const {
    return gamma * p / (rho * enthalpy(rho, p));
  }
};

inline real lorentz_factor(const vec3& v) {
  const real v2 = norm2(v);
  if (!(v2 < 1.0))
    throw std::domain_error("lorentz_factor: superluminal velocity, |v|^2 = " +
                            std::to_string(v2));
  return 1.0 / std::sqrt(1.0 - v2);
}

inline bool admissible(const state& prim) {
  return prim[RHO] > 0.0 && prim[PRE] > 0.0 && norm2(velocity(prim)) < 1.0;
}

// Magnetic pressure p_m = ((B/gamma)^2 + (v.B)^2) / 2.
inline real magnetic_pressure(const state& prim) {
  const vec3 v = velocity(prim), B = magnetic(prim);
  const real g = lorentz_factor(v);
  return 0.5 * (norm2(B) / (g * g) + dot(v, B) * dot(v, B));
}

inline state prim_to_cons(const state& prim, const gas& eos) {
  if (!admissible(prim))
    throw std::domain_error("prim_to_cons: state violates rho > 0, p > 0 or "
                            "|v| < 1");
  const real rho = prim[RHO], p = prim[PRE];
  const vec3 v = velocity(prim), B = magnetic(prim);
  const real g  = lorentz_factor(v);
  const real h  = eos.enthalpy(rho, p);
  const real vB = dot(v, B);
  const real B2 = norm2(B);
  const real w  = rho * h * g * g;   // rho h gamma^2
  const real pt = p + 0.5 * (B2 / (g * g) + vB * vB);

  state u;
  u[DD] = rho * g;
  for (int i = 0; i < 3; ++i)
    u[MX + i] = (w + B2) * v[i] - vB * B[i];
  u[BX] = B[0]; u[BY] = B[1]; u[BZ] = B[2];
  u[EN] = w - pt + B2;
  return u;
}

// Flux in direction dir (0,1,2) as a function of primitives.
inline state physical_flux(const state& prim, int dir, const gas& eos) {
  const real rho = prim[RHO], p = prim[PRE];
  const vec3 v = velocity(prim), B = magnetic(prim);
  const real g  = lorentz_factor(v);
  const real vB = dot(v, B);
  const real pt = p + magnetic_pressure(prim);
  const state u = prim_to_cons(prim, eos);
  const real vd = v[dir], Bd = B[dir];

  state f;
  f[DD] = u[DD] * vd;
  for (int i = 0; i < 3; ++i)
    f[MX + i] = vd * u[MX + i] - Bd * (B[i] / (g * g) + vB * v[i]);
  f[MX + dir] += pt;
  for (int i = 0; i < 3; ++i)
    f[BX + i] = vd * B[i] - Bd * v[i];
  f[EN] = u[MX + dir];
  return f;
}

// Thermodynamic entropy S = ln(p rho^-Gamma).
inline real thermo_entropy(real rho, real p, const gas& eos) {
  return std::log(p) - eos.gamma * std::log(rho);
}

// Entropy pair: scalar entropy and its flux, (-rho g S / (Gamma-1), E v).
struct entropy_pair_t {
  real  E;
  vec3  Q;
};

inline entropy_pair_t entropy_pair(const state& prim, const gas& eos) {
  const real g = lorentz_factor(velocity(prim));
  const real S = thermo_entropy(prim[RHO], prim[PRE], eos);
  const real E = -prim[RHO] * g * S / (eos.gamma - 1.0);
  return {E, {E * prim[VX], E * prim[VY], E * prim[VZ]}};
}

inline state entropy_vars(const state& prim, const gas& eos) {
  const real rho = prim[RHO], p = prim[PRE];
  const vec3 v = velocity(prim), B = magnetic(prim);
  const real g  = lorentz_factor(v);
  const real S  = thermo_entropy(rho, p, eos);
  const real rg = rho * g / p;
  const real vB = dot(v, B);
  const real v2 = norm2(v);

  state w;
  w[0] = (eos.gamma - S) / (eos.gamma - 1.0) + rho / p;
  for (int i = 0; i < 3; ++i) w[1 + i] = rg * v[i];
  for (int i = 0; i < 3; ++i) w[4 + i] = rg * ((1.0 - v2) * B[i] + vB * v[i]);
  w[7] = -rg;
  return w;
}

// Magnetic entropy potential phi = (rho g / p)(v.B); the scalar that the
// source term contracts to against the entropy variables.
inline real entropy_potential_phi(const state& prim) {
  const vec3 v = velocity(prim), B = magnetic(prim);
  const real g = lorentz_factor(v);
  return prim[RHO] * g / prim[PRE] * dot(v, B);
}

// Flux potential prefactor: psi_i = varphi * v_i with
// varphi = rho g + (rho g / 2p)((1-v^2)B^2 + (v.B)^2).
inline real entropy_potential_varphi(const state& prim) {
  const vec3 v = velocity(prim), B = magnetic(prim);
  const real g  = lorentz_factor(v);
  const real vB = dot(v, B);
  return prim[RHO] * g
       + prim[RHO] * g / (2.0 * prim[PRE]) * ((1.0 - norm2(v)) * norm2(B) + vB * vB);
}

inline real entropy_potential_psi(const state& prim, int dir) {
  return entropy_potential_varphi(prim) * prim[VX + dir];
}

// Godunov-Powell source vector: multiplies the discrete divergence of B.
inline state source_vector(const state& prim) {
  const vec3 v = velocity(prim), B = magnetic(prim);
  const real v2 = norm2(v), vB = dot(v, B);

  state s{};
  for (int i = 0; i < 3; ++i) s[MX + i] = (1.0 - v2) * B[i] + vB * v[i];
  for (int i = 0; i < 3; ++i) s[BX + i] = v[i];
  s[EN] = vB;
  return s;
}

enum class signal_mode { unit, estimate };

// Bound on |characteristic speed| in direction dir. `unit` returns the
// light-speed bound 1 (the robust default); `estimate` evaluates the
// fast-magnetosonic upper bound from the dispersion relation.
inline real max_signal_speed(const state& prim, int dir, const gas& eos,
                             signal_mode mode = signal_mode::unit) {
  if (mode == signal_mode::unit) return 1.0;

  const real rho = prim[RHO], p = prim[PRE];
  const vec3 v = velocity(prim), B = magnetic(prim);
  const real g   = lorentz_factor(v);
  const real h   = eos.enthalpy(rho, p);
  const real cs2 = eos.sound_speed2(rho, p);
  const real b2  = norm2(B) / (g * g) + dot(v, B) * dot(v, B);
  const real ca2 = b2 / (rho * h + b2);
  const real c2  = cs2 + ca2 - cs2 * ca2;

  const real vd = v[dir], v2 = norm2(v);
  const real den  = 1.0 - v2 * c2;
  const real disc = c2 * (1.0 - v2) * (1.0 - v2 * c2 - vd * vd * (1.0 - c2));
  const real root = std::sqrt(std::max(disc, 0.0));
  const real lp = (vd * (1.0 - c2) + root) / den;
  const real lm = (vd * (1.0 - c2) - root) / den;
  return std::max(std::abs(lp), std::abs(lm));
}

} // namespace rmhd
