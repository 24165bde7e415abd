#pragma once

#include "rmhd/core.hpp"
#include "rmhd/linalg.hpp"
#include "rmhd/physics.hpp"

// Analytic Jacobians between the conserved (U), primitive (V) and entropy
// (W) variable sets. dU/dW = (dU/dV)(dW/dV)^-1 is symmetric positive
// definite on the admissible set; its Cholesky factor is the dissipation
// scaling matrix.

namespace rmhd {

inline mat8 jac_dU_dV(const state& prim, const gas& eos) {
  const real rho = prim[RHO], p = prim[PRE];
  const vec3 v = velocity(prim), B = magnetic(prim);
  const real g   = lorentz_factor(v);
  const real g2  = g * g;
  const real vB  = dot(v, B);
  const real B2  = norm2(B);
  const real v2  = norm2(v);
  const real kap = rho + eos.gamma * p / (eos.gamma - 1.0);  // rho h
  const real Gf  = eos.gamma / (eos.gamma - 1.0);

  mat8 J{};
  // D = rho gamma
  J[DD][RHO] = g;
  for (int j = 0; j < 3; ++j) J[DD][VX + j] = rho * g * g2 * v[j];

  // m_i = (kap g^2 + B^2) v_i - (v.B) B_i
  for (int i = 0; i < 3; ++i) {
    J[MX + i][RHO] = g2 * v[i];
    J[MX + i][PRE] = Gf * g2 * v[i];
    for (int j = 0; j < 3; ++j) {
      real d = 2.0 * kap * g2 * g2 * v[i] * v[j] - B[i] * B[j];
      if (i == j) d += kap * g2 + B2;
      J[MX + i][VX + j] = d;
      real db = 2.0 * B[j] * v[i] - v[j] * B[i];
      if (i == j) db -= vB;
      J[MX + i][BX + j] = db;
    }
  }

  for (int i = 0; i < 3; ++i) J[BX + i][BX + i] = 1.0;

  // E = kap g^2 - p + B^2 (1 + v^2)/2 - (v.B)^2/2
  J[EN][RHO] = g2;
  J[EN][PRE] = Gf * g2 - 1.0;
  for (int j = 0; j < 3; ++j) {
    J[EN][VX + j] = 2.0 * kap * g2 * g2 * v[j] + B2 * v[j] - vB * B[j];
    J[EN][BX + j] = B[j] * (1.0 + v2) - vB * v[j];
  }
  return J;
}

inline mat8 jac_dW_dV(const state& prim, const gas& eos) {
  const real rho = prim[RHO], p = prim[PRE];
  const vec3 v = velocity(prim), B = magnetic(prim);
  const real g  = lorentz_factor(v);
  const real g3 = g * g * g;
  const real vB = dot(v, B);
  const real v2 = norm2(v);

  mat8 J{};
  // W0 = (Gamma - S)/(Gamma-1) + rho/p
  J[0][RHO] = eos.gamma / ((eos.gamma - 1.0) * rho) + 1.0 / p;
  J[0][PRE] = -1.0 / ((eos.gamma - 1.0) * p) - rho / (p * p);

  // W_{1+i} = (rho g / p) v_i
  for (int i = 0; i < 3; ++i) {
    J[1 + i][RHO] = g * v[i] / p;
    J[1 + i][PRE] = -rho * g * v[i] / (p * p);
    for (int j = 0; j < 3; ++j) {
      real d = rho / p * g3 * v[j] * v[i];
      if (i == j) d += rho / p * g;
      J[1 + i][VX + j] = d;
    }
  }

  // W_{4+i} = (rho g / p) A_i,  A_i = (1 - v^2) B_i + (v.B) v_i
  for (int i = 0; i < 3; ++i) {
    const real A = (1.0 - v2) * B[i] + vB * v[i];
    J[4 + i][RHO] = g / p * A;
    J[4 + i][PRE] = -rho * g / (p * p) * A;
    for (int j = 0; j < 3; ++j) {
      real d = rho / p * (g3 * v[j] * A + g * (-2.0 * v[j] * B[i] + B[j] * v[i]));
      if (i == j) d += rho / p * g * vB;
      J[4 + i][VX + j] = d;
      real db = rho * g / p * v[j] * v[i];
      if (i == j) db += rho * g / p * (1.0 - v2);
      J[4 + i][BX + j] = db;
    }
  }

  // W7 = -rho g / p
  J[7][RHO] = -g / p;
  J[7][PRE] = rho * g / (p * p);
  for (int j = 0; j < 3; ++j) J[7][VX + j] = -rho * g3 * v[j] / p;
  return J;
}

inline mat8 jac_dV_dW(const state& prim, const gas& eos) {
  return inverse(jac_dW_dV(prim, eos));
}

inline mat8 jac_dU_dW(const state& prim, const gas& eos) {
  return matmul(jac_dU_dV(prim, eos), jac_dV_dW(prim, eos));
}

} // namespace rmhd
