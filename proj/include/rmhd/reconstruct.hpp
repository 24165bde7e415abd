#pragma once

#include <cmath>

#include "rmhd/core.hpp"

// Scalar interface reconstructions used by the entropy-dissipation
// operator: adaptive-stencil ENO interpolation of even order 2k, and
// fifth-order WENO reconstruction guarded by the sign-property switch.
// Both act on point values of one scaled entropy variable on a uniform
// grid.

namespace rmhd {

// ENO interpolant of order `width` (= number of stencil points) evaluated
// at `x`, measured in cell widths from the starting cell's center. `w`
// points at the starting cell's value; offsets -(width-1) .. +(width-1)
// must be addressable. The stencil grows one cell at a time toward the
// side with the smaller divided-difference magnitude; ties go left.
inline real eno_interpolate(const real* w, int width, real x) {
  int l = 0, r = 0;  // current stencil [l, r] as offsets from the start

  // divided difference over offsets [a, b] (uniform unit spacing)
  auto dd = [&](int a, int b) {
    real tmp[16];
    const int n = b - a + 1;
    for (int i = 0; i < n; ++i) tmp[i] = w[a + i];
    for (int m = 1; m < n; ++m)
      for (int i = 0; i + m < n; ++i)
        tmp[i] = (tmp[i + 1] - tmp[i]) / m;
    return tmp[0];
  };

  for (int m = 1; m < width; ++m) {
    if (std::abs(dd(l - 1, r)) <= std::abs(dd(l, r + 1))) --l;
    else ++r;
  }

  // Evaluate the interpolant on [l, r] at x via the Newton form.
  real coef[16];
  const int n = r - l + 1;
  for (int i = 0; i < n; ++i) coef[i] = w[l + i];
  for (int m = 1; m < n; ++m)
    for (int i = n - 1; i >= m; --i)
      coef[i] = (coef[i] - coef[i - 1]) / m;
  real acc = coef[n - 1];
  for (int m = n - 2; m >= 0; --m)
    acc = coef[m] + (x - (l + m)) * acc;
  return acc;
}

// One-sided ENO interface values of order k2 = 2k at the interface
// between cells 0 and 1 of the caller's window: omega_minus starts its
// stencil at cell 0, omega_plus at cell 1.
inline void eno_interface_values(const real* cell0, int k2,
                                 real& omega_minus, real& omega_plus) {
  omega_minus = eno_interpolate(cell0, k2, 0.5);
  omega_plus  = eno_interpolate(cell0 + 1, k2, -0.5);
}

// Classical fifth-order WENO left-biased interface value from the five
// point values w[-2..2] (w points at the central cell); epsilon = 1e-6,
// smoothness power 2, linear weights (1/10, 6/10, 3/10).
inline real weno5_value(const real* w) {
  const real eps = 1e-6;
  const real q0 = ( 2.0 * w[-2] - 7.0 * w[-1] + 11.0 * w[0]) / 6.0;
  const real q1 = (-1.0 * w[-1] + 5.0 * w[0]  +  2.0 * w[1]) / 6.0;
  const real q2 = ( 2.0 * w[0]  + 5.0 * w[1]  -  1.0 * w[2]) / 6.0;
  auto sq = [](real a) { return a * a; };
  const real b0 = 13.0 / 12.0 * sq(w[-2] - 2.0 * w[-1] + w[0])
                + 0.25 * sq(w[-2] - 4.0 * w[-1] + 3.0 * w[0]);
  const real b1 = 13.0 / 12.0 * sq(w[-1] - 2.0 * w[0] + w[1])
                + 0.25 * sq(w[-1] - w[1]);
  const real b2 = 13.0 / 12.0 * sq(w[0] - 2.0 * w[1] + w[2])
                + 0.25 * sq(3.0 * w[0] - 4.0 * w[1] + w[2]);
  const real a0 = 0.1 / sq(eps + b0);
  const real a1 = 0.6 / sq(eps + b1);
  const real a2 = 0.3 / sq(eps + b2);
  return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2);
}

// Sign switch applied to a reconstructed jump: keep it only when it has
// the same sign as the underlying cell jump, so the result never opposes
// the entropy dissipation direction.
inline real weno_switch(real dj, real cell_jump) {
  return (dj * cell_jump > 0.0) ? dj : 0.0;
}

// Switched fifth-order WENO jump at the interface between cells 0 and 1:
// theta * (omega_plus - omega_minus) with theta = 1 iff the reconstructed
// jump does not oppose the cell jump, else 0.
inline real weno5_switched_jump(const real* cell0) {
  const real wm = weno5_value(cell0);           // uses cells -2..2
  real mirror[5];                               // cells 3..-1 reversed
  for (int i = 0; i < 5; ++i) mirror[i] = cell0[3 - i];
  const real wp = weno5_value(mirror + 2);
  return weno_switch(wp - wm, cell0[1] - cell0[0]);
}

} // namespace rmhd
