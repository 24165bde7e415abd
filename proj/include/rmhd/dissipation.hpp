#pragma once

#include <cmath>

#include "rmhd/core.hpp"
#include "rmhd/ec_flux.hpp"
#include "rmhd/high_order.hpp"
#include "rmhd/jacobians.hpp"
#include "rmhd/linalg.hpp"
#include "rmhd/physics.hpp"
#include "rmhd/reconstruct.hpp"

// Entropy-stable interface fluxes: the high-order entropy-conservative
// flux plus a Rusanov-type dissipation term built from scaled entropy
// variables,
//
//   F^ = F~ - (1/2) R |Lambda| <<omega>>,   omega_j = R^T W_j,
//
// where R R^T = dU/dW at an averaged interface state and <<omega>> is a
// sign-property-respecting reconstructed jump (first-order raw jump, ENO
// interpolation, or switched WENO).

namespace rmhd {

enum class dissipation { none, first_order, eno, weno };

// Componentwise arithmetic mean of two primitive states, re-validated.
// Falls back to VL if the mean is inadmissible (cannot happen for exact
// arithmetic on admissible inputs; guards roundoff pathologies).
inline state interface_state(const state& primL, const state& primR,
                             bool* fell_back = nullptr) {
  state m;
  for (int c = 0; c < NCOMP; ++c) m[c] = 0.5 * (primL[c] + primR[c]);
  if (fell_back) *fell_back = false;
  if (!admissible(m)) {
    if (fell_back) *fell_back = true;
    return primL;
  }
  return m;
}

// Lower-triangular R with R R^T = dU/dW(V).
inline mat8 scaling_factor(const state& prim, const gas& eos) {
  const mat8 duw = jac_dU_dW(prim, eos);
  mat8 sym;
  for (int i = 0; i < NCOMP; ++i)
    for (int j = 0; j < NCOMP; ++j) sym[i][j] = 0.5 * (duw[i][j] + duw[j][i]);
  mat8 R;
  if (!cholesky_lower(sym, R))
    throw std::domain_error("scaling_factor: dU/dW not positive definite "
                            "(state near admissibility boundary)");
  return R;
}

// One interface of the scheme: everything the solver needs at i+1/2.
struct interface_flux {
  state f;          // F^ (or F~ for dissipation::none)
  real  b_avg;      // B^ paired with the Godunov-Powell source
  real  q;          // numerical entropy flux Q^ (if requested)
};

struct es_diagnostics {
  long interface_fallbacks = 0;  // interface_state fell back to VL
};

// Computes the entropy-stable flux at the interface between cells 0 and 1
// of the caller's window. `prim` and `w` point at cell 0's primitive and
// entropy-variable vectors; the window must cover
//   offsets -k+1 .. k          for dissipation::none / first_order,
//   offsets -2k+1 .. 2k        for dissipation::eno,
//   offsets -2 .. 3            for dissipation::weno (with 2k = 6).
// `lambda_hat` is the Rusanov speed bound at this interface.
inline interface_flux es_interface_flux(const state* prim, const state* w,
                                        int k, const gas& eos, int dir,
                                        dissipation mode, real lambda_hat,
                                        bool want_entropy_flux = true,
                                        es_diagnostics* diag = nullptr) {
  interface_flux out;

  auto cell = [&](int off) -> const state& { return prim[off]; };
  const int kk = (mode == dissipation::first_order) ? 1 : k;

  out.f = high_order_interface(kk,
      [&](const state& a, const state& b) { return ec_flux(a, b, dir, eos); },
      cell);
  out.b_avg = high_order_interface(kk,
      [&](const state& a, const state& b) { return b_average(a, b, dir); },
      cell);
  out.q = want_entropy_flux
        ? high_order_interface(kk,
              [&](const state& a, const state& b) {
                return ec_entropy_flux(a, b, dir, eos);
              },
              cell)
        : 0.0;

  if (mode == dissipation::none) return out;

  bool fb = false;
  const state vbar = interface_state(prim[0], prim[1], &fb);
  if (fb && diag) ++diag->interface_fallbacks;
  const mat8 R = scaling_factor(vbar, eos);

  state djump{};  // <<omega>>
  switch (mode) {
    case dissipation::first_order: {
      // raw jump: <<omega>> = R^T (W_R - W_L)
      const state dW = w[1] - w[0];
      djump = matvec_T(R, dW);
      break;
    }
    case dissipation::eno: {
      const int k2 = 2 * k;
      for (int c = 0; c < NCOMP; ++c) {
        real win[4 * MAX_HALF_WIDTH + 2];
        // omega for offsets -(k2-1) .. k2, stored so that win[k2-1] is cell 0
        for (int off = -(k2 - 1); off <= k2; ++off) {
          real s = 0;
          for (int i = 0; i < NCOMP; ++i) s += R[i][c] * w[off][i];
          win[off + k2 - 1] = s;
        }
        real om, op;
        eno_interface_values(win + k2 - 1, k2, om, op);
        djump[c] = op - om;
      }
      break;
    }
    case dissipation::weno: {
      for (int c = 0; c < NCOMP; ++c) {
        real win[6];
        for (int off = -2; off <= 3; ++off) {
          real s = 0;
          for (int i = 0; i < NCOMP; ++i) s += R[i][c] * w[off][i];
          win[off + 2] = s;
        }
        djump[c] = weno5_switched_jump(win + 2);
      }
      break;
    }
    default: break;
  }

  const state rdj = matvec(R, djump);
  for (int c = 0; c < NCOMP; ++c) out.f[c] -= 0.5 * lambda_hat * rdj[c];

  if (want_entropy_flux) {
    real wdj = 0;
    for (int c = 0; c < NCOMP; ++c)
      wdj += 0.5 * (w[0][c] + w[1][c]) * rdj[c];
    out.q -= 0.5 * lambda_hat * wdj;
  }
  return out;
}

// Standalone entropy-flux assembly matching the flux above (exposed for
// property tests): Q^ = Q~ - (1/2) <W>^T R |Lambda| <<omega>>.
inline real es_numerical_entropy_flux(const state& wL, const state& wR,
                                      real q_tilde, const mat8& R,
                                      real lambda_hat, const state& djump) {
  const state rdj = matvec(R, djump);
  real wdj = 0;
  for (int c = 0; c < NCOMP; ++c) wdj += 0.5 * (wL[c] + wR[c]) * rdj[c];
  return q_tilde - 0.5 * lambda_hat * wdj;
}

} // namespace rmhd
