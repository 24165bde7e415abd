#pragma once

#include <cmath>
#include <limits>
#include <sstream>

#include "rmhd/core.hpp"
#include "rmhd/physics.hpp"

// Conservative-to-primitive recovery.
//
// The scalar unknown is a = rho h gamma^2. Given a, the velocity follows
// from the momentum equation,
//
//   v = (m + (s/a) B) / (a + B^2),        s = m.B,
//
// so |v|^2(a) = (|m|^2 a^2 + s^2 (2a + B^2)) / (a^2 (a + B^2)^2), and the
// gas pressure is determined twice: once by the EOS through D,
//
//   p_eos(a) = (Gamma-1)/Gamma * (a / gamma^2 - D / gamma),
//
// and once by the energy equation,
//
//   p_en(a)  = a - E + B^2 (1 + |v|^2)/2 - s^2 / (2 a^2).
//
// The root of f(a) = p_eos(a) - p_en(a) is found by Newton iteration with
// an analytic derivative, safeguarded by bisection on any sign-change
// bracket discovered along the way. No floors are applied: if the
// converged state is not admissible, recovery throws.

namespace rmhd {

struct recovery_stats {
  int  iterations = 0;
  int  bisections = 0;
  real residual   = 0.0;
};

namespace detail {

struct recovery_fn {
  real D, E, m2, B2, s;  // s = m.B
  real gm1_over_g;       // (Gamma-1)/Gamma

  // |v|^2 and its derivative with respect to a.
  void v2_of(real a, real& v2, real& dv2) const {
    const real ab  = a + B2;
    const real num = m2 * a * a + s * s * (2.0 * a + B2);
    const real den = a * a * ab * ab;
    v2 = num / den;
    const real dnum = 2.0 * m2 * a + 2.0 * s * s;
    const real dden = 2.0 * a * ab * (2.0 * a + B2);
    dv2 = (dnum * den - num * dden) / (den * den);
  }

  bool evaluable(real a) const {
    if (!(a > 0.0)) return false;
    real v2, dv2;
    v2_of(a, v2, dv2);
    return v2 < 1.0;
  }

  void eval(real a, real& f, real& df) const {
    real v2, dv2;
    v2_of(a, v2, dv2);
    const real ig2 = 1.0 - v2;            // 1/gamma^2
    const real ig  = std::sqrt(ig2);      // 1/gamma
    const real p_eos  = gm1_over_g * (a * ig2 - D * ig);
    const real dp_eos = gm1_over_g * (ig2 - a * dv2 + 0.5 * D * dv2 / ig);
    const real p_en   = a - E + 0.5 * B2 * (1.0 + v2) - 0.5 * s * s / (a * a);
    const real dp_en  = 1.0 + 0.5 * B2 * dv2 + s * s / (a * a * a);
    f  = p_eos - p_en;
    df = dp_eos - dp_en;
  }
};

} // namespace detail

inline state cons_to_prim(const state& u, const gas& eos,
                          recovery_stats* stats = nullptr,
                          real tol = 1e-12, int max_iter = 200) {
  const real D = u[DD], E = u[EN];
  const vec3 m{u[MX], u[MY], u[MZ]};
  const vec3 B = magnetic(u);

  detail::recovery_fn fn;
  fn.D = D;
  fn.E = E;
  fn.m2 = norm2(m);
  fn.B2 = norm2(B);
  fn.s  = dot(m, B);
  fn.gm1_over_g = (eos.gamma - 1.0) / eos.gamma;

  auto fail = [&](const char* why, real a, int it, real res) {
    std::ostringstream os;
    os << "cons_to_prim failed: " << why
       << " (D=" << D << ", E=" << E << ", |m|^2=" << fn.m2
       << ", |B|^2=" << fn.B2 << ", m.B=" << fn.s
       << ", a=" << a << ", iters=" << it << ", residual=" << res << ")";
    throw recovery_error(os.str());
  };

  if (!(D > 0.0) || !std::isfinite(D) || !std::isfinite(E))
    fail("nonpositive or non-finite input", 0.0, 0, 0.0);

  // Initial guess: a >= max(D, E - B^2) since p_tot >= 0 and h gamma >= 1.
  real a = std::max(D, E - fn.B2) * (1.0 + 1e-10) + 1e-300;
  int grow = 0;
  while (!fn.evaluable(a) && grow++ < 200) a *= 1.5;
  if (!fn.evaluable(a)) fail("no evaluable starting point", a, 0, 0.0);

  real lo = 0.0, hi = std::numeric_limits<real>::infinity();  // observed bracket
  real f = 0.0, df = 0.0;
  int it = 0, nbis = 0;
  for (; it < max_iter; ++it) {
    fn.eval(a, f, df);
    if (!std::isfinite(f)) fail("non-finite residual", a, it, f);
    if (f > 0.0) lo = std::max(lo, a);
    else if (f < 0.0) hi = std::min(hi, a);
    else break;  // exact root

    real a_next = (df != 0.0) ? a - f / df
                              : std::numeric_limits<real>::quiet_NaN();
    const bool inside = std::isfinite(a_next) && a_next > lo && a_next < hi &&
                        fn.evaluable(a_next);
    if (!inside) {
      ++nbis;
      if (std::isfinite(hi) && lo > 0.0) a_next = 0.5 * (lo + hi);
      else if (f > 0.0) a_next = (std::isfinite(hi)) ? 0.5 * (a + hi) : 2.0 * a;
      else a_next = (lo > 0.0) ? 0.5 * (lo + a) : 0.5 * a;
      if (!fn.evaluable(a_next)) {
        // squeeze toward the current (evaluable) iterate
        int tries = 0;
        while (!fn.evaluable(a_next) && tries++ < 100)
          a_next = 0.5 * (a_next + a);
        if (!fn.evaluable(a_next)) fail("bracket collapse", a, it, f);
      }
    }
    const real step = std::abs(a_next - a);
    a = a_next;
    if (step <= tol * (1.0 + std::abs(a))) {
      ++it;
      break;
    }
  }
  fn.eval(a, f, df);
  if (stats) {
    stats->iterations = it;
    stats->bisections = nbis;
    stats->residual   = f;
  }
  const real scale = std::abs(E) + fn.B2 + D + a;
  if (std::abs(f) > 1e-8 * scale) fail("not converged", a, it, f);

  // Assemble primitives.
  real v2, dv2;
  fn.v2_of(a, v2, dv2);
  if (!(v2 < 1.0)) fail("superluminal velocity", a, it, f);
  const real ig  = std::sqrt(1.0 - v2);
  const real rho = D * ig;
  const real p   = fn.gm1_over_g * (a * (1.0 - v2) - D * ig);
  if (!(rho > 0.0) || !(p > 0.0)) fail("nonpositive density or pressure", a, it, f);

  state prim;
  prim[RHO] = rho;
  for (int i = 0; i < 3; ++i)
    prim[VX + i] = (m[i] + (fn.s / a) * B[i]) / (a + fn.B2);
  prim[BX] = B[0]; prim[BY] = B[1]; prim[BZ] = B[2];
  prim[PRE] = p;
  return prim;
}

} // namespace rmhd
