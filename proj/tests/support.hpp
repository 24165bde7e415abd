#pragma once

#include <cmath>
#include <random>

#include "rmhd/rmhd.hpp"

// Shared helpers for the test suites: deterministic random admissible
// states, smooth randomized fields that stay comfortably inside the
// admissible set, and a few frozen reference values computed with an
// independent high-precision implementation of the same formulas.

namespace testing {

using rmhd::real;
using rmhd::state;
using rmhd::NCOMP;

using rng_t = std::mt19937_64;

inline real uniform(rng_t& g, real a, real b) {
  return std::uniform_real_distribution<real>(a, b)(g);
}

// Moderate-range admissible primitive state: the workhorse generator for
// property sweeps (identities, Jacobians, flux conditions).
inline state random_prim(rng_t& g) {
  state v{};
  v[rmhd::RHO] = std::exp(uniform(g, std::log(0.1), std::log(10.0)));
  v[rmhd::PRE] = std::exp(uniform(g, std::log(0.05), std::log(10.0)));
  const real vmag = uniform(g, 0.0, 0.9);
  real n[3] = {uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1)};
  const real nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]) + 1e-300;
  for (int i = 0; i < 3; ++i) v[rmhd::VX + i] = vmag * n[i] / nn;
  for (int i = 0; i < 3; ++i) v[rmhd::BX + i] = uniform(g, -3.0, 3.0);
  return v;
}

// Wide-range generator covering the advertised admissible envelope:
// rho, p in [1e-4, 1e3], |v| <= 0.999, |B| <= 1e3.
inline state random_prim_wide(rng_t& g) {
  state v{};
  v[rmhd::RHO] = std::pow(10.0, uniform(g, -4.0, 3.0));
  v[rmhd::PRE] = std::pow(10.0, uniform(g, -4.0, 3.0));
  const real vmag = uniform(g, 0.0, 0.999);
  real n[3] = {uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1)};
  real nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]) + 1e-300;
  for (int i = 0; i < 3; ++i) v[rmhd::VX + i] = vmag * n[i] / nn;
  const real bmag = std::pow(10.0, uniform(g, -3.0, 3.0));
  real m[3] = {uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1)};
  nn = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) + 1e-300;
  for (int i = 0; i < 3; ++i) v[rmhd::BX + i] = bmag * m[i] / nn;
  return v;
}

// Smooth randomized primitive profile: a positive base state plus a few
// low Fourier modes with random phases, scaled so the state never comes
// close to the admissibility boundary. Periodic on [0,1] (or [0,1]^2).
struct smooth_profile {
  struct mode { real amp, kx, ky, phase; };
  std::array<std::vector<mode>, NCOMP> modes;

  static smooth_profile random(rng_t& g, int dim) {
    smooth_profile p;
    for (int c = 0; c < NCOMP; ++c) {
      const int nm = 2;
      for (int m = 0; m < nm; ++m) {
        mode md;
        md.amp = uniform(g, -1.0, 1.0);
        md.kx = 1 + (g() % 3);
        md.ky = (dim == 2) ? real(g() % 3) : 0.0;
        md.phase = uniform(g, 0.0, 2 * M_PI);
        p.modes[c].push_back(md);
      }
    }
    return p;
  }

  state operator()(real x, real y) const {
    auto wave = [&](int c) {
      real s = 0;
      for (const auto& m : modes[c])
        s += m.amp * std::sin(2 * M_PI * (m.kx * x + m.ky * y) + m.phase);
      return s / real(modes[c].size());
    };
    state v{};
    v[rmhd::RHO] = 1.0 + 0.3 * wave(rmhd::RHO);
    v[rmhd::PRE] = 1.0 + 0.3 * wave(rmhd::PRE);
    for (int i = 0; i < 3; ++i) v[rmhd::VX + i] = 0.25 * wave(rmhd::VX + i);
    v[rmhd::BX] = 1.0 + 0.5 * wave(rmhd::BX);
    v[rmhd::BY] = 0.5 + 0.5 * wave(rmhd::BY);
    v[rmhd::BZ] = 0.5 * wave(rmhd::BZ);
    return v;
  }
};

inline rmhd::field1d random_field_1d(rng_t& g, int n, int ghosts,
                                     const rmhd::gas& eos) {
  const auto prof = smooth_profile::random(g, 1);
  rmhd::mesh1d m;
  m.n = n; m.x0 = 0; m.x1 = 1; m.ng = ghosts;
  rmhd::field1d f(m);
  for (int i = 0; i < n; ++i)
    f.at(i) = rmhd::prim_to_cons(prof(m.xc(i), 0.0), eos);
  rmhd::apply_boundary(f, rmhd::bc1d{});
  return f;
}

inline rmhd::field2d random_field_2d(rng_t& g, int n, int ghosts,
                                     const rmhd::gas& eos) {
  const auto prof = smooth_profile::random(g, 2);
  rmhd::mesh2d m;
  m.nx = m.ny = n; m.ng = ghosts;
  rmhd::field2d f(m);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      f.at(i, j) = rmhd::prim_to_cons(prof(m.xc(i), m.yc(j)), eos);
  rmhd::apply_boundary(f, rmhd::bc2d{});
  return f;
}

// Fourth-order central difference of a scalar function of one variable.
template <class F>
real central4(const F& f, real x, real h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline real rel_err(real a, real b) {
  return std::abs(a - b) / std::max<real>(1.0, std::abs(b));
}

// Reference values computed with an independent high-precision
// implementation (mpmath at 50 digits) of the same closed formulas.
namespace frozen {

// The fixed probe state: (rho, v, B, p) = (1.08, (0.4,0.3,0.2), (2,0.3,0.3), 0.95).
inline const state probe = {1.08, 0.4, 0.3, 0.2, 2.0, 0.3, 0.3, 0.95};

inline const state probe_cons = {
    1.281724190849362,  1.7184788732394367, 2.4288591549295773,
    1.5242394366197183, 2.0,                0.3,
    0.3,                6.161047183098592};

inline const state probe_w = {
    3.906184649684805,    0.5396733435155209, 0.4047550076366406,
    0.26983667175776044,  2.4285300458198438, 0.6718933126768234,
    0.5437208935918872,  -1.349183358788802};

inline const state probe_flux_x = {
    0.5126896763397448,  -0.02745845070422526, -0.02445633802816904,
    -0.19630422535211256, 0.0,                 -0.48,
    -0.28,                1.7184788732394367};

inline const state probe_flux_y = {
    0.38451725725480856, -0.02445633802816893, 3.4644077464788725,
    0.3363718309859155,   0.48,                0.0,
    0.03,                 2.4288591549295773};

inline constexpr real probe_phi     = 1.281724190849362;
inline constexpr real probe_varphi  = 3.892596367609512;
inline constexpr real probe_psi_x   = 1.5570385470438048;
inline constexpr real probe_psi_y   = 1.1677789102828535;
inline constexpr real probe_entropy = 0.34522285481014364;
inline constexpr real probe_signal_x = 0.9297132956845626;

// EC flux between the two initial states of the first Riemann setup.
inline const state rp1_ec_flux_x = {
    -0.02938657709336847, -0.8769716033379376,  0.3910031181328985,
    -0.7100182428845824,   0.06974768469496892, -0.13448266733608166,
    -0.5269781316585587,   0.13109108864737362};

inline constexpr real rp1_entropy_flux_x = 0.0006451585997624965;

inline constexpr real alfven_sigma = 1.4379528272281163;
inline constexpr real log_mean_tiny = 1.0000000000005;     // log_mean(1, 1+1e-12)
inline constexpr real rest_sound = 0.6900655593423543;      // sqrt((5/3)/3.5)

}  // namespace frozen

}  // namespace testing
