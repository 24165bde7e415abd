#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

// Core value types shared by every layer of the library.
//
// State vectors are fixed-size arrays of 8 doubles. Conserved order is
// (D, m1, m2, m3, B1, B2, B3, E); primitive order is
// (rho, v1, v2, v3, B1, B2, B3, p). Entropy variables follow the
// conserved layout.

namespace rmhd {

using real = double;

inline constexpr int NCOMP = 8;

using state = std::array<real, NCOMP>;
using vec3  = std::array<real, 3>;

// Component indices, valid for both conserved and primitive vectors.
enum index : int {
  RHO = 0, DD = 0,   // rho (primitive) / D (conserved)
  VX  = 1, MX = 1,
  VY  = 2, MY = 2,
  VZ  = 3, MZ = 3,
  BX  = 4,
  BY  = 5,
  BZ  = 6,
  PRE = 7, EN = 7,   // p (primitive) / E (conserved)
};

inline real dot(const vec3& a, const vec3& b) {
  return a[0]*b[0] + a[1]*b[1] + a[2]*b[2];
}

inline real norm2(const vec3& a) { return dot(a, a); }

inline vec3 velocity(const state& prim) {
  return {prim[VX], prim[VY], prim[VZ]};
}

inline vec3 magnetic(const state& any) {
  return {any[BX], any[BY], any[BZ]};
}

inline state operator+(const state& a, const state& b) {
  state r;
  for (int c = 0; c < NCOMP; ++c) r[c] = a[c] + b[c];
  return r;
}

inline state operator-(const state& a, const state& b) {
  state r;
  for (int c = 0; c < NCOMP; ++c) r[c] = a[c] - b[c];
  return r;
}

inline state operator*(real s, const state& a) {
  state r;
  for (int c = 0; c < NCOMP; ++c) r[c] = s * a[c];
  return r;
}

inline state& operator+=(state& a, const state& b) {
  for (int c = 0; c < NCOMP; ++c) a[c] += b[c];
  return a;
}

inline state& operator-=(state& a, const state& b) {
  for (int c = 0; c < NCOMP; ++c) a[c] -= b[c];
  return a;
}

inline real dot8(const state& a, const state& b) {
  real s = 0;
  for (int c = 0; c < NCOMP; ++c) s += a[c] * b[c];
  return s;
}

// Swap the vector components `0` and `dir` of the v, B (or m, B) blocks.
// Rotational invariance lets every directional formula reuse the
// x-direction one: f_dir(V) = swap(f_x(swap(V))).
inline state swap_axes(const state& s_in, int dir) {
  state s = s_in;
  if (dir != 0) {
    std::swap(s[VX], s[VX + dir]);
    std::swap(s[BX], s[BX + dir]);
  }
  return s;
}

// Thrown when a state leaves the physically admissible set
// (rho > 0, p > 0, |v| < 1) or a root-find fails to certify one.
class recovery_error : public std::runtime_error {
public:
  explicit recovery_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rmhd
