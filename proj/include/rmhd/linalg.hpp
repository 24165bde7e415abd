#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "rmhd/core.hpp"

// Dense 8x8 helpers for the entropy-variable Jacobians and the
// dissipation scaling factor. The sizes are fixed and tiny, so plain
// loops beat any external dependency.

namespace rmhd {

using mat8 = std::array<std::array<real, NCOMP>, NCOMP>;

inline mat8 mat8_zero() {
  mat8 m{};
  return m;
}

inline mat8 mat8_identity() {
  mat8 m{};
  for (int i = 0; i < NCOMP; ++i) m[i][i] = 1.0;
  return m;
}

inline mat8 matmul(const mat8& a, const mat8& b) {
  mat8 c{};
  for (int i = 0; i < NCOMP; ++i)
    for (int k = 0; k < NCOMP; ++k) {
      const real aik = a[i][k];
      for (int j = 0; j < NCOMP; ++j) c[i][j] += aik * b[k][j];
    }
  return c;
}

inline state matvec(const mat8& a, const state& x) {
  state y{};
  for (int i = 0; i < NCOMP; ++i)
    for (int j = 0; j < NCOMP; ++j) y[i] += a[i][j] * x[j];
  return y;
}

inline state matvec_T(const mat8& a, const state& x) {
  state y{};
  for (int j = 0; j < NCOMP; ++j)
    for (int i = 0; i < NCOMP; ++i) y[j] += a[i][j] * x[i];
  return y;
}

inline mat8 transpose(const mat8& a) {
  mat8 t;
  for (int i = 0; i < NCOMP; ++i)
    for (int j = 0; j < NCOMP; ++j) t[i][j] = a[j][i];
  return t;
}

// LU factorization with partial pivoting, in place; perm holds row order.
// Returns false on (numerical) singularity.
inline bool lu_factor(mat8& a, std::array<int, NCOMP>& perm) {
  for (int i = 0; i < NCOMP; ++i) perm[i] = i;
  for (int c = 0; c < NCOMP; ++c) {
    int piv = c;
    for (int r = c + 1; r < NCOMP; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return false;
    std::swap(a[c], a[piv]);
    std::swap(perm[c], perm[piv]);
    for (int r = c + 1; r < NCOMP; ++r) {
      a[r][c] /= a[c][c];
      const real f = a[r][c];
      for (int j = c + 1; j < NCOMP; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return true;
}

inline state lu_solve(const mat8& lu, const std::array<int, NCOMP>& perm,
                      const state& b) {
  state x;
  for (int i = 0; i < NCOMP; ++i) x[i] = b[perm[i]];
  for (int i = 1; i < NCOMP; ++i)
    for (int j = 0; j < i; ++j) x[i] -= lu[i][j] * x[j];
  for (int i = NCOMP - 1; i >= 0; --i) {
    for (int j = i + 1; j < NCOMP; ++j) x[i] -= lu[i][j] * x[j];
    x[i] /= lu[i][i];
  }
  return x;
}

inline mat8 inverse(const mat8& a) {
  mat8 lu = a;
  std::array<int, NCOMP> perm;
  if (!lu_factor(lu, perm))
    throw std::runtime_error("inverse: singular 8x8 matrix");
  mat8 inv;
  for (int j = 0; j < NCOMP; ++j) {
    state e{};
    e[j] = 1.0;
    const state col = lu_solve(lu, perm, e);
    for (int i = 0; i < NCOMP; ++i) inv[i][j] = col[i];
  }
  return inv;
}

// Lower-triangular Cholesky factor of a symmetric positive definite
// matrix: a = L L^T. Returns false if a pivot is nonpositive.
inline bool cholesky_lower(const mat8& a, mat8& L) {
  L = mat8_zero();
  for (int i = 0; i < NCOMP; ++i) {
    for (int j = 0; j <= i; ++j) {
      real s = a[i][j];
      for (int p = 0; p < j; ++p) s -= L[i][p] * L[j][p];
      if (i == j) {
        if (s <= 0.0) return false;
        L[i][i] = std::sqrt(s);
      } else {
        L[i][j] = s / L[j][j];
      }
    }
  }
  return true;
}

} // namespace rmhd
