#pragma once

#include <array>
#include <stdexcept>

#include "rmhd/core.hpp"

// High-order extension of two-point interface functions on uniform grids.
// A 2k-th order interface value at i+1/2 is the linear combination
//
//   G_{i+1/2} = sum_{r=1}^{k} alpha_{k,r} sum_{s=0}^{r-1} g(U_{i-s}, U_{i-s+r})
//
// whose coefficients satisfy sum_r r alpha_r = 1 (consistency) and
// sum_r r^{2s-1} alpha_r = 0 for s = 2..k (order conditions). The same
// combination applies verbatim to the flux, the magnetic interface
// average, and the numerical entropy flux, so it is exposed as a generic
// stencil driver over a two-point callable.

namespace rmhd {

inline constexpr int MAX_HALF_WIDTH = 4;   // largest supported k

// alpha_{k,r}, r = 1..k, for k = 1..4 (exact rationals).
inline std::array<real, MAX_HALF_WIDTH> combination_coeffs(int k) {
  switch (k) {
    case 1: return {1.0, 0.0, 0.0, 0.0};
    case 2: return {4.0 / 3.0, -1.0 / 6.0, 0.0, 0.0};
    case 3: return {3.0 / 2.0, -3.0 / 10.0, 1.0 / 30.0, 0.0};
    case 4: return {8.0 / 5.0, -2.0 / 5.0, 8.0 / 105.0, -1.0 / 140.0};
    default:
      throw std::invalid_argument("combination_coeffs: k must be in 1..4");
  }
}

// Evaluate the 2k-th order combination at one interface. `cell` maps a
// signed offset to the cell state: cell(0) is the cell left of the
// interface, cell(1) right of it; offsets -k+1 .. k are touched.
template <class G, class Cell>
auto high_order_interface(int k, const G& g, const Cell& cell)
    -> decltype(g(cell(0), cell(1))) {
  const auto alpha = combination_coeffs(k);
  auto acc = g(cell(0), cell(1));
  using T = decltype(acc);
  auto scale = [](T& v, real s) {
    if constexpr (std::is_same_v<T, real>) v *= s;
    else for (auto& c : v) c *= s;
  };
  auto axpy = [](T& v, real s, const T& w) {
    if constexpr (std::is_same_v<T, real>) v += s * w;
    else for (std::size_t c = 0; c < v.size(); ++c) v[c] += s * w[c];
  };
  scale(acc, alpha[0]);
  for (int r = 2; r <= k; ++r) {
    if (alpha[r - 1] == 0.0) continue;
    for (int s = 0; s < r; ++s) {
      const auto gi = g(cell(-s), cell(-s + r));
      axpy(acc, alpha[r - 1], gi);
    }
  }
  return acc;
}

} // namespace rmhd
