#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmhd/recovery.hpp"
#include "rmhd/solver.hpp"

// Disk formats: 1D fields as CSV (x + 8 conserved + 8 primitive), 2D
// fields as a flat little-endian float64 block with a JSON sidecar
// header, plus two-column text traces.

namespace rmhd {

inline const char* cons_names[NCOMP] = {"D", "m1", "m2", "m3",
                                        "B1", "B2", "B3", "E"};
inline const char* prim_names[NCOMP] = {"rho", "v1", "v2", "v3",
                                        "B1", "B2", "B3", "p"};

inline void write_csv_1d(const std::string& path, const field1d& f,
                         const gas& eos) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "x";
  for (auto* n : cons_names) os << "," << n;
  for (auto* n : prim_names) os << "," << n;
  os << "\n";
  os << std::setprecision(17);
  for (int i = 0; i < f.m.n; ++i) {
    const state& u = f.at(i);
    const state  v = cons_to_prim(u, eos);
    os << f.m.xc(i);
    for (int c = 0; c < NCOMP; ++c) os << "," << u[c];
    for (int c = 0; c < NCOMP; ++c) os << "," << v[c];
    os << "\n";
  }
}

// 2D snapshot: `<stem>.bin` holds 16 planes (8 conserved then 8
// primitive), each ny*nx row-major float64 little-endian; `<stem>.json`
// describes the layout.
inline void write_binary_2d(const std::string& stem, const field2d& f,
                            const gas& eos) {
  static_assert(sizeof(double) == 8);
  const int nx = f.m.nx, ny = f.m.ny;

  std::ofstream hb(stem + ".json");
  if (!hb) throw std::runtime_error("cannot open " + stem + ".json");
  hb << "{\n"
     << "  \"shape\": [" << ny << ", " << nx << "],\n"
     << "  \"order\": \"row-major (y outer, x inner)\",\n"
     << "  \"bounds\": {\"x\": [" << f.m.x0 << ", " << f.m.x1 << "], "
     << "\"y\": [" << f.m.y0 << ", " << f.m.y1 << "]},\n"
     << "  \"time\": " << std::setprecision(17) << f.t << ",\n"
     << "  \"dtype\": \"<f8\",\n"
     << "  \"variables\": [";
  for (int c = 0; c < NCOMP; ++c) hb << "\"" << cons_names[c] << "\", ";
  for (int c = 0; c < NCOMP; ++c)
    hb << "\"" << prim_names[c] << "\"" << (c + 1 < NCOMP ? ", " : "");
  hb << "]\n}\n";

  std::ofstream os(stem + ".bin", std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + stem + ".bin");
  std::vector<double> plane(static_cast<std::size_t>(nx) * ny);
  auto flush_plane = [&] {
    os.write(reinterpret_cast<const char*>(plane.data()),
             static_cast<std::streamsize>(plane.size() * sizeof(double)));
  };
  for (int c = 0; c < NCOMP; ++c) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        plane[static_cast<std::size_t>(j) * nx + i] = f.at(i, j)[c];
    flush_plane();
  }
  for (int c = 0; c < NCOMP; ++c) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        plane[static_cast<std::size_t>(j) * nx + i] =
            cons_to_prim(f.at(i, j), eos)[c];
    flush_plane();
  }
}

// Horizontal CSV slice of a 2D field at row j (defaults to the middle).
inline void write_csv_slice(const std::string& path, const field2d& f,
                            const gas& eos, int j = -1) {
  if (j < 0) j = f.m.ny / 2;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "x";
  for (auto* n : cons_names) os << "," << n;
  for (auto* n : prim_names) os << "," << n;
  os << "\n" << std::setprecision(17);
  for (int i = 0; i < f.m.nx; ++i) {
    const state& u = f.at(i, j);
    const state  v = cons_to_prim(u, eos);
    os << f.m.xc(i);
    for (int c = 0; c < NCOMP; ++c) os << "," << u[c];
    for (int c = 0; c < NCOMP; ++c) os << "," << v[c];
    os << "\n";
  }
}

inline void write_trace(const std::string& path,
                        const std::vector<real>& t,
                        const std::vector<real>& y) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << std::setprecision(17);
  for (std::size_t i = 0; i < t.size() && i < y.size(); ++i)
    os << t[i] << " " << y[i] << "\n";
}

} // namespace rmhd
