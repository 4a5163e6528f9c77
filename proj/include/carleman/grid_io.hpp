#pragma once

#include <filesystem>

#include "carleman/spectral.hpp"
#include "carleman/weights.hpp"

namespace carleman {

// Two on-disk layouts share one header (n, L, N):
//
// CSV:    "# n=<n> L=<L> N=<N>" then "index,value" (real) or "index,re,im"
//         (complex) rows, one per cell in row-major order.
// Binary: 8-byte magic "CRLGRID1", u32 n, u32 N, f64 L, u32 kind (0 real,
//         1 complex), u32 reserved, then little-endian f64 values (re, im
//         interleaved for complex data).
//
// The format is picked from the file extension: ".csv" is CSV, anything else binary.

enum class GridFormat { csv, binary };
GridFormat format_for(const std::filesystem::path& path);

void save_grid_weight(const GridWeight& w, const std::filesystem::path& path);
GridWeight load_grid_weight(const std::filesystem::path& path);

/// Spatial grid functions on a midpoint box grid only.
void save_grid_function(const GridFunction& f, const std::filesystem::path& path);
GridFunction load_grid_function(const std::filesystem::path& path);

}  // namespace carleman
