//==============================================================================
// presets.hpp : initial-data library
//
// All presets are trace-compatible (vanish at x2 = 0 and x2 = L2) and are
// dealiased on construction.
//==============================================================================
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "sqg/grid.hpp"

namespace sqg {

// amplitude * cos(2 pi k x1/L1) * sin(pi m x2/L2); k may be 0.
Field preset_single_mode(const GridSpec& grid, int k, int m, double amplitude);

// amplitude * (sin(2 pi x1/L1) sin(pi x2/L2) + sin(2 pi x2/L2)) — the standard
// two-mode interaction datum (on L1 = 2 pi, L2 = pi this is
// sin(x1) sin(x2) + sin(2 x2)).
Field preset_two_mode(const GridSpec& grid, double amplitude);

// Smooth compactly supported bump whose support touches the x2 = 0 region,
// multiplied by an x2-vanishing factor to respect the Dirichlet trace.
// Support: |x1 - x0| < 2*width (periodically), 0 < x2 < 2*width.
// Throws when the support overflows the strip (2*width > L2).
Field preset_boundary_bump(const GridSpec& grid, double x0, double width,
                           double amplitude);

// Smooth bump supported strictly inside the strip, centered at
// (L1/2, L2/2) with half-widths (L1/4, L2/4).
Field preset_interior_bump(const GridSpec& grid, double amplitude);

// Random-phase field spectrally supported on eigenvalues lambda in
// [2^j_lo, 2^j_hi], normalized per dyadic group so every shell contributes a
// comparable sup-norm, then scaled to ||f||_inf = amplitude.  Deterministic in
// (grid, j_lo, j_hi, seed).
Field preset_random_band(const GridSpec& grid, int j_lo, int j_hi,
                         double amplitude, std::uint64_t seed);

// Factory used by the CLI: name in {single_mode, two_mode, boundary_bump,
// interior_bump, random_band}, parameters from the params map (missing entries
// take documented defaults).  Throws on unknown names or out-of-range params.
Field make_preset(const GridSpec& grid, const std::string& name,
                  const std::map<std::string, double>& params, std::uint64_t seed);

} // namespace sqg
