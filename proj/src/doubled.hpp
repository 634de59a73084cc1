//==============================================================================
// doubled.hpp : internal full-Fourier workspace on the parity-doubled grid
//
// The solver forms products pointwise on the doubled grid (period L1 x 2*L2)
// and differentiates there.  This header is private to the library; the public
// surface only ever sees Field / Spectrum.
//==============================================================================
#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg::detail {

// Half-spectrum (r2c) coefficients of a real field on the doubled grid.
// Layout: row a in [0, n1) is the x1-frequency bin, column b in [0, H) with
// H = (2 n2 + 2)/2 + 1 is the non-negative x2-frequency bin.
struct DoubledCoeffs {
    GridSpec grid;
    std::vector<std::complex<double>> coeffs;

    explicit DoubledCoeffs(const GridSpec& g)
        : grid(g), coeffs(static_cast<size_t>(g.n1) * (g.doubled_n2() / 2 + 1)) {}

    int half_cols() const { return grid.doubled_n2() / 2 + 1; }

    std::complex<double>& at(int a, int b) {
        return coeffs[static_cast<size_t>(a) * half_cols() + b];
    }
    const std::complex<double>& at(int a, int b) const {
        return coeffs[static_cast<size_t>(a) * half_cols() + b];
    }
};

// Signed x1 wavenumber of bin a (standard FFT wrap-around order).
inline int signed_k(const GridSpec& g, int a) { return (a <= g.n1 / 2) ? a : a - g.n1; }

DoubledCoeffs doubled_transform(const ExtendedField& f);
ExtendedField doubled_synthesis(const DoubledCoeffs& c);

// Continuous frequencies xi1 = 2*pi*k/L1 (signed), xi2 = pi*b/L2.
inline double xi1_of(const GridSpec& g, int a) {
    return 2.0 * std::numbers::pi * signed_k(g, a) / g.L1;
}
inline double xi2_of(const GridSpec& g, int b) {
    return std::numbers::pi * b / g.L2;
}

// Apply fn(xi1, xi2, c) to every retained mode; Nyquist planes in either
// direction are zeroed first so derivative multipliers stay well defined.
void map_modes(DoubledCoeffs& c,
               const std::function<std::complex<double>(double, double, std::complex<double>)>& fn);

// Zero every mode outside the sharp dealias box |k| <= floor(frac*n1/2),
// b <= floor(frac*(n2+1)).
void dealias(DoubledCoeffs& c);

// Largest |value| over the two rows of the extended field lying on the
// Dirichlet lines x2 = 0 and x2 = L2.
double boundary_rows_max(const ExtendedField& f);

// Sharp dealias projection of an interior field in the sine basis: keep
// |k| <= floor(frac*n1/2), m <= floor(frac*(n2+1)).
Field dealias_field(const Field& f);

} // namespace sqg::detail
