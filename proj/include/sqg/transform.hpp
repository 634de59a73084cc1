//==============================================================================
// transform.hpp : odd/even extensions and the mixed Fourier-sine transform
//
// The transform diagonalizes the Dirichlet square-root Laplacian on the strip:
//     f(x) = sum_{k,m} coeffs(k,m) * exp(2*pi*i*k*x1/L1) * sin(pi*m*x2/L2),
// with k in {-n1/2 .. n1/2-1}, m in {1 .. n2}, and eigenvalues
//     lambda(k,m) = sqrt((2*pi*k/L1)^2 + (pi*m/L2)^2) >= pi/L2 > 0.
//==============================================================================
#pragma once

#include <complex>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

struct Spectrum {
    GridSpec grid;
    std::vector<std::complex<double>> coeffs; // n1 x n2, k-index slow (FFT order), m fast
    bool real_field = true; // coeffs(-k,m) = conj(coeffs(k,m)) expected when set

    Spectrum() = default;
    explicit Spectrum(const GridSpec& g)
        : grid(g), coeffs(static_cast<size_t>(g.n1) * g.n2) {}

    // k in [-n1/2, n1/2); m in [1, n2].  Storage uses the standard FFT wrap
    // (row a holds k = a for a < n1/2, k = a - n1 otherwise).
    std::complex<double>& at(int k, int m) {
        int a = k < 0 ? k + grid.n1 : k;
        return coeffs[static_cast<size_t>(a) * grid.n2 + (m - 1)];
    }
    std::complex<double> at(int k, int m) const {
        int a = k < 0 ? k + grid.n1 : k;
        return coeffs[static_cast<size_t>(a) * grid.n2 + (m - 1)];
    }

    // Signed wavenumber for storage row a in [0, n1).
    int k_of_row(int a) const { return a < grid.n1 / 2 ? a : a - grid.n1; }
};

// lambda(k,m); throws for m < 1.
double eigenvalue(const GridSpec& grid, int k, int m);

// Smallest/largest eigenvalue resolved by the grid.
double lambda_min(const GridSpec& grid);
double lambda_max(const GridSpec& grid);

// Odd reflection across x2 = 0: trace rows are exactly zero.
ExtendedField odd_extend(const Field& f);

// Even reflection; the two trace rows are not determined by mirroring and are
// filled band-limitedly (the two highest cosine modes of each column are
// annihilated), which reproduces constants and cos(pi*x2/L2) exactly.
ExtendedField even_extend(const Field& f);

// Restriction to the interior rows x2 in (0, L2).
Field restrict_field(const ExtendedField& g);

// Mixed transform pair.  forward . inverse = identity to round-off.
Spectrum forward_transform(const Field& f);
Field inverse_transform(const Spectrum& s);

} // namespace sqg
