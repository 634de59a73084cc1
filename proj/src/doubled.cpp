//==============================================================================
// doubled.cpp : full-Fourier workspace on the parity-doubled grid
//==============================================================================
#include "doubled.hpp"

#include <cmath>

#include "fft_backend.hpp"
#include "sqg/transform.hpp"

namespace sqg::detail {

DoubledCoeffs doubled_transform(const ExtendedField& f) {
    DoubledCoeffs c(f.grid);
    doubled_forward(f.grid, f.values.data(), c.coeffs.data());
    // Normalize so that coefficients are amplitudes of e^{i xi . x}.
    const double scale = 1.0 / (static_cast<double>(f.grid.n1) * f.grid.doubled_n2());
    for (auto& z : c.coeffs) z *= scale;
    return c;
}

ExtendedField doubled_synthesis(const DoubledCoeffs& c) {
    ExtendedField f(c.grid);
    doubled_inverse(c.grid, c.coeffs.data(), f.values.data());
    return f;
}

void map_modes(DoubledCoeffs& c,
               const std::function<std::complex<double>(double, double, std::complex<double>)>& fn) {
    const GridSpec& g = c.grid;
    const int H = c.half_cols();
    for (int a = 0; a < g.n1; ++a) {
        const double xi1 = xi1_of(g, a);
        const bool nyq1 = (a == g.n1 / 2);
        for (int b = 0; b < H; ++b) {
            auto& z = c.at(a, b);
            if (nyq1 || b == H - 1) { // unpaired planes: drop before multiplying
                z = 0.0;
                continue;
            }
            z = fn(xi1, xi2_of(g, b), z);
        }
    }
}

void dealias(DoubledCoeffs& c) {
    const GridSpec& g = c.grid;
    const int kmax = static_cast<int>(std::floor(g.dealias_fraction * (g.n1 / 2)));
    const int bmax = static_cast<int>(std::floor(g.dealias_fraction * (g.n2 + 1)));
    const int H = c.half_cols();
    for (int a = 0; a < g.n1; ++a) {
        const int k = std::abs(signed_k(g, a));
        for (int b = 0; b < H; ++b)
            if (k > kmax || b > bmax) c.at(a, b) = 0.0;
    }
}

Field dealias_field(const Field& f) {
    const GridSpec& g = f.grid;
    const int kmax = static_cast<int>(std::floor(g.dealias_fraction * (g.n1 / 2)));
    const int mmax = static_cast<int>(std::floor(g.dealias_fraction * (g.n2 + 1)));
    Spectrum s = forward_transform(f);
    for (int a = 0; a < g.n1; ++a) {
        const int k = std::abs(s.k_of_row(a));
        for (int m = 1; m <= g.n2; ++m)
            if (k > kmax || m > mmax)
                s.coeffs[static_cast<size_t>(a) * g.n2 + (m - 1)] = 0.0;
    }
    return inverse_transform(s);
}

double boundary_rows_max(const ExtendedField& f) {
    const GridSpec& g = f.grid;
    double m = 0.0;
    for (int i = 0; i < g.n1; ++i) {
        m = std::max(m, std::abs(f.at_row(i, 0)));
        m = std::max(m, std::abs(f.at_row(i, g.n2 + 1)));
    }
    return m;
}

} // namespace sqg::detail
