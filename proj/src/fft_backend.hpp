//==============================================================================
// fft_backend.hpp : FFTW plan cache (internal)
//
// One engine per (n1, n2): DST-I along x2 + complex DFT along x1 for the mixed
// transform, and 2-D r2c/c2r transforms for the doubled periodic grid.  FFTW
// planning is not thread-safe, so plans are created under a global mutex;
// execution uses per-engine scratch buffers under a per-engine mutex.
//==============================================================================
#pragma once

#include <complex>

#include "sqg/grid.hpp"

namespace sqg::detail {

// f: n1*n2 row-major (j fastest) -> coeffs c: n1*n2 (FFT row order, m fastest),
// normalized so f(i,j) = sum_{k,m} c(k,m) e^{2 pi i k i/n1} sin(pi m j/(n2+1)).
void mixed_forward(const GridSpec& g, const double* f, std::complex<double>* c);

// Inverse of mixed_forward; the real part is synthesized.  *imag_residual (if
// non-null) receives max |imaginary part| of the x1-synthesis, the measure of
// a conjugate-symmetry violation.
void mixed_inverse(const GridSpec& g, const std::complex<double>* c, double* f,
                   double* imag_residual);

// Doubled periodic grid (n1 x (2 n2+2), x2 fastest).  Forward is unnormalized
// (plain DFT sums); inverse divides by the point count.
// ghat layout: n1 x (n2+2) r2c half-spectrum, x2-frequency fastest.
void doubled_forward(const GridSpec& g, const double* field, std::complex<double>* ghat);
void doubled_inverse(const GridSpec& g, const std::complex<double>* ghat, double* field);

// Number of complex entries of the r2c half-spectrum.
inline size_t doubled_spectrum_size(const GridSpec& g) {
    return static_cast<size_t>(g.n1) * (g.doubled_n2() / 2 + 1);
}

} // namespace sqg::detail
