//==============================================================================
// transform.cpp : grids, parity extensions, mixed Fourier-sine transform
//==============================================================================
#include "sqg/transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft_backend.hpp"
#include "sqg/warnings.hpp"

namespace sqg {

//------------------------------------------------------------------ GridSpec --

void GridSpec::validate() const {
    if (n1 <= 0 || n1 % 2 != 0)
        throw std::invalid_argument("GridSpec: n1 must be a positive even integer");
    if (n2 <= 0) throw std::invalid_argument("GridSpec: n2 must be positive");
    if (!(L1 > 0.0) || !(L2 > 0.0))
        throw std::invalid_argument("GridSpec: L1 and L2 must be positive");
    if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
        throw std::invalid_argument("GridSpec: dealias_fraction must lie in (0, 1]");
}

void Field::validate() const {
    grid.validate();
    if (values.size() != static_cast<size_t>(grid.n1) * grid.n2)
        throw std::invalid_argument("Field: payload size disagrees with grid");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("Field: non-finite entry");
}

double linf_norm(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

//---------------------------------------------------------------- eigenvalue --

double eigenvalue(const GridSpec& grid, int k, int m) {
    if (m < 1) throw std::invalid_argument("eigenvalue: sine index m must be >= 1");
    const double a = 2.0 * std::numbers::pi * k / grid.L1;
    const double b = std::numbers::pi * m / grid.L2;
    return std::sqrt(a * a + b * b);
}

double lambda_min(const GridSpec& grid) { return std::numbers::pi / grid.L2; }

double lambda_max(const GridSpec& grid) {
    const double a = 2.0 * std::numbers::pi * (grid.n1 / 2) / grid.L1;
    const double b = std::numbers::pi * grid.n2 / grid.L2;
    return std::sqrt(a * a + b * b);
}

//---------------------------------------------------------------- extensions --

ExtendedField odd_extend(const Field& f) {
    f.validate();
    const GridSpec& g = f.grid;
    ExtendedField out(g);
    const int N = g.n2 + 1;
    for (int i = 0; i < g.n1; ++i) {
        out.at_row(i, 0) = 0.0;
        out.at_row(i, N) = 0.0;
        for (int j = 1; j <= g.n2; ++j) {
            const double v = f.at(i, j);
            out.at_row(i, j) = v;
            out.at_row(i, 2 * N - j) = -v;
        }
    }
    return out;
}

ExtendedField even_extend(const Field& f) {
    f.validate();
    const GridSpec& g = f.grid;
    ExtendedField out(g);
    const int N = g.n2 + 1;
    const double pi_over_N = std::numbers::pi / N;
    for (int i = 0; i < g.n1; ++i) {
        // Mirroring leaves the rows x2 = 0 and x2 = L2 free; pick them so the
        // two highest cosine modes of the doubled column vanish (band-limited
        // fill).  With sgn = (-1)^N the constraints read
        //   a + sgn b = -2 S_N,  a - sgn b = -2 S_{N-1},
        // where S_t = sum_j f(j) cos(pi t j / N).
        double S_top = 0.0, S_next = 0.0;
        for (int j = 1; j <= g.n2; ++j) {
            const double v = f.at(i, j);
            S_top += (j % 2 == 0 ? v : -v);
            S_next += v * std::cos(pi_over_N * (N - 1) * j);
        }
        const double sgn = (N % 2 == 0) ? 1.0 : -1.0;
        out.at_row(i, 0) = -(S_top + S_next);
        out.at_row(i, N) = -sgn * (S_top - S_next);
        for (int j = 1; j <= g.n2; ++j) {
            const double v = f.at(i, j);
            out.at_row(i, j) = v;
            out.at_row(i, 2 * N - j) = v;
        }
    }
    return out;
}

Field restrict_field(const ExtendedField& g) {
    Field out(g.grid);
    for (int i = 0; i < g.grid.n1; ++i)
        for (int j = 1; j <= g.grid.n2; ++j)
            out.at(i, j) = g.at_row(i, j);
    return out;
}

//----------------------------------------------------------------- transform --

Spectrum forward_transform(const Field& f) {
    f.validate();
    Spectrum s(f.grid);
    detail::mixed_forward(f.grid, f.values.data(), s.coeffs.data());
    s.real_field = true;
    return s;
}

Field inverse_transform(const Spectrum& s) {
    s.grid.validate();
    if (s.coeffs.size() != static_cast<size_t>(s.grid.n1) * s.grid.n2)
        throw std::invalid_argument("inverse_transform: coefficient size disagrees with grid");
    Field f(s.grid);
    double resid = 0.0;
    detail::mixed_inverse(s.grid, s.coeffs.data(), f.values.data(), &resid);
    double scale = 0.0;
    for (const auto& c : s.coeffs) scale = std::max(scale, std::abs(c));
    if (!s.real_field)
        warn("inverse_transform: reality flag unset; real part taken");
    else if (resid > 1e-10 * std::max(scale, 1e-300))
        warn("inverse_transform: conjugate symmetry violated (residual " +
             std::to_string(resid) + "); real part taken");
    return f;
}

} // namespace sqg
