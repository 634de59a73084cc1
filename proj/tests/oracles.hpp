//==============================================================================
// oracles.hpp : brute-force reference implementations shared by the suites
//
//  * oracle_forward / oracle_inverse — the mixed Fourier-sine transform as
//    literal direct sums (no FFT), exact up to round-off.  Quadratic cost, so
//    only usable at desk sizes, which is the point: they cross-check the FFT
//    path independently.
//  * oracle_bilinear — the transport form B(f,g) = (perp-grad Lambda^{-1} f
//    . grad) g evaluated by direct convolution of the odd-extended exponential
//    modes.  Cost grows with the square of the number of active modes; callers
//    feed sparse (few-mode) data.
//  * sample_field / lstsq_slope / collect_warnings — small shared helpers.
//==============================================================================
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "sqg/grid.hpp"
#include "sqg/transform.hpp"
#include "sqg/warnings.hpp"

namespace oracles {

using cplx = std::complex<double>;
using std::numbers::pi;

// f(i,j) from a closed-form expression of (x1, x2).
template <class Fn>
sqg::Field sample_field(const sqg::GridSpec& g, Fn&& fn) {
    sqg::Field f(g);
    for (int i = 0; i < g.n1; ++i)
        for (int j = 1; j <= g.n2; ++j) f.at(i, j) = fn(g.x1(i), g.x2(j));
    return f;
}

// c(k,m) = (2 / (n1 (n2+1))) sum_{i,j} f(i,j) e^{-2 pi i k i/n1} sin(pi m j/(n2+1)),
// the projection the FFT path is supposed to realize.
inline sqg::Spectrum oracle_forward(const sqg::Field& f) {
    const sqg::GridSpec& g = f.grid;
    const int N = g.n2 + 1;
    std::vector<cplx> twiddle(static_cast<size_t>(g.n1) * g.n1);
    for (int a = 0; a < g.n1; ++a)
        for (int i = 0; i < g.n1; ++i)
            twiddle[static_cast<size_t>(a) * g.n1 + i] =
                std::polar(1.0, -2.0 * pi * a * i / g.n1);
    std::vector<double> sines(static_cast<size_t>(N + 1) * (N + 1));
    for (int m = 0; m <= N; ++m)
        for (int j = 0; j <= N; ++j)
            sines[static_cast<size_t>(m) * (N + 1) + j] = std::sin(pi * m * j / N);

    sqg::Spectrum s(g);
    const double scale = 2.0 / (static_cast<double>(g.n1) * N);
    for (int a = 0; a < g.n1; ++a) {
        for (int m = 1; m <= g.n2; ++m) {
            cplx acc = 0.0;
            for (int i = 0; i < g.n1; ++i) {
                double row = 0.0;
                for (int j = 1; j <= g.n2; ++j)
                    row += f.at(i, j) * sines[static_cast<size_t>(m) * (N + 1) + j];
                acc += row * twiddle[static_cast<size_t>(a) * g.n1 + i];
            }
            s.coeffs[static_cast<size_t>(a) * g.n2 + (m - 1)] = scale * acc;
        }
    }
    return s;
}

// f(i,j) = Re sum_{a,m} c(a,m) e^{+2 pi i a i/n1} sin(pi m j/(n2+1)).
inline sqg::Field oracle_inverse(const sqg::Spectrum& s) {
    const sqg::GridSpec& g = s.grid;
    const int N = g.n2 + 1;
    std::vector<cplx> twiddle(static_cast<size_t>(g.n1) * g.n1);
    for (int a = 0; a < g.n1; ++a)
        for (int i = 0; i < g.n1; ++i)
            twiddle[static_cast<size_t>(a) * g.n1 + i] =
                std::polar(1.0, 2.0 * pi * a * i / g.n1);
    std::vector<double> sines(static_cast<size_t>(N + 1) * (N + 1));
    for (int m = 0; m <= N; ++m)
        for (int j = 0; j <= N; ++j)
            sines[static_cast<size_t>(m) * (N + 1) + j] = std::sin(pi * m * j / N);

    sqg::Field f(g);
    for (int i = 0; i < g.n1; ++i) {
        for (int j = 1; j <= g.n2; ++j) {
            cplx acc = 0.0;
            for (int a = 0; a < g.n1; ++a)
                for (int m = 1; m <= g.n2; ++m)
                    acc += s.coeffs[static_cast<size_t>(a) * g.n2 + (m - 1)] *
                           twiddle[static_cast<size_t>(a) * g.n1 + i] *
                           sines[static_cast<size_t>(m) * (N + 1) + j];
            f.at(i, j) = acc.real();
        }
    }
    return f;
}

// One exponential mode of the odd extension:  A e^{i xi . x} with
// xi = (2 pi k / L1, pi mt / L2), mt signed.
struct ExpMode {
    int k = 0;
    int mt = 0;
    cplx A;
};

// sin(pi m x2/L2) = (e^{i pi m x2/L2} - e^{-i pi m x2/L2}) / (2i); modes below
// rel_cut of the largest coefficient are dropped (keeps the double sum sparse).
inline std::vector<ExpMode> exp_modes(const sqg::Field& f, double rel_cut = 1e-13) {
    const sqg::Spectrum s = sqg::forward_transform(f);
    double cmax = 0.0;
    for (const cplx& c : s.coeffs) cmax = std::max(cmax, std::abs(c));
    std::vector<ExpMode> modes;
    const cplx half_over_i(0.0, -0.5); // 1/(2i)
    for (int a = 0; a < s.grid.n1; ++a) {
        const int k = s.k_of_row(a);
        for (int m = 1; m <= s.grid.n2; ++m) {
            const cplx c = s.coeffs[static_cast<size_t>(a) * s.grid.n2 + (m - 1)];
            if (std::abs(c) <= rel_cut * cmax) continue;
            modes.push_back({k, m, c * half_over_i});
            modes.push_back({k, -m, -c * half_over_i});
        }
    }
    return modes;
}

// B(f,g) by direct convolution: u(xi') = (-i xi2'/|xi'|, i xi1'/|xi'|) fhat(xi'),
// (grad g)(xi'') = (i xi1'', i xi2'') ghat(xi''), summed over every mode pair and
// evaluated pointwise on the interior grid.
inline sqg::Field oracle_bilinear(const sqg::Field& f, const sqg::Field& g) {
    const sqg::GridSpec& gr = f.grid;
    const std::vector<ExpMode> mf = exp_modes(f);
    const std::vector<ExpMode> mg = exp_modes(g);

    std::vector<ExpMode> prod;
    prod.reserve(mf.size() * mg.size());
    for (const ExpMode& a : mf) {
        const double xi1p = 2.0 * pi * a.k / gr.L1;
        const double xi2p = pi * a.mt / gr.L2;
        const double r = std::hypot(xi1p, xi2p);
        const cplx u1 = cplx(0.0, -xi2p / r) * a.A;
        const cplx u2 = cplx(0.0, xi1p / r) * a.A;
        for (const ExpMode& b : mg) {
            const double xi1pp = 2.0 * pi * b.k / gr.L1;
            const double xi2pp = pi * b.mt / gr.L2;
            const cplx coupling = u1 * cplx(0.0, xi1pp) + u2 * cplx(0.0, xi2pp);
            prod.push_back({a.k + b.k, a.mt + b.mt, coupling * b.A});
        }
    }

    sqg::Field out(gr);
    for (int i = 0; i < gr.n1; ++i) {
        const double x1 = gr.x1(i);
        for (int j = 1; j <= gr.n2; ++j) {
            const double x2 = gr.x2(j);
            cplx acc = 0.0;
            for (const ExpMode& m : prod)
                acc += m.A * std::polar(1.0, 2.0 * pi * m.k * x1 / gr.L1 +
                                                 pi * m.mt * x2 / gr.L2);
            out.at(i, j) = acc.real();
        }
    }
    return out;
}

inline double lstsq_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
    mx /= n; my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return sxy / sxx;
}

// RAII collector for the advisory channel.
struct WarningLog {
    std::vector<std::string> messages;
    sqg::WarningHandler previous;
    WarningLog() {
        previous = sqg::set_warning_handler(
            [this](const std::string& m) { messages.push_back(m); });
    }
    ~WarningLog() { sqg::set_warning_handler(previous); }
    bool any_contains(const std::string& needle) const {
        return std::any_of(messages.begin(), messages.end(), [&](const std::string& m) {
            return m.find(needle) != std::string::npos;
        });
    }
};

inline double max_abs_diff(const sqg::Field& a, const sqg::Field& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

} // namespace oracles
