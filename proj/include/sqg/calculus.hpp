//==============================================================================
// calculus.hpp : spectral multipliers of the Dirichlet square-root Laplacian
//
// Fractional powers, semigroups, Littlewood-Paley blocks, Besov norms, and the
// perpendicular-gradient velocity map.  Scalar multipliers act coefficientwise
// on the sine-basis spectrum; the velocity map acts on the odd-doubled grid
// with whole-plane multipliers i*xi_perp/|xi|.
//==============================================================================
#pragma once

#include <functional>
#include <utility>

#include "sqg/dyadic.hpp"
#include "sqg/grid.hpp"
#include "sqg/transform.hpp"

namespace sqg {

struct BesovParams {
    double s = 0.0;          // regularity index
    int p = 0;               // integrability: 1, 2, or 0 meaning infinity
    int q = 1;               // shell summability: 1, 2, or 0 meaning infinity
    bool homogeneous = true; // homogeneous norm by default

    static constexpr int kInf = 0;
};

// sigma(lambda(k,m)) applied coefficientwise: forward, multiply, inverse.
// Throws if sigma returns NaN/Inf on any resolved eigenvalue.
Field apply_multiplier(const Field& f, const std::function<double(double)>& sigma);
Spectrum apply_multiplier(const Spectrum& s, const std::function<double(double)>& sigma);

// phi_j block and low-frequency block.  Throws when j lies outside the
// partition range.
Field lp_block(const Field& f, int j, const DyadicPartition& P);
Field low_block(const Field& f, const DyadicPartition& P);

// e^{-t Lambda} (the equation's dissipation semigroup); t >= 0 required.
Field semigroup(const Field& f, double t);
Spectrum semigroup(const Spectrum& s, double t);

// e^{t Laplacian} via sigma(lambda) = exp(-t lambda^2); t >= 0 required.
Field heat_semigroup(const Field& f, double t);

// Lambda^s; every real s is admissible since all eigenvalues are positive.
Field frac_lambda(const Field& f, double s);
Spectrum frac_lambda(const Spectrum& s, double e);

// u = perp-gradient of Lambda^{-1} theta, computed on the odd-doubled grid with
// the whole-plane multiplier and restricted.  u1 is even in x2 (nonzero trace
// allowed), u2 is odd (zero trace).
std::pair<Field, Field> velocity(const Field& theta);

// Grid-quadrature L^p norm over the interior points (p = 1, 2, or BesovParams::kInf).
double lp_norm(const Field& f, int p);

// Besov norm: l^q over shells of 2^{s j} * ||phi_j(Lambda) f||_{L^p}; the
// non-homogeneous variant restricts to j >= 1 and adds ||psi(Lambda) f||_{L^p}.
// Spectral mass in the partition's edge shells above 1e-8 of the total raises
// an advisory (never an error).
double besov_norm(const Field& f, const BesovParams& bp, const DyadicPartition& P);
double besov_norm(const Spectrum& s, const BesovParams& bp, const DyadicPartition& P);

} // namespace sqg
