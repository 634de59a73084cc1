//==============================================================================
// grid.hpp : strip discretization and sampled fields
//
// The half-plane is truncated to a periodic strip [0,L1) x [0,L2] with
// homogeneous Dirichlet conditions at x2 = 0 and x2 = L2.  Only the n2 interior
// rows are stored; the two trace rows are implicit zeros.  The doubled grid
// (n1 x (2*n2+2), covering x2 in (-L2, L2] periodically) carries odd/even
// extensions, on which whole-plane Fourier multipliers act.
//==============================================================================
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sqg {

struct GridSpec {
    int n1 = 64;                      // sample count in x1 (positive, even)
    int n2 = 63;                      // interior sample count in x2 (positive)
    double L1 = 6.283185307179586477; // period in x1
    double L2 = 3.141592653589793238; // strip height
    double dealias_fraction = 2.0 / 3.0; // sharp-cutoff fraction of Nyquist, in (0,1]

    // Throws std::invalid_argument when any invariant is violated.
    void validate() const;

    double dx1() const { return L1 / n1; }
    double dx2() const { return L2 / (n2 + 1); }
    double x1(int i) const { return i * dx1(); }
    double x2(int j) const { return j * dx2(); } // j = 1..n2 are interior rows

    int doubled_n2() const { return 2 * n2 + 2; } // rows of the doubled grid

    bool operator==(const GridSpec& o) const {
        return n1 == o.n1 && n2 == o.n2 && L1 == o.L1 && L2 == o.L2 &&
               dealias_fraction == o.dealias_fraction;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

//------------------------------------------------------------------------------
// Field : real samples on the interior grid, row-major (i, j) with j fastest.
//------------------------------------------------------------------------------
struct Field {
    GridSpec grid;
    std::vector<double> values; // size n1*n2
    bool dirichlet = true;      // records intent: odd extension is continuous

    Field() = default;
    explicit Field(const GridSpec& g, double fill = 0.0)
        : grid(g), values(static_cast<size_t>(g.n1) * g.n2, fill) {}

    double& at(int i, int j) { return values[static_cast<size_t>(i) * grid.n2 + (j - 1)]; }
    double at(int i, int j) const { return values[static_cast<size_t>(i) * grid.n2 + (j - 1)]; }

    // Throws when the payload size disagrees with the grid or entries are not finite.
    void validate() const;
};

//------------------------------------------------------------------------------
// ExtendedField : real samples on the doubled grid.  Storage row q in
// [0, 2n2+2) holds x2 = q*dx2 for q <= n2+1 and x2 = (q - (2n2+2))*dx2 above,
// i.e. the usual periodic wrap-around layout.  Signed-row access is provided
// for the parity invariants: values(i,-j') = -/+ values(i,j').
//------------------------------------------------------------------------------
struct ExtendedField {
    GridSpec grid;
    std::vector<double> values; // size n1*(2n2+2)

    ExtendedField() = default;
    explicit ExtendedField(const GridSpec& g, double fill = 0.0)
        : grid(g), values(static_cast<size_t>(g.n1) * g.doubled_n2(), fill) {}

    int rows() const { return grid.doubled_n2(); }

    double& at_row(int i, int q) { return values[static_cast<size_t>(i) * rows() + q]; }
    double at_row(int i, int q) const { return values[static_cast<size_t>(i) * rows() + q]; }

    // j_signed in [-n2, n2+1]; maps to storage modulo the doubled period.
    double at_signed(int i, int j_signed) const {
        int q = j_signed < 0 ? j_signed + rows() : j_signed;
        return at_row(i, q);
    }
};

// Largest |value| over the interior grid (grid L-infinity norm).
double linf_norm(const Field& f);

} // namespace sqg
