//==============================================================================
// dyadic.hpp : smooth dyadic partition of unity on (0, infinity)
//
// phi0(lambda) = h(lambda) / sum_j h(lambda / 2^j) with
// h(lambda) = exp(-1/(1 - log2(lambda)^2)) on |log2 lambda| < 1, else 0.
// The normalization makes sum_j phi_j(lambda) = 1 an algebraic identity for
// every lambda > 0 (the denominator is 1-periodic in log2 lambda), so the
// partition identity holds to round-off, not just asymptotically.
//==============================================================================
#pragma once

#include <vector>

namespace sqg {

struct DyadicPartition {
    int j_min = 0; // lowest shell index
    int j_max = 0; // highest shell index

    // Smooth bump profile: supp phi0 = (1/2, 2), phi0 >= 0.
    double phi0(double lambda) const;

    // Shell j: phi_j(lambda) = phi0(lambda / 2^j).
    double phi(int j, double lambda) const;

    // Low-frequency cutoff: psi = 1 - sum_{j>=1} phi_j; supp psi = [0, 2],
    // psi(lambda) = 1 for lambda <= 1.
    double psi(double lambda) const;

    // Shell indices [j_min, j_max].
    std::vector<int> shells() const;
};

// Throws unless j_min < j_max.
DyadicPartition make_partition(int j_min, int j_max);

// Partition whose shells cover every eigenvalue the grid resolves (one spare
// shell on each side, so no resolved lambda sits on the range boundary).
struct GridSpec;
DyadicPartition default_partition(const GridSpec& grid);

} // namespace sqg
