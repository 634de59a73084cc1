//==============================================================================
// dyadic.cpp : smooth dyadic partition of unity
//==============================================================================
#include "sqg/dyadic.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/grid.hpp"
#include "sqg/transform.hpp"

namespace sqg {

namespace {

// Bump profile in the log2 variable: supp h = (-1, 1).
double bump(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - y * y));
}

// sum_j h(y - j): only floor(y) and floor(y)+1 can contribute, so the sum is
// 1-periodic and strictly positive.
double bump_period_sum(double y) {
    const double u = y - std::floor(y);
    return bump(u) + bump(u - 1.0);
}

} // namespace

double DyadicPartition::phi0(double lambda) const {
    if (!(lambda > 0.0)) return 0.0;
    const double y = std::log2(lambda);
    const double h = bump(y);
    if (h == 0.0) return 0.0;
    return h / bump_period_sum(y);
}

double DyadicPartition::phi(int j, double lambda) const {
    return phi0(std::ldexp(lambda, -j));
}

double DyadicPartition::psi(double lambda) const {
    if (!(lambda > 1.0)) return 1.0;
    // Subtract every shell j >= 1 that can be active at lambda; there are at
    // most two, with indices inside (log2 lambda - 1, log2 lambda + 1).
    const double y = std::log2(lambda);
    const int lo = std::max(1, static_cast<int>(std::ceil(y)) - 1);
    const int hi = static_cast<int>(std::floor(y)) + 1;
    double s = 1.0;
    for (int j = lo; j <= hi; ++j) s -= phi(j, lambda);
    return s;
}

std::vector<int> DyadicPartition::shells() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(j_max - j_min + 1));
    for (int j = j_min; j <= j_max; ++j) out.push_back(j);
    return out;
}

DyadicPartition make_partition(int j_min, int j_max) {
    if (j_min >= j_max)
        throw std::invalid_argument("make_partition: need j_min < j_max");
    return DyadicPartition{j_min, j_max};
}

DyadicPartition default_partition(const GridSpec& grid) {
    grid.validate();
    const int lo = static_cast<int>(std::floor(std::log2(lambda_min(grid)))) - 1;
    const int hi = static_cast<int>(std::ceil(std::log2(lambda_max(grid)))) + 1;
    return make_partition(lo, hi);
}

} // namespace sqg
