//==============================================================================
// test_dyadic.cpp
// Smooth dyadic partition of unity:
//   1) exact partition identity on a dense log-spaced sweep,
//   2) shell support and values at dyadic points,
//   3) low-frequency cutoff psi and its complement identity,
//   4) range construction and failure modes.
//==============================================================================
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sqg/dyadic.hpp"
#include "sqg/grid.hpp"
#include "sqg/transform.hpp"

using namespace sqg;

TEST_CASE("shells form an exact partition of unity over the resolved band") {
    GridSpec g; // default 64x63
    DyadicPartition P = default_partition(g);
    const double lo = lambda_min(g), hi = lambda_max(g);
    const int n = 1000;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lambda = lo * std::pow(hi / lo, i / double(n - 1));
        double sum = 0.0;
        for (int j : P.shells()) sum += P.phi(j, lambda);
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("each shell lives on (2^{j-1}, 2^{j+1}) and is exactly 1 at 2^j") {
    DyadicPartition P = make_partition(-4, 10);

    // lambda = 1 sits at the dyadic point of shell 0: neighbours vanish there.
    CHECK(P.phi(0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(P.phi(-1, 1.0) == 0.0);
    CHECK(P.phi(1, 1.0) == 0.0);
    CHECK(P.phi(2, 1.0) == 0.0);

    // Support boundaries are closed zeros.
    CHECK(P.phi(0, 0.5) == 0.0);
    CHECK(P.phi(0, 2.0) == 0.0);
    CHECK(P.phi(0, 0.51) > 0.0);
    CHECK(P.phi(0, 1.99) > 0.0);

    // Dyadic scaling: phi_j(lambda) = phi_0(lambda / 2^j).
    for (int j : {-3, 1, 5})
        for (double lam : {0.7, 1.0, 1.4})
            CHECK(P.phi(j, lam * std::ldexp(1.0, j)) ==
                  doctest::Approx(P.phi0(lam)).epsilon(1e-14));

    // Between dyadic points exactly two shells share the mass.
    const double lam = 1.37;
    CHECK(P.phi(0, lam) > 0.0);
    CHECK(P.phi(1, lam) > 0.0);
    CHECK(P.phi(0, lam) + P.phi(1, lam) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("psi is the low-frequency complement of the j >= 1 shells") {
    DyadicPartition P = make_partition(-2, 12);
    CHECK(P.psi(0.25) == 1.0);
    CHECK(P.psi(1.0) == 1.0);
    CHECK(P.psi(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(P.psi(5.0) == doctest::Approx(0.0).epsilon(1e-14));
    const double mid = P.psi(1.5);
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);

    for (double lam : {0.3, 0.9, 1.1, 1.7, 2.5, 40.0}) {
        double high = 0.0;
        for (int j = 1; j <= 12; ++j) high += P.phi(j, lam);
        CHECK(P.psi(lam) + high == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("make_partition validates its range and lists its shells") {
    CHECK_THROWS_AS(make_partition(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_partition(5, 2), std::invalid_argument);
    DyadicPartition P = make_partition(-1, 3);
    CHECK(P.shells() == std::vector<int>{-1, 0, 1, 2, 3});
}

TEST_CASE("default partition covers every resolved eigenvalue strictly inside") {
    for (int n2 : {15, 63, 255}) {
        GridSpec g;
        g.n2 = n2;
        DyadicPartition P = default_partition(g);
        // Inner shells [j_min+1, j_max-1] alone must reproduce 1 on the band,
        // i.e. no resolved eigenvalue leans on the range boundary.
        for (double lam : {lambda_min(g), 0.5 * (lambda_min(g) + lambda_max(g)),
                           lambda_max(g)}) {
            double inner = 0.0;
            for (int j = P.j_min + 1; j <= P.j_max - 1; ++j) inner += P.phi(j, lam);
            CHECK(inner == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
