//==============================================================================
// harness.hpp : numerical audits of the solver's governing estimates and
//               analyticity diagnostics
//
// Each verify_* op measures the ratio of the two sides of an inequality the
// solver's theory guarantees, reporting fitted constants/exponents and a
// verdict against thresholds declared up front (frozen regression values).
//==============================================================================
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqg/calculus.hpp"
#include "sqg/solver.hpp"

namespace sqg {

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct EstimateReport {
    std::string name;
    int samples = 0;
    double fitted_constant = 0.0;
    double fitted_exponent = 0.0; // where applicable, else 0
    double worst_ratio = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::string notes;
};

struct AnalyticityReport {
    double t = 0.0;
    int beta_max = 0;
    // space_table[b1][b2] = t^{b1+b2} ||d1^b1 d2^b2 theta||_inf / (b1! b2!)
    std::vector<std::vector<double>> space_table;
    // time_table[a] = t^a ||dt^a theta||_inf / a!
    std::vector<double> time_table;
    double estimated_C = 0.0;       // separated normalization (b1! b2!)
    double estimated_C_joint = 0.0; // joint normalization ((b1+b2)!)
    double radius_fit = 0.0;        // slope of log|coeffs| vs lambda, mid band
};

// Smoothing:  ||e^{-t Lambda} f||_{Bs_inf_1} <= C t^{-s} ||f||_{B0_inf_1}.
// ratio(t) = t^s ||e^{-tL} f||_{Bs} / ||f||_{B0}; reports sup ratio and the
// log-log slope of ||e^{-tL} f||_{Bs} vs t.  Throws if any time is <= 0.
EstimateReport verify_smoothing(const DyadicPartition& P, double s, const Field& f,
                                const std::vector<double>& times,
                                double declared_constant);

// Maximal regularity:  with y(t) = int_0^t e^{-(t-tau) Lambda} f(tau) dtau,
//   sup_t ||y||_{B0_inf_1} + int_0^T ||y||_{B1_inf_1} dt <= C int_0^T ||f||_{B0_inf_1} dtau.
// The forcing is a trajectory; quadrature is trapezoid on its stamps.
EstimateReport verify_maximal_regularity(const DyadicPartition& P,
                                         const Trajectory& forcing,
                                         double declared_constant);

// Bilinear:  ||B(f,g)||_{Bs_inf_1} <= C^{s+1} (s = 0: ||f||_{B0} ||g||_{B1};
// s > 0: ||f||_{Bs} ||g||_{B1} + ||f||_{B0} ||g||_{Bs+1}).
EstimateReport verify_bilinear(const DyadicPartition& P, const Field& f,
                               const Field& g, double s, double declared_constant);

// Worst bilinear ratio over n_pairs seeded random band-limited pairs (s = 0).
EstimateReport verify_bilinear_battery(const GridSpec& grid, const DyadicPartition& P,
                                       int n_pairs, std::uint64_t seed,
                                       double declared_constant);

// dt^alpha theta by the Leibniz recursion over B:
//   dt theta = -Lambda theta - B(theta, theta),
//   dt^a theta = -Lambda dt^{a-1} theta
//               - sum_g binom(a-1,g) B(dt^g theta, dt^{a-1-g} theta).
// alpha >= 1; an advisory fires when lambda_max^alpha exceeds 1e12 (round-off
// amplification swamps the recursion).
Field time_derivative(const Field& theta, int alpha);

// Factorially normalized derivative tables at a stored stamp t of traj
// (t = 0 is rejected); beta_max <= 10.  estimated_C is the max over all table
// entries of entry^(1/max(order,1)); the joint variant renormalizes the space
// table by (b1+b2)!/(b1! b2!) first.  radius_fit regresses log|coeffs| on
// lambda over the mid band of the resolved spectrum.
AnalyticityReport analyticity_diagnostic(const Trajectory& traj, double t, int beta_max);

// Max over all nearest-neighbor pairs (including the zero trace rows) plus a
// deterministic low-discrepancy sample of pair_budget long-range pairs of
//   |f(x)-f(y)| / dist(x,y)^a,  dist = periodic-in-x1 Euclidean distance.
// a in (0,1), pair_budget >= 1; monotone in pair_budget.
double holder_seminorm(const Field& f, double a, int pair_budget);

// The audit battery behind the `verify` CLI mode: smoothing (eigenfunction +
// band data), maximal regularity, bilinear battery, and the shell-multiplier
// bound, all with frozen thresholds.
std::vector<EstimateReport> run_verify_battery(const GridSpec& grid, std::uint64_t seed);

} // namespace sqg
